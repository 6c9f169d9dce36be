//! Market-clearing equilibria with two additive buyers under unlimited supply
//! and zero costs, where buyer 1 (index 0) has a budget and buyer 2 does not.
//!
//! Items are ranked by `v1 - v2`, largest first (stable on ties). A
//! market-clearing equilibrium either leaves budget unspent, pricing every
//! item at `min(v1, v2)`, or spends it exactly with a boundary pricing: the
//! first `k` ranked items cost `v2`, the rest share one common buyer-1 slack
//! `v1 - p` that exhausts the budget. Two families of conditions decide which
//! of these `n + 2` candidates are equilibria.

use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::{verify, EquilibriumVerdict};
use crate::error::{Error, Result};
use crate::labels;
use crate::market::{MarketInstance, PriceVector};
use crate::setfn::ItemSet;
use crate::value::Value;

/// Default cap on `(i, A, C)` combinations examined per condition family.
pub const DEFAULT_MAX_SUBSETS: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "labels::opt")]
    pub item: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<ItemSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<ItemSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bullet {
    pub name: &'static str,
    pub holds: bool,
    /// `false` when enumeration was cut off by the subset cap.
    pub decided: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Bullet {
    fn check(name: &'static str, failure: Option<Witness>) -> Bullet {
        Bullet {
            name,
            holds: failure.is_none(),
            decided: true,
            witness: failure,
        }
    }

    fn item(name: &'static str, failing: Option<usize>) -> Bullet {
        Bullet::check(
            name,
            failing.map(|i| Witness {
                item: Some(i),
                a: None,
                c: None,
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unspent {
    /// Ranked items with `v1 > v2`.
    pub boundary: usize,
    pub pricing: PriceVector,
    pub bullets: Vec<Bullet>,
    pub passes: bool,
    pub decided: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spent {
    pub k: usize,
    /// Boundary pricing in item order; entries may be negative.
    pub pricing: Vec<Value>,
    pub budget_consumed: bool,
    pub bullets: Vec<Bullet>,
    pub passes: bool,
    pub decided: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    /// Items from largest to smallest `v1 - v2`.
    #[serde(serialize_with = "labels::many")]
    pub sorted_order: Vec<usize>,
    pub unspent: Unspent,
    pub spent: Vec<Spent>,
    pub exists: bool,
    /// Every condition was evaluated to the end.
    pub decided: bool,
    /// Pricings certified as market-clearing pure equilibria.
    pub equilibria: Vec<PriceVector>,
}

/// Valuations in ranked order.
struct Ranked {
    order: Vec<usize>,
    a: Vec<Value>,
    b: Vec<Value>,
    budget: Value,
}

impl Ranked {
    fn new(inst: &MarketInstance) -> Result<Ranked> {
        check_hypotheses(inst)?;
        let n = inst.n();
        let v1 = inst.buyer(0).valuation();
        let v2 = inst.buyer(1).valuation();
        let single = |v: &crate::setfn::SetFunction, i: usize| v.eval_bits(1 << i).clone();
        let mut order: Vec<usize> = (0..n).collect();
        let diff: Vec<Value> = (0..n).map(|i| single(v1, i) - single(v2, i)).collect();
        order.sort_by(|&x, &y| diff[y].cmp(&diff[x]));
        Ok(Ranked {
            a: order.iter().map(|&i| single(v1, i)).collect(),
            b: order.iter().map(|&i| single(v2, i)).collect(),
            budget: inst.buyer(0).budget().expect("checked").clone(),
            order,
        })
    }

    fn n(&self) -> usize {
        self.order.len()
    }

    /// Positions back to an item set.
    fn items(&self, positions: u32) -> ItemSet {
        let n = self.n();
        ItemSet::from_items(n, (0..n).filter(|q| positions >> q & 1 == 1).map(|q| self.order[q])).expect("in range")
    }

    /// Ranked prices back to item order.
    fn to_items(&self, ranked: &[Value]) -> Vec<Value> {
        let mut p = vec![Value::zero(); self.n()];
        for (q, v) in ranked.iter().enumerate() {
            p[self.order[q]] = v.clone();
        }
        p
    }

    fn boundary(&self, k: usize) -> Vec<Value> {
        let n = self.n();
        if k == n {
            return self.b.clone();
        }
        let tail: Value = self.a[k..].iter().sum();
        let head: Value = self.b[..k].iter().sum();
        let shared = (tail + head - &self.budget) / Value::from(n - k);
        (0..n)
            .map(|q| if q < k { self.b[q].clone() } else { &self.a[q] - &shared })
            .collect()
    }
}

fn check_hypotheses(inst: &MarketInstance) -> Result<()> {
    if !inst.is_unlimited() {
        return Err(Error::SupplyRegime("budget conditions assume unlimited supply"));
    }
    if inst.m() != 2 {
        return Err(Error::Hypothesis(format!(
            "exactly 2 buyers required, found {}",
            inst.m()
        )));
    }
    if inst.has_costs() {
        return Err(Error::Hypothesis("budget conditions assume zero costs".into()));
    }
    if !inst.buyers().iter().all(|b| b.is_additive()) {
        return Err(Error::Hypothesis("both buyers must be additive".into()));
    }
    if inst.buyer(0).budget().is_none() || inst.buyer(1).budget().is_some() {
        return Err(Error::Hypothesis(
            "buyer 1 must carry a budget and buyer 2 must not".into(),
        ));
    }
    Ok(())
}

/// The pricing with boundary `k`, in item order. Entries may be negative.
pub fn boundary_pricing(inst: &MarketInstance, k: usize) -> Result<Vec<Value>> {
    let r = Ranked::new(inst)?;
    if k > r.n() {
        return Err(Error::InvalidInstance(format!("boundary {k} exceeds {} items", r.n())));
    }
    Ok(r.to_items(&r.boundary(k)))
}

/// Searches `(i, A, C)` for a violation of
/// `sum_{A ∪ C} (v1 - p) >= v1_i - 2 v2_i` among triples whose premise
/// `2 v2_i + sum_{[k] - A - i} v2 + sum_{tail - C} p < B` holds. `A` ranges
/// over subsets of the first `k` positions without `i`, `C` over the rest
/// (or only the empty set when `with_tail` is off).
fn quantified(
    r: &Ranked,
    p: &[Value],
    k: usize,
    with_tail: bool,
    candidates: &[usize],
    budget_cap: u128,
    name: &'static str,
) -> Bullet {
    let n = r.n();
    let free = if with_tail { n } else { k };
    let combos = (candidates.len() as u128) << free.saturating_sub(1);
    if combos > budget_cap {
        return Bullet {
            name,
            holds: false,
            decided: false,
            witness: None,
        };
    }
    let head_mask: u32 = (1u32 << k) - 1;
    let tail_mask: u32 = if with_tail {
        ((1u64 << n) - 1) as u32 & !head_mask
    } else {
        0
    };
    let slack: Vec<Value> = (0..n).map(|q| &r.a[q] - &p[q]).collect();
    for &i in candidates {
        let need = &r.a[i] - &(Value::from_int(2) * &r.b[i]);
        let others = head_mask & !(1 << i);
        let head_all: Value = (0..k).filter(|&q| q != i).map(|q| &r.b[q]).sum();
        let tail_all: Value = ItemSet::from_bits_unchecked(n, tail_mask).items().map(|q| &p[q]).sum();
        for a in ItemSet::from_bits_unchecked(n, others).subsets() {
            let head_left = &head_all - &a.items().map(|q| &r.b[q]).sum::<Value>();
            let a_slack: Value = a.items().map(|q| &slack[q]).sum();
            for c in ItemSet::from_bits_unchecked(n, tail_mask).subsets() {
                let tail_left = &tail_all - &c.items().map(|q| &p[q]).sum::<Value>();
                let spend = Value::from_int(2) * &r.b[i] + &head_left + tail_left;
                if spend >= r.budget {
                    continue;
                }
                let total = &a_slack + &c.items().map(|q| &slack[q]).sum::<Value>();
                if total < need {
                    return Bullet::check(
                        name,
                        Some(Witness {
                            item: Some(r.order[i]),
                            a: Some(r.items(a.bits())),
                            c: with_tail.then(|| r.items(c.bits())),
                        }),
                    );
                }
            }
        }
    }
    Bullet::check(name, None)
}

fn first_item(r: &Ranked, pred: impl Fn(usize) -> bool) -> Option<usize> {
    (0..r.n()).find(|&q| pred(q)).map(|q| r.order[q])
}

fn unspent(r: &Ranked, cap: u128) -> Unspent {
    let n = r.n();
    let two = Value::from_int(2);
    let boundary = (0..n).take_while(|&q| r.a[q] > r.b[q]).count();
    let p: Vec<Value> = (0..n).map(|q| r.a[q].clone().min(r.b[q].clone())).collect();
    let total: Value = p.iter().sum();
    let candidates: Vec<usize> = (0..n).filter(|&q| p[q] == r.b[q] && r.a[q] > &two * &r.b[q]).collect();
    let bullets = vec![
        Bullet::item("v2 <= 2 v1 for every item", first_item(r, |q| r.b[q] > &two * &r.a[q])),
        Bullet::check(
            "budget not exhausted",
            (total >= r.budget).then_some(Witness {
                item: None,
                a: None,
                c: None,
            }),
        ),
        Bullet::check("prices equal min(v1, v2)", None),
        quantified(
            r,
            &p,
            boundary,
            false,
            &candidates,
            cap,
            "raising above 2 v2 loses buyer 1",
        ),
    ];
    let passes = bullets.iter().all(|b| b.holds);
    let decided = bullets.iter().all(|b| b.decided);
    Unspent {
        boundary,
        pricing: PriceVector::new(r.to_items(&p)).expect("min of nonnegative values"),
        bullets,
        passes,
        decided,
    }
}

fn spent(r: &Ranked, k: usize, cap: u128) -> Spent {
    let n = r.n();
    let two = Value::from_int(2);
    let p = r.boundary(k);
    let total: Value = p.iter().sum();
    let budget_consumed = total == r.budget;
    // slack of the first tail item; with no tail every raise qualifies
    let tail_slack = (k < n).then(|| &r.a[k] - &p[k]);
    let third = if k == n {
        None
    } else {
        let left = r.a[k].clone() - &r.b[k] < tail_slack.clone().expect("k < n");
        let right = k == 0 || tail_slack.as_ref().expect("k < n") <= &(&r.a[k - 1] - &r.b[k - 1]);
        (!(left && right)).then_some(Witness {
            item: Some(r.order[k]),
            a: None,
            c: None,
        })
    };
    let candidates: Vec<usize> = (0..k)
        .filter(|&q| {
            let gap = &r.a[q] - &(&two * &r.b[q]);
            tail_slack.as_ref().is_none_or(|s| &gap > s)
        })
        .collect();
    let mut bullets = vec![
        Bullet::check(
            "budget exactly consumed",
            (!budget_consumed).then_some(Witness {
                item: None,
                a: None,
                c: None,
            }),
        ),
        Bullet::item(
            "0 <= p <= v1 for every item",
            first_item(r, |q| p[q].is_negative() || p[q] > r.a[q]),
        ),
        Bullet::item("v2 <= 2 p for every item", first_item(r, |q| r.b[q] > &two * &p[q])),
        Bullet::check("boundary slack ordering", third),
    ];
    bullets.push(quantified(
        r,
        &p,
        k,
        true,
        &candidates,
        cap,
        "raising above 2 v2 loses buyer 1",
    ));
    let passes = bullets.iter().all(|b| b.holds);
    let decided = bullets.iter().all(|b| b.decided);
    Spent {
        k,
        pricing: r.to_items(&p),
        budget_consumed,
        bullets,
        passes,
        decided,
    }
}

/// Condition family for equilibria that leave budget unspent.
pub fn check_condition_set_1(inst: &MarketInstance) -> Result<Unspent> {
    Ok(unspent(&Ranked::new(inst)?, DEFAULT_MAX_SUBSETS))
}

/// Condition family for the budget-exhausting pricing with boundary `k`.
pub fn check_condition_set_2(inst: &MarketInstance, k: usize) -> Result<Spent> {
    let r = Ranked::new(inst)?;
    if k > r.n() {
        return Err(Error::InvalidInstance(format!("boundary {k} exceeds {} items", r.n())));
    }
    Ok(spent(&r, k, DEFAULT_MAX_SUBSETS))
}

/// Runs both families over every boundary.
pub fn decide_mc_pne(inst: &MarketInstance) -> Result<BudgetReport> {
    decide_mc_pne_capped(inst, DEFAULT_MAX_SUBSETS)
}

pub fn decide_mc_pne_capped(inst: &MarketInstance, cap: u128) -> Result<BudgetReport> {
    let r = Ranked::new(inst)?;
    let unspent = unspent(&r, cap);
    let spent: Vec<Spent> = (0..=r.n()).into_par_iter().map(|k| spent(&r, k, cap)).collect();
    let mut equilibria: Vec<PriceVector> = Vec::new();
    if unspent.passes {
        equilibria.push(unspent.pricing.clone());
    }
    for s in spent.iter().filter(|s| s.passes) {
        let p = PriceVector::new(s.pricing.clone()).expect("passing pricings are nonnegative");
        if !equilibria.contains(&p) {
            equilibria.push(p);
        }
    }
    let decided = unspent.decided && spent.iter().all(|s| s.decided);
    Ok(BudgetReport {
        sorted_order: r.order.clone(),
        exists: !equilibria.is_empty(),
        decided,
        unspent,
        spent,
        equilibria,
    })
}

/// Equilibrium verification after checking the budget setting's hypotheses.
pub fn budgeted_verify(inst: &MarketInstance, p: &PriceVector, eps: &Value) -> Result<EquilibriumVerdict> {
    check_hypotheses(inst)?;
    verify(inst, p, eps)
}
