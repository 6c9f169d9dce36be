//! Pure and ε-Nash verification for the sellers' pricing game, plus grid
//! enumeration of equilibria.
//!
//! With the other prices fixed, the allocation is piecewise constant in one
//! seller's price. The pieces are delimited by critical prices where some
//! buyer's demand for the item flips. [`best_deviation`] finds those pieces
//! exactly: it probes every candidate price and every open interval between
//! candidates, and each probe contributes the critical prices of the
//! (buyer, available items) situations it encounters until no new ones appear.
//! On an open interval `(a, b)` where the item sells `α` copies the profit
//! approaches `α(b - c)` without reaching it; such a supremum is reported with
//! `attained = false`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labels;
use crate::market::{Allocation, MarketInstance, PriceTable, PriceVector, Supply};
use crate::setfn::ItemSet;
use crate::value::Value;

pub const DEFAULT_MAX_GRID: u128 = 1_000_000;

/// Most profitable unilateral price change for one seller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub price: Value,
    pub profit: Value,
    /// `false` when `profit` is only approached as the price rises towards `price`.
    pub attained: bool,
    /// Buyer the seller prefers after deviating (preference game only).
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "labels::opt")]
    pub preference: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SellerCheck {
    #[serde(serialize_with = "labels::one")]
    pub seller: usize,
    pub current_profit: Value,
    pub best: Deviation,
}

impl SellerCheck {
    /// Gain of the best deviation over staying put.
    pub fn gain(&self) -> Value {
        &self.best.profit - &self.current_profit
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumVerdict {
    pub prices: PriceVector,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "labels::opt_many")]
    pub preferences: Option<Vec<usize>>,
    pub epsilon: Value,
    pub is_equilibrium: bool,
    pub market_clearing: bool,
    pub allocation: Allocation,
    pub sellers: Vec<SellerCheck>,
}

impl EquilibriumVerdict {
    /// Sellers whose best deviation gains more than ε.
    pub fn violators(&self) -> impl Iterator<Item = &SellerCheck> + '_ {
        self.sellers
            .iter()
            .filter(move |s| s.best.profit > &s.current_profit + &self.epsilon)
    }
}

/// Static candidate prices for seller `i`: its cost and every marginal value
/// `v_j(i|T)` with `T ⊆ N \ {i}`. With `rest` given, budgeted buyers add the
/// residuals `B - p(T)`. Sorted, deduplicated, nonnegative.
pub fn breakpoints(inst: &MarketInstance, i: usize, rest: Option<&PriceVector>) -> Vec<Value> {
    let n = inst.n();
    let others = ItemSet::full(n).without(i);
    let mut out = BTreeSet::new();
    out.insert(inst.cost(i).clone());
    for b in inst.buyers() {
        for t in others.subsets() {
            out.insert(b.valuation().marginal_bits(i, t.bits()));
        }
        if let (Some(budget), Some(p)) = (b.budget(), rest) {
            for t in others.subsets() {
                out.insert(budget - p.sum_over(&t));
            }
        }
    }
    out.into_iter().filter(|v| !v.is_negative()).collect()
}

/// Per-seller grid axes: the static breakpoints plus `1 + max`, a price at
/// which nobody buys.
pub fn grid_axes(inst: &MarketInstance) -> Vec<Vec<Value>> {
    (0..inst.n())
        .map(|i| {
            let mut d = breakpoints(inst, i, None);
            let top = d.last().cloned().unwrap_or_default() + Value::one();
            d.push(top);
            d
        })
        .collect()
}

struct Probe {
    sold: usize,
    states: Vec<(usize, u32)>,
}

/// Prices at which buyer `j`, choosing among `avail` (which holds `item`),
/// may switch between bundles with and without `item`. `rest` prices `item` at 0.
fn critical_prices(inst: &MarketInstance, j: usize, avail: ItemSet, item: usize, rest: &PriceTable) -> Vec<Value> {
    let b = inst.buyer(j);
    let v = b.valuation();
    let budget = b.budget();
    let mut without_best = Value::zero();
    let mut with_vals: Vec<(Value, Option<Value>)> = Vec::new();
    for s in avail.subsets() {
        let bits = s.bits();
        let cost = rest.sum(bits);
        let residual = budget.map(|bud| bud - cost);
        if residual.as_ref().is_some_and(|r| r.is_negative()) {
            continue;
        }
        let surplus = v.eval_bits(bits) - cost;
        if s.contains(item) {
            with_vals.push((surplus, residual));
        } else if surplus > without_best {
            without_best = surplus;
        }
    }
    let mut out = Vec::new();
    if budget.is_none() {
        if let Some(top) = with_vals.iter().map(|(s, _)| s).max() {
            out.push(top - &without_best);
        }
    } else {
        for (s, r) in with_vals {
            out.push(&s - &without_best);
            out.extend(r);
        }
    }
    out.retain(|t| !t.is_negative());
    out
}

fn better(a: &Deviation, b: &Deviation) -> bool {
    match a.profit.cmp(&b.profit) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => match a.price.cmp(&b.price) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => a.attained && !b.attained,
        },
    }
}

/// Exact best deviation of seller `i` given an allocation oracle at each of its prices.
fn search<F>(inst: &MarketInstance, i: usize, p: &PriceVector, prefs: Option<&[usize]>, eval: F) -> Deviation
where
    F: Fn(&Value) -> Probe,
{
    let cost = inst.cost(i).clone();
    let rest = PriceTable::new(&p.with_price(i, Value::zero()));
    let mut cands: BTreeSet<Value> = breakpoints(inst, i, Some(p)).into_iter().collect();
    cands.insert(Value::zero());
    let mut probes: BTreeMap<Value, usize> = BTreeMap::new();
    let mut seen: HashSet<(usize, u32)> = HashSet::new();
    loop {
        let pts: Vec<Value> = cands.iter().cloned().collect();
        let mut todo: Vec<Value> = pts.clone();
        todo.extend(pts.windows(2).map(|w| w[0].midpoint(&w[1])));
        todo.push(pts.last().expect("zero is a candidate") + &Value::one());
        let mut grew = false;
        for t in todo {
            if probes.contains_key(&t) {
                continue;
            }
            let probe = eval(&t);
            probes.insert(t, probe.sold);
            for st in probe.states {
                if seen.insert(st) {
                    let avail = ItemSet::from_bits_unchecked(inst.n(), st.1);
                    for c in critical_prices(inst, st.0, avail, i, &rest) {
                        grew |= cands.insert(c);
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let pts: Vec<Value> = cands.into_iter().collect();
    let pref = prefs.map(|pr| pr[i]);
    let mut best: Option<Deviation> = None;
    let mut offer = |d: Deviation| {
        if best.as_ref().is_none_or(|b| better(&d, b)) {
            best = Some(d);
        }
    };
    for (k, t) in pts.iter().enumerate() {
        let sold = probes[t];
        offer(Deviation {
            price: t.clone(),
            profit: Value::from(sold) * (t - &cost),
            attained: true,
            preference: pref,
        });
        let (mid, right) = match pts.get(k + 1) {
            Some(r) => (t.midpoint(r), Some(r)),
            None => (t + &Value::one(), None),
        };
        let sold = probes[&mid];
        match right {
            Some(r) if sold > 0 => offer(Deviation {
                price: r.clone(),
                profit: Value::from(sold) * (r - &cost),
                attained: false,
                preference: pref,
            }),
            _ => {
                debug_assert!(right.is_some() || sold == 0, "demand above every critical price");
                offer(Deviation {
                    price: mid.clone(),
                    profit: Value::from(sold) * (&mid - &cost),
                    attained: true,
                    preference: pref,
                })
            }
        }
    }
    best.expect("at least one candidate")
}

fn probe(inst: &MarketInstance, p: &PriceVector, i: usize, t: &Value, prefs: Option<&[usize]>) -> Probe {
    let q = p.with_price(i, t.clone());
    let (alloc, avail) = inst.allocate_with(&q, prefs);
    let states = avail
        .iter()
        .enumerate()
        .filter(|(_, a)| a.contains(i))
        .map(|(j, a)| (j, a.bits()))
        .collect();
    Probe {
        sold: alloc.sold[i],
        states,
    }
}

/// Most profitable price for seller `i` with the others fixed. Ties go to the
/// lowest price, then to attained values.
pub fn best_deviation(inst: &MarketInstance, i: usize, p: &PriceVector) -> Result<Deviation> {
    inst.check_prices(p)?;
    if i >= inst.n() {
        return Err(Error::ItemOutOfRange {
            item: i + 1,
            n: inst.n(),
        });
    }
    Ok(search(inst, i, p, None, |t| probe(inst, p, i, t, None)))
}

fn check_eps(eps: &Value) -> Result<()> {
    if eps.is_negative() {
        return Err(Error::BadEpsilon("nonnegative"));
    }
    Ok(())
}

fn assemble(
    inst: &MarketInstance,
    p: &PriceVector,
    prefs: Option<&[usize]>,
    eps: &Value,
    allocation: Allocation,
    best: Vec<Deviation>,
) -> EquilibriumVerdict {
    let sellers: Vec<SellerCheck> = best
        .into_iter()
        .enumerate()
        .map(|(i, best)| SellerCheck {
            seller: i,
            current_profit: allocation.profits[i].clone(),
            best,
        })
        .collect();
    let is_equilibrium = sellers.iter().all(|s| s.best.profit <= &s.current_profit + eps);
    EquilibriumVerdict {
        prices: p.clone(),
        preferences: prefs.map(|x| x.to_vec()),
        epsilon: eps.clone(),
        is_equilibrium,
        market_clearing: allocation.is_market_clearing(inst),
        allocation,
        sellers,
    }
}

/// Checks every seller. `eps = 0` asks for a pure Nash equilibrium.
pub fn verify(inst: &MarketInstance, p: &PriceVector, eps: &Value) -> Result<EquilibriumVerdict> {
    check_eps(eps)?;
    let allocation = inst.allocate(p)?;
    let best = (0..inst.n())
        .map(|i| search(inst, i, p, None, |t| probe(inst, p, i, t, None)))
        .collect();
    Ok(assemble(inst, p, None, eps, allocation, best))
}

fn check_preference_game(inst: &MarketInstance, prefs: Option<&[usize]>) -> Result<()> {
    if !matches!(inst.supply(), Supply::SingleCopy { .. }) {
        return Err(Error::SupplyRegime("the preference game needs single-copy supply"));
    }
    if inst.m() != 2 {
        return Err(Error::InvalidInstance(format!(
            "the preference game needs exactly 2 buyers, found {}",
            inst.m()
        )));
    }
    if let Some(prefs) = prefs {
        if prefs.len() != inst.n() || prefs.iter().any(|&b| b >= 2) {
            return Err(Error::InvalidInstance(
                "preferences must name buyer 1 or 2 for every seller".into(),
            ));
        }
    }
    Ok(())
}

fn preference_deviation(inst: &MarketInstance, i: usize, p: &PriceVector, prefs: &[usize]) -> Deviation {
    (0..inst.m())
        .map(|b| {
            let mut alt = prefs.to_vec();
            alt[i] = b;
            search(inst, i, p, Some(&alt), |t| probe(inst, p, i, t, Some(&alt)))
        })
        .reduce(|a, b| if better(&b, &a) { b } else { a })
        .expect("two buyers")
}

/// Verification when each seller also names the buyer it prefers (0-based).
/// A seller preferring the later buyer withholds its item from the earlier one.
/// Deviations range over prices and both preferences.
pub fn verify_preference_game(
    inst: &MarketInstance,
    p: &PriceVector,
    prefs: &[usize],
    eps: &Value,
) -> Result<EquilibriumVerdict> {
    check_eps(eps)?;
    check_preference_game(inst, Some(prefs))?;
    let allocation = inst.allocate_with_preferences(p, prefs)?;
    let best = (0..inst.n()).map(|i| preference_deviation(inst, i, p, prefs)).collect();
    Ok(assemble(inst, p, Some(prefs), eps, allocation, best))
}

#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    pub max_points: u128,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            max_points: DEFAULT_MAX_GRID,
        }
    }
}

/// Restricts which verified grid points are reported.
pub type PointFilter<'a> = &'a (dyn Fn(&PriceVector, &Allocation) -> bool + Sync);

struct Grid {
    lens: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Grid {
    fn new(lens: Vec<usize>, budget: u128) -> Result<Self> {
        let size = lens.iter().fold(1u128, |acc, &l| acc.saturating_mul(l as u128));
        if size > budget {
            return Err(Error::GridBudget { size, budget });
        }
        let mut strides = vec![1usize; lens.len()];
        for k in (0..lens.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * lens[k + 1];
        }
        Ok(Grid {
            total: size as usize,
            lens,
            strides,
        })
    }

    fn digits(&self, idx: usize) -> Vec<usize> {
        self.lens
            .iter()
            .zip(&self.strides)
            .map(|(&l, &s)| (idx / s) % l)
            .collect()
    }

    fn line(&self, idx: usize, axis: usize) -> usize {
        let s = self.strides[axis];
        (idx / (s * self.lens[axis])) * s + idx % s
    }

    /// Grid points where no seller gains more than `eps` by moving along its
    /// own axis. A necessary condition for an ε-equilibrium.
    fn survivors<F>(&self, eps: &Value, profits: F) -> Vec<usize>
    where
        F: Fn(usize) -> Vec<Value> + Sync + Send,
    {
        let table: Vec<Vec<Value>> = (0..self.total).into_par_iter().map(profits).collect();
        let line_max: Vec<Vec<Value>> = (0..self.lens.len())
            .into_par_iter()
            .map(|axis| {
                let lines = self.total / self.lens[axis];
                let mut best: Vec<Option<Value>> = vec![None; lines];
                for (idx, row) in table.iter().enumerate() {
                    let slot = &mut best[self.line(idx, axis)];
                    if slot.as_ref().is_none_or(|b| row[axis] > *b) {
                        *slot = Some(row[axis].clone());
                    }
                }
                best.into_iter().map(|b| b.unwrap_or_default()).collect()
            })
            .collect();
        (0..self.total)
            .into_par_iter()
            .filter(|&idx| {
                (0..self.lens.len()).all(|axis| line_max[axis][self.line(idx, axis)] <= &table[idx][axis] + eps)
            })
            .collect()
    }
}

/// All ε-equilibria on the default grid ([`grid_axes`]), in lexicographic grid order.
pub fn enumerate_grid_equilibria(
    inst: &MarketInstance,
    eps: &Value,
    opts: &GridOptions,
) -> Result<Vec<EquilibriumVerdict>> {
    enumerate_on_axes(inst, &grid_axes(inst), eps, opts, None)
}

/// All ε-equilibria on the product of `axes`, optionally filtered.
pub fn enumerate_on_axes(
    inst: &MarketInstance,
    axes: &[Vec<Value>],
    eps: &Value,
    opts: &GridOptions,
    filter: Option<PointFilter<'_>>,
) -> Result<Vec<EquilibriumVerdict>> {
    check_eps(eps)?;
    if axes.len() != inst.n() {
        return Err(Error::PriceLength {
            expected: inst.n(),
            actual: axes.len(),
        });
    }
    for axis in axes {
        if axis.is_empty() || axis.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidInstance(
                "grid axes must be nonempty and nonnegative".into(),
            ));
        }
    }
    let grid = Grid::new(axes.iter().map(|a| a.len()).collect(), opts.max_points)?;
    let point = |idx: usize| {
        let d = grid.digits(idx);
        PriceVector::new(d.iter().enumerate().map(|(i, &k)| axes[i][k].clone()).collect())
            .expect("axes are nonnegative")
    };
    let survivors = grid.survivors(eps, |idx| inst.allocate_with(&point(idx), None).0.profits);
    let verdicts: Vec<Option<EquilibriumVerdict>> = survivors
        .par_iter()
        .map(|&idx| {
            let p = point(idx);
            let v = verify(inst, &p, eps).expect("validated prices");
            let keep = v.is_equilibrium && filter.is_none_or(|f| f(&p, &v.allocation));
            keep.then_some(v)
        })
        .collect();
    Ok(verdicts.into_iter().flatten().collect())
}

/// All ε-equilibria of the preference game over grid prices and both
/// preferences per seller.
pub fn enumerate_preference_equilibria(
    inst: &MarketInstance,
    eps: &Value,
    opts: &GridOptions,
) -> Result<Vec<EquilibriumVerdict>> {
    check_eps(eps)?;
    check_preference_game(inst, None)?;
    let axes = grid_axes(inst);
    let m = inst.m();
    let grid = Grid::new(axes.iter().map(|a| a.len() * m).collect(), opts.max_points)?;
    let point = |idx: usize| {
        let d = grid.digits(idx);
        let p = PriceVector::new(d.iter().enumerate().map(|(i, &k)| axes[i][k / m].clone()).collect())
            .expect("axes are nonnegative");
        let prefs: Vec<usize> = d.iter().map(|&k| k % m).collect();
        (p, prefs)
    };
    let survivors = grid.survivors(eps, |idx| {
        let (p, prefs) = point(idx);
        inst.allocate_with(&p, Some(&prefs)).0.profits
    });
    let verdicts: Vec<Option<EquilibriumVerdict>> = survivors
        .par_iter()
        .map(|&idx| {
            let (p, prefs) = point(idx);
            let v = verify_preference_game(inst, &p, &prefs, eps).expect("validated");
            v.is_equilibrium.then_some(v)
        })
        .collect();
    Ok(verdicts.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::Buyer;
    use crate::setfn::SetFunction;

    fn additive_first() -> MarketInstance {
        let v2 = SetFunction::dense_ints(2, &[0, 30, 30, 45]).unwrap();
        MarketInstance::single_copy(vec![
            Buyer::additive(ints(&[16, 16])).unwrap(),
            Buyer::submodular(v2).unwrap(),
        ])
        .unwrap()
    }

    fn submodular_then_additive() -> MarketInstance {
        let v1 = SetFunction::dense_ints(3, &[0, 110, 112, 123, 114, 125, 127, 136]).unwrap();
        MarketInstance::single_copy(vec![
            Buyer::submodular(v1).unwrap(),
            Buyer::additive(vec![10.into(), 12.into(), 14.into()]).unwrap(),
        ])
        .unwrap()
    }

    fn tie_priority_market() -> MarketInstance {
        let v1 = SetFunction::dense_ints(2, &[0, 14, 14, 25]).unwrap();
        MarketInstance::single_copy(vec![
            Buyer::submodular(v1).unwrap().with_tie_priority(vec![1, 0]).unwrap(),
            Buyer::additive(ints(&[10, 12])).unwrap(),
        ])
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Value> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn breakpoints_of_additive_first_market() {
        let inst = additive_first();
        assert_eq!(breakpoints(&inst, 1, None), ints(&[0, 15, 16, 30]));
    }

    #[test]
    fn breakpoints_single_item() {
        let inst = MarketInstance::unlimited(vec![
            Buyer::additive(ints(&[5])).unwrap(),
            Buyer::additive(ints(&[8])).unwrap(),
        ])
        .unwrap()
        .with_costs(ints(&[1]))
        .unwrap();
        assert_eq!(breakpoints(&inst, 0, None), ints(&[1, 5, 8]));
    }

    #[test]
    fn breakpoints_with_budget_residuals() {
        let b = Buyer::additive(ints(&[10, 10]))
            .unwrap()
            .with_budget(12.into())
            .unwrap();
        let inst = MarketInstance::unlimited(vec![b, Buyer::additive(ints(&[8, 8])).unwrap()]).unwrap();
        let p = PriceVector::from_ints(&[0, 6]).unwrap();
        let d = breakpoints(&inst, 0, Some(&p));
        assert!(d.contains(&6.into()) && d.contains(&12.into()));
    }

    #[test]
    fn submodular_then_additive_is_an_equilibrium() {
        let inst = submodular_then_additive();
        let p = PriceVector::from_ints(&[10, 12, 14]).unwrap();
        let v = verify(&inst, &p, &Value::zero()).unwrap();
        assert!(v.is_equilibrium && v.market_clearing);
        let d = best_deviation(&inst, 0, &p).unwrap();
        assert_eq!((d.price, d.profit), (10.into(), 10.into()));
    }

    #[test]
    fn breakpoint_only_check_misses_interior_deviation() {
        // At (11, 12) buyer 1 takes {2}. Seller 1 priced just below 11 sells to
        // buyer 1 instead of losing it, which only a p_{-i}-dependent crossing
        // reveals.
        let inst = tie_priority_market();
        let p = PriceVector::from_ints(&[11, 12]).unwrap();
        let v = verify(&inst, &p, &Value::zero()).unwrap();
        assert!(!v.is_equilibrium);
    }

    #[test]
    fn unsold_seller_can_always_sell() {
        let inst = MarketInstance::single_copy(vec![Buyer::additive(ints(&[7])).unwrap()]).unwrap();
        let p = PriceVector::from_ints(&[100]).unwrap();
        let d = best_deviation(&inst, 0, &p).unwrap();
        assert!(d.profit >= 7.into());
        assert_eq!((d.price, d.attained), (7.into(), true));
    }

    #[test]
    fn open_interval_supremum_is_not_attained() {
        // buyer takes item 1 alone while p1 < 4, else item 2
        let inst = MarketInstance::single_copy(vec![Buyer::general(
            SetFunction::dense_ints(2, &[0, 10, 6, 10]).unwrap(),
        )
        .unwrap()])
        .unwrap();
        let p = PriceVector::from_ints(&[0, 0]).unwrap();
        let d = best_deviation(&inst, 0, &p).unwrap();
        // at p1 = 4 the larger bundle {1,2} wins the tie, so 4 is attained
        assert_eq!(
            (d.price.clone(), d.profit.clone(), d.attained),
            (4.into(), 4.into(), true)
        );
        let p = PriceVector::from_ints(&[0, 1]).unwrap();
        let d = best_deviation(&inst, 0, &p).unwrap();
        // {1}: 10 - t, {2}: 5, {1,2}: 9 - t, so item 1 sells iff t <= 5
        assert_eq!((d.price, d.profit, d.attained), (5.into(), 5.into(), true));
    }

    #[test]
    fn unique_grid_equilibrium_of_submodular_then_additive() {
        let inst = submodular_then_additive();
        let eq = enumerate_grid_equilibria(&inst, &Value::zero(), &GridOptions::default()).unwrap();
        let prices: Vec<_> = eq.iter().map(|v| v.prices.clone()).collect();
        assert_eq!(prices, vec![PriceVector::from_ints(&[10, 12, 14]).unwrap()]);
    }

    #[test]
    fn tie_priority_market_has_no_grid_equilibrium() {
        let eq = enumerate_grid_equilibria(&tie_priority_market(), &Value::zero(), &GridOptions::default()).unwrap();
        assert!(eq.is_empty());
    }

    #[test]
    fn additive_first_has_no_small_eps_equilibrium() {
        let eq = enumerate_grid_equilibria(&additive_first(), &Value::ratio(69, 10), &GridOptions::default()).unwrap();
        assert!(eq.is_empty());
    }

    #[test]
    fn grid_budget_is_enforced() {
        let err = enumerate_grid_equilibria(
            &submodular_then_additive(),
            &Value::zero(),
            &GridOptions { max_points: 10 },
        );
        assert!(matches!(err, Err(Error::GridBudget { .. })));
    }

    #[test]
    fn verification_is_monotone_in_eps() {
        let inst = additive_first();
        let p = PriceVector::from_ints(&[16, 30]).unwrap();
        let mut last = false;
        for e in [0, 1, 5, 7, 8, 20, 100] {
            let ok = verify(&inst, &p, &e.into()).unwrap().is_equilibrium;
            assert!(ok || !last);
            last = ok;
        }
    }

    #[test]
    fn preference_game_requires_two_buyers() {
        let p = PriceVector::from_ints(&[1]).unwrap();
        let inst = MarketInstance::single_copy(vec![Buyer::additive(ints(&[7])).unwrap()]).unwrap();
        assert!(verify_preference_game(&inst, &p, &[0], &Value::zero()).is_err());
    }

    #[test]
    fn negative_eps_rejected() {
        let p = PriceVector::from_ints(&[10, 12, 14]).unwrap();
        assert!(matches!(
            verify(&submodular_then_additive(), &p, &Value::from_int(-1)),
            Err(Error::BadEpsilon(_))
        ));
    }
}
