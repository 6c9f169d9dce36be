//! Social welfare, optimal welfare, price of anarchy and stability over a
//! list of equilibria, and an audit of the harmonic welfare bound at a
//! zero-cost, unlimited-supply equilibrium.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::equilibrium::{verify, EquilibriumVerdict};
use crate::error::{Error, Result};
use crate::market::{MarketInstance, PriceVector, Supply};
use crate::setfn::{full_mask, ItemSet};
use crate::value::Value;

/// Default cap on `m * 3^n` steps for the single-copy optimum.
pub const DEFAULT_MAX_STEPS: u128 = 200_000_000;

pub fn social_welfare(inst: &MarketInstance, p: &PriceVector) -> Result<Value> {
    Ok(inst.allocate(p)?.welfare)
}

/// Best achievable `sum_j v_j(S_j) - c(S_j)`; under single-copy supply the
/// bundles must be disjoint.
pub fn opt_welfare(inst: &MarketInstance) -> Result<Value> {
    opt_welfare_capped(inst, DEFAULT_MAX_STEPS)
}

pub fn opt_welfare_capped(inst: &MarketInstance, max_steps: u128) -> Result<Value> {
    let n = inst.n();
    let full = full_mask(n);
    let cost_of = |bits: u32| -> Value {
        ItemSet::from_bits_unchecked(n, bits)
            .items()
            .map(|i| inst.cost(i))
            .sum()
    };
    let costs: Vec<Value> = (0..=full).map(cost_of).collect();
    let net = |j: usize, bits: u32| inst.buyer(j).valuation().eval_bits(bits) - &costs[bits as usize];
    match inst.supply() {
        Supply::Unlimited => Ok((0..inst.m())
            .map(|j| (0..=full).map(|s| net(j, s)).max().expect("nonempty"))
            .sum()),
        Supply::SingleCopy { .. } => {
            let steps = (inst.m() as u128).saturating_mul(3u128.pow(n as u32));
            if steps > max_steps {
                return Err(Error::EnumerationBudget {
                    size: steps,
                    budget: max_steps,
                });
            }
            // best[mask]: most welfare from buyers so far using items within `mask`
            let mut best = vec![Value::zero(); full as usize + 1];
            for j in 0..inst.m() {
                let gain: Vec<Value> = (0..=full).map(|s| net(j, s)).collect();
                let mut next = best.clone();
                for mask in 0..=full {
                    for s in ItemSet::from_bits_unchecked(n, mask).subsets() {
                        let cand = &best[(mask ^ s.bits()) as usize] + &gain[s.bits() as usize];
                        if cand > next[mask as usize] {
                            next[mask as usize] = cand;
                        }
                    }
                }
                best = next;
            }
            Ok(best[full as usize].clone())
        }
    }
}

/// A welfare ratio that may be unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Finite(Value),
    Infinite,
}

impl Ratio {
    fn of(opt: &Value, sw: &Value) -> Ratio {
        match sw.recip() {
            Some(r) => Ratio::Finite(opt * &r),
            None if opt.is_zero() => Ratio::Finite(Value::one()),
            None => Ratio::Infinite,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(v) => write!(f, "{v}"),
            Ratio::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ratio::Finite(v) => v.serialize(s),
            Ratio::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoaPos {
    pub opt: Value,
    pub equilibria: usize,
    pub worst_welfare: Option<Value>,
    pub best_welfare: Option<Value>,
    /// `OPT / worst`, absent without equilibria.
    pub poa: Option<Ratio>,
    /// `OPT / best`, absent without equilibria.
    pub pos: Option<Ratio>,
}

/// Ratios over the supplied equilibria only (typically a grid enumeration).
pub fn poa_pos(inst: &MarketInstance, equilibria: &[EquilibriumVerdict]) -> Result<PoaPos> {
    let opt = opt_welfare(inst)?;
    let welfare = equilibria.iter().map(|v| &v.allocation.welfare);
    let worst = welfare.clone().min().cloned();
    let best = welfare.max().cloned();
    Ok(PoaPos {
        poa: worst.as_ref().map(|w| Ratio::of(&opt, w)),
        pos: best.as_ref().map(|w| Ratio::of(&opt, w)),
        equilibria: equilibria.len(),
        worst_welfare: worst,
        best_welfare: best,
        opt,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WelfareAudit {
    pub prices: PriceVector,
    pub bundles: Vec<ItemSet>,
    /// Buyers currently buying each item.
    pub buy: Vec<usize>,
    /// `rank[j][i]`: buyers `j'` with `v_{j'}(i | S_{j'} - i) >= v_j(i | S_j - i)`.
    pub rank: Vec<Vec<usize>>,
    /// `sum_j v_j(N)`.
    pub lhs: Value,
    /// `H_m * sum_j v_j(S_j)`.
    pub rhs: Value,
    pub harmonic: Value,
    pub holds: bool,
    pub tight: bool,
    /// `sum_i buy(i) p_i`.
    pub revenue: Value,
    /// `sum_j v_j(S_j)`.
    pub realized_value: Value,
    pub revenue_bound_holds: bool,
    /// `rank(j,i) v_j(i|S_j) <= buy(i) p_i` for every `i` outside `S_j`.
    pub deviation_bounds_hold: bool,
}

/// Audits the harmonic bound at `p`, which must be a pure equilibrium of a
/// zero-cost market with unlimited supply.
pub fn hm_bound_audit(inst: &MarketInstance, p: &PriceVector) -> Result<WelfareAudit> {
    if !inst.is_unlimited() {
        return Err(Error::SupplyRegime("the welfare bound is stated for unlimited supply"));
    }
    if inst.has_costs() {
        return Err(Error::Hypothesis(
            "the welfare bound assumes zero production costs".into(),
        ));
    }
    let verdict = verify(inst, p, &Value::zero())?;
    if !verdict.is_equilibrium {
        let s = verdict.violators().next().expect("some seller deviates");
        return Err(Error::NotAnEquilibrium(format!(
            "seller {} earns {} but {} at price {}",
            s.seller + 1,
            s.current_profit,
            s.best.profit,
            s.best.price
        )));
    }
    let (n, m) = (inst.n(), inst.m());
    let bundles = verdict.allocation.bundles.clone();
    let buy = verdict.allocation.sold.clone();
    let marg = |j: usize, i: usize| inst.buyer(j).valuation().marginal_bits(i, bundles[j].without(i).bits());
    let margs: Vec<Vec<Value>> = (0..m).map(|j| (0..n).map(|i| marg(j, i)).collect()).collect();
    let rank: Vec<Vec<usize>> = (0..m)
        .map(|j| {
            (0..n)
                .map(|i| (0..m).filter(|&k| margs[k][i] >= margs[j][i]).count())
                .collect()
        })
        .collect();
    let full = full_mask(n);
    let lhs: Value = inst.buyers().iter().map(|b| b.valuation().eval_bits(full)).sum();
    let realized_value: Value = inst
        .buyers()
        .iter()
        .zip(&bundles)
        .map(|(b, s)| b.valuation().eval_bits(s.bits()))
        .sum();
    let harmonic = Value::harmonic(m);
    let rhs = &harmonic * &realized_value;
    let revenue: Value = (0..n).map(|i| Value::from(buy[i]) * p.get(i)).sum();
    let deviation_bounds_hold = (0..m).all(|j| {
        (0..n)
            .filter(|&i| !bundles[j].contains(i))
            .all(|i| Value::from(rank[j][i]) * &margs[j][i] <= Value::from(buy[i]) * p.get(i))
    });
    Ok(WelfareAudit {
        prices: p.clone(),
        holds: lhs <= rhs,
        tight: lhs == rhs,
        revenue_bound_holds: revenue <= realized_value,
        bundles,
        buy,
        rank,
        lhs,
        rhs,
        harmonic,
        revenue,
        realized_value,
        deviation_bounds_hold,
    })
}
