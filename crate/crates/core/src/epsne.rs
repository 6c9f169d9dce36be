//! Price ascent that reaches a market-clearing ε-equilibrium in single-copy
//! markets where the first buyer to arrive is submodular and every later
//! buyer is additive.
//!
//! Prices start at the highest additive value for each item. Then, scanning
//! sellers from the lowest index, any seller whose item stays sold after a
//! raise of exactly ε takes that raise and the scan restarts. A raise must not
//! unsell any other item; that property of the first buyer's choice rule is
//! checked at every step instead of being assumed.

use serde::Serialize;

use crate::characterize::eliminate_costs;
use crate::equilibrium::{verify, EquilibriumVerdict};
use crate::error::{Error, Result};
use crate::labels;
use crate::market::{MarketInstance, PriceVector, Supply};
use crate::setfn::ItemSet;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Raise {
    #[serde(serialize_with = "labels::one")]
    pub seller: usize,
    pub from: Value,
    pub to: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AscentTrace {
    pub epsilon: Value,
    pub initial: PriceVector,
    pub raises: Vec<Raise>,
    /// `sum_i ceil((v_1({i}) - initial_i) / eps)`, floored at zero per item.
    pub raise_bound: u64,
    pub termination: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsNeOutcome {
    pub prices: PriceVector,
    pub trace: AscentTrace,
    /// Every item is bought by a buyer of the input market.
    pub market_clearing: bool,
    /// Verification of the final prices in the market the ascent ran on.
    pub verdict: EquilibriumVerdict,
}

fn check_hypotheses(inst: &MarketInstance, eps: &Value) -> Result<usize> {
    if !eps.is_positive() {
        return Err(Error::BadEpsilon("positive"));
    }
    let Supply::SingleCopy { arrival_order } = inst.supply() else {
        return Err(Error::SupplyRegime("the ascent needs single-copy supply"));
    };
    let first = arrival_order[0];
    let c = inst.buyer(first).classification();
    if !(c.submodular && c.monotone) {
        return Err(Error::Hypothesis(format!(
            "buyer {}, first to arrive, must have a monotone submodular valuation",
            first + 1
        )));
    }
    if let Some(&j) = arrival_order[1..].iter().find(|&&j| !inst.buyer(j).is_additive()) {
        return Err(Error::Hypothesis(format!(
            "buyer {} arrives after buyer {} but is not additive",
            j + 1,
            first + 1
        )));
    }
    Ok(first)
}

fn unsold(sold: &[usize]) -> Vec<usize> {
    sold.iter()
        .enumerate()
        .filter(|(_, &a)| a == 0)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Runs the ascent on a zero-cost or costly market as given.
pub fn construct_eps_ne(inst: &MarketInstance, eps: &Value) -> Result<EpsNeOutcome> {
    let first = check_hypotheses(inst, eps)?;
    let n = inst.n();
    let initial: Vec<Value> = (0..n)
        .map(|i| {
            (0..inst.m())
                .filter(|&j| j != first)
                .map(|j| inst.buyer(j).top_marginal(i))
                .max()
                .unwrap_or_default()
        })
        .collect();
    let initial = PriceVector::new(initial)?;
    let v1 = inst.buyer(first).valuation();
    let raise_bound: u64 = (0..n)
        .map(|i| {
            let gap = v1.eval_bits(ItemSet::empty(n).with(i).bits()) - initial.get(i);
            let steps = (gap / eps).ceil();
            u64::try_from(steps).unwrap_or(0)
        })
        .sum();

    let mut p = initial.clone();
    let mut alloc = inst.allocate(&p)?;
    if alloc.sold.contains(&0) {
        return Err(Error::Postcondition(format!(
            "items {:?} are unsold at the starting prices {p}",
            unsold(&alloc.sold)
        )));
    }
    let mut raises: Vec<Raise> = Vec::new();
    'scan: loop {
        for i in 0..n {
            let q = p.with_price(i, p.get(i) + eps);
            let next = inst.allocate(&q)?;
            if next.sold[i] == 0 {
                continue;
            }
            if next.sold.contains(&0) {
                let mut trace: Vec<String> = raises
                    .iter()
                    .map(|r| format!("seller {}: {} -> {}", r.seller + 1, r.from, r.to))
                    .collect();
                trace.push(format!("seller {}: {} -> {}", i + 1, p.get(i), q.get(i)));
                return Err(Error::UpConsistency(format!(
                    "raising seller {} from {} to {} unsold items {:?}; bundle of buyer {} went from {} to {}; raises so far: [{}]",
                    i + 1,
                    p.get(i),
                    q.get(i),
                    unsold(&next.sold),
                    first + 1,
                    alloc.bundles[first],
                    next.bundles[first],
                    trace.join(", ")
                )));
            }
            raises.push(Raise {
                seller: i,
                from: p.get(i).clone(),
                to: q.get(i).clone(),
            });
            if raises.len() as u64 > raise_bound {
                return Err(Error::Postcondition(format!(
                    "ascent exceeded its bound of {raise_bound} raises"
                )));
            }
            p = q;
            alloc = next;
            continue 'scan;
        }
        break;
    }
    let verdict = verify(inst, &p, eps)?;
    if !verdict.is_equilibrium {
        let s = verdict.violators().next().expect("some seller deviates");
        return Err(Error::Postcondition(format!(
            "final prices {p} are not an ε-equilibrium: seller {} earns {} but {} at price {}",
            s.seller + 1,
            s.current_profit,
            s.best.profit,
            s.best.price
        )));
    }
    if !verdict.market_clearing {
        return Err(Error::Postcondition(format!(
            "final prices {p} leave items {:?} unsold",
            unsold(&verdict.allocation.sold)
        )));
    }
    let trace = AscentTrace {
        epsilon: eps.clone(),
        initial,
        termination: format!("no seller keeps its item sold after a raise of {eps}"),
        raises,
        raise_bound,
    };
    Ok(EpsNeOutcome {
        prices: p,
        trace,
        market_clearing: true,
        verdict,
    })
}

/// Turns costs into an extra last-served buyer, runs the ascent there, and
/// reports whether the real buyers alone clear the market.
pub fn with_costs(inst: &MarketInstance, eps: &Value) -> Result<EpsNeOutcome> {
    check_hypotheses(inst, eps)?;
    let reduced = eliminate_costs(inst)?;
    let mut out = construct_eps_ne(&reduced, eps)?;
    let real = inst.m();
    out.market_clearing = (0..inst.n()).all(|i| out.verdict.allocation.bundles[..real].iter().any(|s| s.contains(i)));
    Ok(out)
}
