//! Closed-form conditions for market-clearing equilibria under unlimited
//! supply, and the reduction that turns seller costs into an extra buyer.
//!
//! For item `i` let `v_{j,i}` be buyer `j`'s value for `i` on top of all
//! other items, and order the buyers so these are non-decreasing. A
//! market-clearing pure equilibrium exists iff for every item and position `j`
//!
//! ```text
//! v_{(j),i} - c_i <= m / (m - j + 1) * (v_{(1),i} - c_i)   and   v_{(1),i} >= c_i
//! ```
//!
//! and then it is unique, pricing each item at its smallest top marginal.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::equilibrium::{enumerate_on_axes, grid_axes, GridOptions};
use crate::error::{Error, Result};
use crate::labels;
use crate::market::{Buyer, MarketInstance, PriceVector, Supply};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    /// 1-based position in the sorted order.
    pub position: usize,
    #[serde(serialize_with = "labels::one")]
    pub buyer: usize,
    pub lhs: Value,
    pub rhs: Value,
    /// `rhs - lhs`; negative means violated.
    pub slack: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemCondition {
    #[serde(serialize_with = "labels::one")]
    pub item: usize,
    /// Top marginal of every buyer, by buyer index.
    pub marginals: Vec<Value>,
    /// Buyers sorted by non-decreasing top marginal (stable).
    #[serde(serialize_with = "labels::many")]
    pub order: Vec<usize>,
    pub ratio_checks: Vec<Inequality>,
    /// `min_j v_{j,i} - c_i`.
    pub floor_slack: Value,
    pub passes: bool,
    /// Every ratio check from position 2 on and the floor check hold strictly.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub items: Vec<ItemCondition>,
    pub passes: bool,
    pub strict: bool,
}

impl ConditionReport {
    pub fn first_failure(&self) -> Option<&ItemCondition> {
        self.items.iter().find(|c| !c.passes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    /// Both the buyer-class hypothesis and the strict inequalities hold.
    pub applies: bool,
    /// At most one buyer is non-additive, and that one is submodular.
    pub classes_ok: bool,
    pub report: ConditionReport,
}

fn require_unlimited(inst: &MarketInstance) -> Result<()> {
    if !inst.is_unlimited() {
        return Err(Error::SupplyRegime("this condition is stated for unlimited supply"));
    }
    Ok(())
}

/// Evaluates both condition families for every item.
pub fn mc_condition(inst: &MarketInstance) -> Result<ConditionReport> {
    require_unlimited(inst)?;
    let m = inst.m();
    let items: Vec<ItemCondition> = (0..inst.n())
        .map(|i| {
            let c = inst.cost(i);
            let marginals: Vec<Value> = inst.buyers().iter().map(|b| b.top_marginal(i)).collect();
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| marginals[a].cmp(&marginals[b]));
            let base = &marginals[order[0]] - c;
            let ratio_checks: Vec<Inequality> = order
                .iter()
                .enumerate()
                .map(|(k, &j)| {
                    let lhs = &marginals[j] - c;
                    let rhs = Value::ratio(m as i64, (m - k) as i64) * &base;
                    Inequality {
                        position: k + 1,
                        buyer: j,
                        slack: &rhs - &lhs,
                        lhs,
                        rhs,
                    }
                })
                .collect();
            let floor_slack = base;
            let passes = !floor_slack.is_negative() && ratio_checks.iter().all(|q| !q.slack.is_negative());
            let strict = floor_slack.is_positive() && ratio_checks.iter().skip(1).all(|q| q.slack.is_positive());
            ItemCondition {
                item: i,
                marginals,
                order,
                ratio_checks,
                floor_slack,
                passes,
                strict,
            }
        })
        .collect();
    let passes = items.iter().all(|c| c.passes);
    let strict = items.iter().all(|c| c.strict);
    Ok(ConditionReport { items, passes, strict })
}

/// Each item priced at its smallest top marginal. Errors when the condition fails.
pub fn unique_mc_pricing(inst: &MarketInstance) -> Result<PriceVector> {
    let report = mc_condition(inst)?;
    if let Some(bad) = report.first_failure() {
        let detail = match bad.ratio_checks.iter().find(|q| q.slack.is_negative()) {
            Some(q) => format!(
                "item {}: buyer {} has v - c = {} above the allowed {}",
                bad.item + 1,
                q.buyer + 1,
                q.lhs,
                q.rhs
            ),
            None => format!(
                "item {}: smallest top marginal is below the cost by {}",
                bad.item + 1,
                -&bad.floor_slack
            ),
        };
        return Err(Error::ConditionFails(detail));
    }
    PriceVector::new(report.items.iter().map(|c| c.marginals[c.order[0]].clone()).collect())
}

/// Whether the market-clearing equilibrium is also the only equilibrium.
pub fn uniqueness_condition(inst: &MarketInstance) -> Result<UniquenessReport> {
    let report = mc_condition(inst)?;
    let non_additive: Vec<&Buyer> = inst.buyers().iter().filter(|b| !b.is_additive()).collect();
    let classes_ok = non_additive.len() <= 1 && non_additive.iter().all(|b| b.classification().submodular);
    Ok(UniquenessReport {
        applies: classes_ok && report.passes && report.strict,
        classes_ok,
        report,
    })
}

/// Zero-cost copy of a single-copy market with one extra additive buyer
/// valuing item `i` at `c_i`, served last.
pub fn eliminate_costs(inst: &MarketInstance) -> Result<MarketInstance> {
    let Supply::SingleCopy { arrival_order } = inst.supply() else {
        return Err(Error::SupplyRegime("cost elimination needs single-copy supply"));
    };
    let mut buyers = inst.buyers().to_vec();
    buyers.push(Buyer::additive(inst.costs().to_vec())?);
    let mut order = arrival_order.clone();
    order.push(inst.m());
    MarketInstance::new(
        vec![Value::zero(); inst.n()],
        Supply::SingleCopy { arrival_order: order },
        buyers,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    pub axes: Vec<Vec<Value>>,
    pub original: Vec<PriceVector>,
    pub reduced: Vec<PriceVector>,
    pub matches: bool,
}

/// Grid ε-equilibria of a costly market and of its cost-free reduction, on
/// shared axes, with items that no real buyer takes priced at their cost.
pub fn cost_correspondence(inst: &MarketInstance, eps: &Value, opts: &GridOptions) -> Result<Correspondence> {
    let reduced = eliminate_costs(inst)?;
    let axes: Vec<Vec<Value>> = grid_axes(inst)
        .into_iter()
        .zip(grid_axes(&reduced))
        .map(|(a, b)| a.into_iter().chain(b).collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    let costs = inst.costs();
    let real = inst.m();
    let unsold_at_cost = move |p: &PriceVector, bundles: &[crate::setfn::ItemSet]| {
        (0..costs.len()).all(|i| bundles[..real].iter().any(|s| s.contains(i)) || p.get(i) == &costs[i])
    };
    let keep = |p: &PriceVector, a: &crate::market::Allocation| unsold_at_cost(p, &a.bundles);
    let original: Vec<PriceVector> = enumerate_on_axes(inst, &axes, eps, opts, Some(&keep))?
        .into_iter()
        .map(|v| v.prices)
        .collect();
    let reduced_eq: Vec<PriceVector> = enumerate_on_axes(&reduced, &axes, eps, opts, Some(&keep))?
        .into_iter()
        .map(|v| v.prices)
        .collect();
    Ok(Correspondence {
        matches: original == reduced_eq,
        axes,
        original,
        reduced: reduced_eq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{enumerate_grid_equilibria, verify};
    use crate::setfn::SetFunction;

    fn clearing_fails() -> MarketInstance {
        let v1 = SetFunction::dense_ints(2, &[0, 200, 210, 220]).unwrap();
        let v2 = SetFunction::dense_ints(2, &[0, 70, 50, 120]).unwrap();
        MarketInstance::unlimited(vec![Buyer::general(v1).unwrap(), Buyer::general(v2).unwrap()]).unwrap()
    }

    fn submodular_pair() -> MarketInstance {
        let v1 = SetFunction::dense_ints(3, &[0, 90, 90, 100, 80, 100, 101, 110]).unwrap();
        let v2 = SetFunction::dense_ints(3, &[0, 70, 80, 86, 85, 90, 100, 105]).unwrap();
        MarketInstance::unlimited(vec![Buyer::submodular(v1).unwrap(), Buyer::submodular(v2).unwrap()]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Value> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn clearing_fails_at_item_1() {
        let r = mc_condition(&clearing_fails()).unwrap();
        assert!(!r.passes);
        let bad = r.first_failure().unwrap();
        assert_eq!(bad.item, 0);
        assert_eq!(bad.marginals, ints(&[10, 70]));
        let q = bad.ratio_checks.iter().find(|q| q.slack.is_negative()).unwrap();
        assert_eq!((q.lhs.clone(), q.rhs.clone()), (70.into(), 20.into()));
        assert!(matches!(
            unique_mc_pricing(&clearing_fails()),
            Err(Error::ConditionFails(_))
        ));
    }

    #[test]
    fn submodular_pair_passes_with_pricing() {
        let inst = submodular_pair();
        let r = mc_condition(&inst).unwrap();
        assert!(r.passes);
        let p = unique_mc_pricing(&inst).unwrap();
        assert_eq!(p, PriceVector::from_ints(&[5, 10, 10]).unwrap());
        let v = verify(&inst, &p, &Value::zero()).unwrap();
        assert!(v.is_equilibrium && v.market_clearing);
        let u = uniqueness_condition(&inst).unwrap();
        assert!(!u.classes_ok && !u.applies);
    }

    #[test]
    fn single_buyer_only_needs_the_floor() {
        let inst = MarketInstance::unlimited(vec![Buyer::additive(ints(&[3, 9])).unwrap()])
            .unwrap()
            .with_costs(ints(&[3, 10]))
            .unwrap();
        let r = mc_condition(&inst).unwrap();
        assert!(r.items[0].passes && !r.items[1].passes);
        assert!(r.items[0].ratio_checks[0].slack.is_zero());
    }

    #[test]
    fn identical_additive_buyers() {
        let b = || Buyer::additive(ints(&[4, 6])).unwrap();
        let inst = MarketInstance::unlimited(vec![b(), b(), b()])
            .unwrap()
            .with_costs(ints(&[1, 1]))
            .unwrap();
        let p = unique_mc_pricing(&inst).unwrap();
        assert_eq!(p, PriceVector::from_ints(&[4, 6]).unwrap());
        let a = inst.allocate(&p).unwrap();
        assert_eq!(a.profits, ints(&[9, 15]));
    }

    #[test]
    fn boundary_ratio_is_not_strict() {
        // v1 - c = 2 (v2 - c) exactly
        let inst = MarketInstance::unlimited(vec![
            Buyer::additive(ints(&[10])).unwrap(),
            Buyer::additive(ints(&[5])).unwrap(),
        ])
        .unwrap();
        let u = uniqueness_condition(&inst).unwrap();
        assert!(u.report.passes && !u.report.strict && !u.applies);
        // a non-clearing equilibrium sits next to the clearing one
        let eq = enumerate_grid_equilibria(&inst, &Value::zero(), &GridOptions::default()).unwrap();
        assert!(eq.iter().any(|v| v.market_clearing));
        assert!(eq.iter().any(|v| !v.market_clearing));
    }

    #[test]
    fn strict_instance_has_one_equilibrium() {
        let inst = MarketInstance::unlimited(vec![
            Buyer::additive(ints(&[10, 7])).unwrap(),
            Buyer::additive(ints(&[6, 9])).unwrap(),
        ])
        .unwrap();
        let u = uniqueness_condition(&inst).unwrap();
        assert!(u.applies);
        let eq = enumerate_grid_equilibria(&inst, &Value::zero(), &GridOptions::default()).unwrap();
        let prices: Vec<_> = eq.into_iter().map(|v| v.prices).collect();
        assert_eq!(prices, vec![unique_mc_pricing(&inst).unwrap()]);
    }

    #[test]
    fn cost_buyer_is_appended_last() {
        let inst = MarketInstance::single_copy(vec![
            Buyer::additive(ints(&[4, 6])).unwrap(),
            Buyer::additive(ints(&[5, 5])).unwrap(),
        ])
        .unwrap()
        .with_costs(ints(&[3, 5]))
        .unwrap();
        let r = eliminate_costs(&inst).unwrap();
        assert_eq!(r.m(), 3);
        assert!(!r.has_costs());
        assert_eq!(
            r.buyer(2).valuation().additive_values().unwrap(),
            ints(&[3, 5]).as_slice()
        );
        assert_eq!(r.arrival_order(), vec![0, 1, 2]);
        assert!(eliminate_costs(&submodular_pair()).is_err());
    }

    #[test]
    fn reduction_preserves_grid_equilibria() {
        let v1 = SetFunction::dense_ints(2, &[0, 14, 14, 25]).unwrap();
        let inst = MarketInstance::single_copy(vec![
            Buyer::submodular(v1).unwrap(),
            Buyer::additive(ints(&[10, 12])).unwrap(),
        ])
        .unwrap()
        .with_costs(ints(&[11, 2]))
        .unwrap();
        for eps in [Value::zero(), Value::ratio(1, 2), Value::from_int(3)] {
            let c = cost_correspondence(&inst, &eps, &GridOptions::default()).unwrap();
            assert!(c.matches, "{:?}", c);
        }
    }
}
