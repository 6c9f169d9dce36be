//! Market instances, buyer demand and the allocation a price vector induces.
//!
//! A buyer picks a utility-maximizing bundle `v(S) - p(S)`. Ties go to the
//! larger bundle, then to the bundle that is lexicographically smallest when
//! items are ordered by the buyer's tie priority. With a budget `B`, only
//! bundles with `p(S) <= B` are considered.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setfn::{full_mask, Classification, ItemSet, SetFunction};
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValuationClass {
    Additive,
    Submodular,
    General,
}

impl ValuationClass {
    pub fn name(&self) -> &'static str {
        match self {
            ValuationClass::Additive => "additive",
            ValuationClass::Submodular => "submodular",
            ValuationClass::General => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Buyer {
    valuation: SetFunction,
    class: ValuationClass,
    classification: Classification,
    /// Items (0-based) from most to least preferred when breaking ties.
    tie_priority: Vec<usize>,
    /// `rank[item]` is the item's position in `tie_priority`.
    rank: Vec<u8>,
    budget: Option<Value>,
}

impl Buyer {
    /// Validates the declared class against the valuation and the budget
    /// against the class. `tie_priority` defaults to ascending item index.
    pub fn new(
        valuation: SetFunction,
        class: ValuationClass,
        tie_priority: Option<Vec<usize>>,
        budget: Option<Value>,
    ) -> Result<Self> {
        let n = valuation.ground_size();
        let classification = valuation.classify();
        let mismatch = match class {
            ValuationClass::Additive if !classification.additive => {
                Some("v(S) differs from the sum of singleton values".to_string())
            }
            ValuationClass::Submodular if !classification.submodular => Some(submodularity_witness(&valuation)),
            _ => None,
        };
        if let Some(detail) = mismatch {
            return Err(Error::ClassMismatch {
                buyer: 0,
                declared: class.name(),
                detail,
            });
        }
        let tie_priority = tie_priority.unwrap_or_else(|| (0..n).collect());
        let mut rank = vec![u8::MAX; n];
        if tie_priority.len() != n {
            return Err(Error::InvalidInstance(format!(
                "tie priority lists {} items, expected {n}",
                tie_priority.len()
            )));
        }
        for (pos, &item) in tie_priority.iter().enumerate() {
            if item >= n || rank[item] != u8::MAX {
                return Err(Error::InvalidInstance(
                    "tie priority must be a permutation of the items".into(),
                ));
            }
            rank[item] = pos as u8;
        }
        if let Some(b) = &budget {
            if b.is_negative() {
                return Err(Error::InvalidInstance(format!("negative budget {b}")));
            }
            if !classification.additive {
                return Err(Error::UnsupportedBudget(0));
            }
        }
        Ok(Buyer {
            valuation,
            class,
            classification,
            tie_priority,
            rank,
            budget,
        })
    }

    pub fn additive(values: Vec<Value>) -> Result<Self> {
        Buyer::new(SetFunction::additive(values)?, ValuationClass::Additive, None, None)
    }

    pub fn submodular(valuation: SetFunction) -> Result<Self> {
        Buyer::new(valuation, ValuationClass::Submodular, None, None)
    }

    pub fn general(valuation: SetFunction) -> Result<Self> {
        Buyer::new(valuation, ValuationClass::General, None, None)
    }

    pub fn with_tie_priority(self, priority: Vec<usize>) -> Result<Self> {
        Buyer::new(self.valuation, self.class, Some(priority), self.budget)
    }

    pub fn with_budget(self, budget: Value) -> Result<Self> {
        Buyer::new(self.valuation, self.class, Some(self.tie_priority), Some(budget))
    }

    pub fn valuation(&self) -> &SetFunction {
        &self.valuation
    }

    pub fn class(&self) -> ValuationClass {
        self.class
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn is_additive(&self) -> bool {
        self.classification.additive
    }

    pub fn tie_priority(&self) -> &[usize] {
        &self.tie_priority
    }

    pub fn budget(&self) -> Option<&Value> {
        self.budget.as_ref()
    }

    /// `v_{j,i}`: value of `item` on top of all other items.
    pub fn top_marginal(&self, item: usize) -> Value {
        self.valuation.top_marginal(item)
    }

    /// Best bundle among subsets of `available` at `prices`.
    pub fn best_response(&self, available: ItemSet, prices: &PriceVector) -> ItemSet {
        let table = PriceTable::new(prices);
        self.best_response_with(available, &table)
    }

    pub(crate) fn best_response_with(&self, available: ItemSet, prices: &PriceTable) -> ItemSet {
        let n = available.ground_size();
        let mut best_bits = 0u32;
        let mut best_u = Value::zero();
        let mut best_rank = 0u32;
        for s in available.subsets() {
            let bits = s.bits();
            if bits == 0 {
                continue;
            }
            let cost = prices.sum(bits);
            if let Some(b) = &self.budget {
                if cost > b {
                    continue;
                }
            }
            let u = self.valuation.eval_bits(bits) - cost;
            let better = match u.cmp(&best_u) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => {
                    let (cs, cb) = (bits.count_ones(), best_bits.count_ones());
                    if cs != cb {
                        cs > cb
                    } else {
                        let r = self.rank_mask(bits);
                        lex_before(r, best_rank)
                    }
                }
            };
            if better {
                best_bits = bits;
                best_rank = self.rank_mask(bits);
                best_u = u;
            }
        }
        ItemSet::from_bits_unchecked(n, best_bits)
    }

    fn rank_mask(&self, bits: u32) -> u32 {
        let mut r = 0u32;
        let mut b = bits;
        while b != 0 {
            let i = b.trailing_zeros() as usize;
            r |= 1 << self.rank[i];
            b &= b - 1;
        }
        r
    }

    /// `v(S) - p(S)`.
    pub fn utility(&self, s: &ItemSet, prices: &PriceVector) -> Value {
        self.valuation.eval_bits(s.bits()) - prices.sum_over(s)
    }
}

/// For equal-size bundles given as rank masks: does `a` come first in the
/// lexicographic order of sorted rank lists? The first differing position
/// is the lowest rank in the symmetric difference.
fn lex_before(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

fn submodularity_witness(v: &SetFunction) -> String {
    let n = v.ground_size();
    for s in ItemSet::full(n).subsets() {
        for x in s.complement().items() {
            for y in s.complement().items().filter(|&y| y > x) {
                let sx = v.marginal_bits(x, s.bits());
                let sxy = v.marginal_bits(x, s.bits() | (1 << y));
                if sxy > sx {
                    return format!("v({}|{}) = {} < v({}|{}) = {}", x + 1, s, sx, x + 1, s.with(y), sxy);
                }
            }
        }
    }
    "not submodular".into()
}

/// Exact nonnegative price per seller.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Value>", into = "Vec<Value>")]
pub struct PriceVector(Vec<Value>);

impl PriceVector {
    pub fn new(prices: Vec<Value>) -> Result<Self> {
        if let Some((i, p)) = prices.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(Error::NegativePrice {
                seller: i + 1,
                price: p.to_string(),
            });
        }
        Ok(PriceVector(prices))
    }

    pub fn from_ints(prices: &[i64]) -> Result<Self> {
        PriceVector::new(prices.iter().map(|&p| Value::from_int(p)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        PriceVector(vec![Value::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &Value {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[Value] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Value> {
        self.0
    }

    /// Copy with seller `i`'s price replaced. Panics on a negative price.
    pub fn with_price(&self, i: usize, price: Value) -> PriceVector {
        assert!(!price.is_negative(), "negative price");
        let mut v = self.0.clone();
        v[i] = price;
        PriceVector(v)
    }

    pub fn sum_over(&self, s: &ItemSet) -> Value {
        s.items().map(|i| &self.0[i]).sum()
    }

    pub fn total(&self) -> Value {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<Value>> for PriceVector {
    type Error = Error;
    fn try_from(v: Vec<Value>) -> Result<Self> {
        PriceVector::new(v)
    }
}

impl From<PriceVector> for Vec<Value> {
    fn from(p: PriceVector) -> Self {
        p.0
    }
}

impl FromStr for PriceVector {
    type Err = Error;
    /// Comma-separated integers or `num/den` values.
    fn from_str(s: &str) -> Result<Self> {
        let vals = s.split(',').map(|t| t.parse::<Value>()).collect::<Result<Vec<_>>>()?;
        PriceVector::new(vals)
    }
}

impl fmt::Display for PriceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_canonical()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for PriceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p(S)` for every mask, built once per price vector.
pub(crate) struct PriceTable {
    sums: Vec<Value>,
}

impl PriceTable {
    pub(crate) fn new(prices: &PriceVector) -> Self {
        let n = prices.len();
        let mut sums = vec![Value::zero(); 1 << n];
        for s in 1..(1usize << n) {
            let low = s.trailing_zeros() as usize;
            sums[s] = &sums[s & (s - 1)] + prices.get(low);
        }
        PriceTable { sums }
    }

    pub(crate) fn sum(&self, bits: u32) -> &Value {
        &self.sums[bits as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Supply {
    /// Every seller has one copy per buyer; buyers never compete.
    Unlimited,
    /// One copy per seller; buyers choose in `arrival_order` (0-based buyer indices).
    SingleCopy { arrival_order: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarketInstance {
    costs: Vec<Value>,
    supply: Supply,
    buyers: Vec<Buyer>,
}

impl MarketInstance {
    pub fn new(costs: Vec<Value>, supply: Supply, buyers: Vec<Buyer>) -> Result<Self> {
        let n = costs.len();
        if n == 0 || n > crate::setfn::MAX_ITEMS {
            return Err(Error::GroundSetSize(n));
        }
        if buyers.is_empty() {
            return Err(Error::InvalidInstance("at least one buyer is required".into()));
        }
        if let Some((i, c)) = costs.iter().enumerate().find(|(_, c)| c.is_negative()) {
            return Err(Error::InvalidInstance(format!(
                "negative cost {c} for seller {}",
                i + 1
            )));
        }
        for (j, b) in buyers.iter().enumerate() {
            if b.valuation.ground_size() != n {
                return Err(Error::InvalidInstance(format!(
                    "buyer {} values {} items but there are {n} sellers",
                    j + 1,
                    b.valuation.ground_size()
                )));
            }
        }
        if let Supply::SingleCopy { arrival_order } = &supply {
            let m = buyers.len();
            let mut seen = vec![false; m];
            if arrival_order.len() != m
                || arrival_order
                    .iter()
                    .any(|&j| j >= m || std::mem::replace(&mut seen[j], true))
            {
                return Err(Error::InvalidInstance(
                    "arrival order must be a permutation of the buyers".into(),
                ));
            }
        }
        Ok(MarketInstance { costs, supply, buyers })
    }

    /// Unlimited supply, zero costs.
    pub fn unlimited(buyers: Vec<Buyer>) -> Result<Self> {
        let n = buyers.first().map(|b| b.valuation.ground_size()).unwrap_or(0);
        MarketInstance::new(vec![Value::zero(); n], Supply::Unlimited, buyers)
    }

    /// Single copy per seller, zero costs, buyers arriving in index order.
    pub fn single_copy(buyers: Vec<Buyer>) -> Result<Self> {
        let n = buyers.first().map(|b| b.valuation.ground_size()).unwrap_or(0);
        let order = (0..buyers.len()).collect();
        MarketInstance::new(
            vec![Value::zero(); n],
            Supply::SingleCopy { arrival_order: order },
            buyers,
        )
    }

    pub fn with_costs(self, costs: Vec<Value>) -> Result<Self> {
        MarketInstance::new(costs, self.supply, self.buyers)
    }

    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn m(&self) -> usize {
        self.buyers.len()
    }

    pub fn costs(&self) -> &[Value] {
        &self.costs
    }

    pub fn cost(&self, i: usize) -> &Value {
        &self.costs[i]
    }

    pub fn has_costs(&self) -> bool {
        self.costs.iter().any(|c| !c.is_zero())
    }

    pub fn supply(&self) -> &Supply {
        &self.supply
    }

    pub fn is_unlimited(&self) -> bool {
        matches!(self.supply, Supply::Unlimited)
    }

    pub fn buyers(&self) -> &[Buyer] {
        &self.buyers
    }

    pub fn buyer(&self, j: usize) -> &Buyer {
        &self.buyers[j]
    }

    /// Buyers in the order they choose. Unlimited supply uses index order.
    pub fn arrival_order(&self) -> Vec<usize> {
        match &self.supply {
            Supply::Unlimited => (0..self.m()).collect(),
            Supply::SingleCopy { arrival_order } => arrival_order.clone(),
        }
    }

    pub fn check_prices(&self, p: &PriceVector) -> Result<()> {
        if p.len() != self.n() {
            return Err(Error::PriceLength {
                expected: self.n(),
                actual: p.len(),
            });
        }
        Ok(())
    }

    pub fn best_response(&self, buyer: usize, available: ItemSet, p: &PriceVector) -> Result<ItemSet> {
        self.check_prices(p)?;
        if buyer >= self.m() {
            return Err(Error::InvalidInstance(format!("no buyer {}", buyer + 1)));
        }
        if available.ground_size() != self.n() {
            return Err(Error::GroundSetMismatch {
                expected: self.n(),
                actual: available.ground_size(),
            });
        }
        Ok(self.buyers[buyer].best_response(available, p))
    }

    pub fn allocate(&self, p: &PriceVector) -> Result<Allocation> {
        self.check_prices(p)?;
        Ok(self.allocate_with(p, None).0)
    }

    /// Allocation when each seller also names a preferred buyer.
    ///
    /// A seller whose preferred buyer arrives later than the buyer currently
    /// choosing withholds the item from that buyer.
    pub fn allocate_with_preferences(&self, p: &PriceVector, prefs: &[usize]) -> Result<Allocation> {
        self.check_prices(p)?;
        if prefs.len() != self.n() || prefs.iter().any(|&b| b >= self.m()) {
            return Err(Error::InvalidInstance(
                "preferences must name one buyer per seller".into(),
            ));
        }
        Ok(self.allocate_with(p, Some(prefs)).0)
    }

    /// Allocation plus the item set each buyer chose from.
    pub(crate) fn allocate_with(&self, p: &PriceVector, prefs: Option<&[usize]>) -> (Allocation, Vec<ItemSet>) {
        let table = PriceTable::new(p);
        let n = self.n();
        let m = self.m();
        let mut bundles = vec![ItemSet::empty(n); m];
        let mut avail_of = vec![ItemSet::empty(n); m];
        match &self.supply {
            Supply::Unlimited => {
                for (j, b) in self.buyers.iter().enumerate() {
                    let avail = ItemSet::full(n);
                    avail_of[j] = avail;
                    bundles[j] = b.best_response_with(avail, &table);
                }
            }
            Supply::SingleCopy { arrival_order } => {
                let mut position = vec![0usize; m];
                for (pos, &j) in arrival_order.iter().enumerate() {
                    position[j] = pos;
                }
                let mut remaining = ItemSet::full(n);
                for (pos, &j) in arrival_order.iter().enumerate() {
                    let mut avail = remaining;
                    if let Some(prefs) = prefs {
                        for i in remaining.items() {
                            if position[prefs[i]] > pos {
                                avail = avail.without(i);
                            }
                        }
                    }
                    avail_of[j] = avail;
                    let s = self.buyers[j].best_response_with(avail, &table);
                    remaining = remaining.difference(&s);
                    bundles[j] = s;
                }
            }
        }
        (Allocation::from_bundles(self, p, bundles), avail_of)
    }

    pub fn is_market_clearing(&self, p: &PriceVector) -> Result<bool> {
        Ok(self.allocate(p)?.is_market_clearing(self))
    }
}

/// Bundles per buyer plus the derived per-seller sales, profits and welfare.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Allocation {
    pub bundles: Vec<ItemSet>,
    /// `alpha_i`: copies sold by seller `i`.
    pub sold: Vec<usize>,
    /// `alpha_i * (p_i - c_i)`.
    pub profits: Vec<Value>,
    /// `sum_j v_j(S_j) - c(S_j)`.
    pub welfare: Value,
}

impl Allocation {
    pub fn from_bundles(inst: &MarketInstance, p: &PriceVector, bundles: Vec<ItemSet>) -> Self {
        let n = inst.n();
        let mut sold = vec![0usize; n];
        for s in &bundles {
            for i in s.items() {
                sold[i] += 1;
            }
        }
        let profits = (0..n)
            .map(|i| Value::from(sold[i]) * (p.get(i) - inst.cost(i)))
            .collect();
        let welfare = bundles
            .iter()
            .zip(inst.buyers())
            .map(|(s, b)| b.valuation().eval_bits(s.bits()) - s.items().map(|i| inst.cost(i)).sum::<Value>())
            .sum();
        Allocation {
            bundles,
            sold,
            profits,
            welfare,
        }
    }

    /// Unlimited: every buyer holds every item. Single copy: every item sold.
    pub fn is_market_clearing(&self, inst: &MarketInstance) -> bool {
        let n = inst.n();
        match inst.supply() {
            Supply::Unlimited => self.bundles.iter().all(|s| s.bits() == full_mask(n)),
            Supply::SingleCopy { .. } => self.sold.iter().all(|&a| a >= 1),
        }
    }
}

impl Serialize for ItemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, labels: &[usize]) -> ItemSet {
        ItemSet::from_items(n, labels.iter().map(|l| l - 1)).unwrap()
    }

    fn submodular_then_additive() -> MarketInstance {
        let v1 = SetFunction::dense_ints(3, &[0, 110, 112, 123, 114, 125, 127, 136]).unwrap();
        MarketInstance::single_copy(vec![
            Buyer::submodular(v1).unwrap(),
            Buyer::additive(vec![10.into(), 12.into(), 14.into()]).unwrap(),
        ])
        .unwrap()
    }

    fn submodular_pair() -> MarketInstance {
        let v1 = SetFunction::dense_ints(3, &[0, 90, 90, 100, 80, 100, 101, 110]).unwrap();
        let v2 = SetFunction::dense_ints(3, &[0, 70, 80, 86, 85, 90, 100, 105]).unwrap();
        MarketInstance::unlimited(vec![Buyer::submodular(v1).unwrap(), Buyer::submodular(v2).unwrap()]).unwrap()
    }

    #[test]
    fn subadditive_buyer_skips_cheap_items() {
        let v = SetFunction::dense_ints(3, &[0, 12, 12, 20, 19, 20, 20, 30]).unwrap();
        let b = Buyer::general(v).unwrap();
        let p = PriceVector::from_ints(&[9, 9, 9]).unwrap();
        assert_eq!(b.best_response(ItemSet::full(3), &p), set(3, &[3]));
    }

    #[test]
    fn zero_utility_ties_favor_larger_bundles() {
        let b = Buyer::additive(vec![10.into(), 12.into(), 14.into()]).unwrap();
        let p = PriceVector::from_ints(&[10, 12, 14]).unwrap();
        assert_eq!(b.best_response(ItemSet::full(3), &p), ItemSet::full(3));
    }

    #[test]
    fn prices_above_everything_buy_nothing() {
        let inst = submodular_pair();
        let p = PriceVector::from_ints(&[200, 200, 200]).unwrap();
        let a = inst.allocate(&p).unwrap();
        assert!(a.bundles.iter().all(|s| s.is_empty()));
        assert_eq!(a.welfare, Value::zero());
    }

    #[test]
    fn tie_priority_orders_equal_bundles() {
        let v1 = SetFunction::dense_ints(2, &[0, 14, 14, 25]).unwrap();
        let p = PriceVector::from_ints(&[12, 12]).unwrap();
        let plain = Buyer::submodular(v1.clone()).unwrap();
        assert_eq!(plain.best_response(ItemSet::full(2), &p), set(2, &[1]));
        let prefers_two = plain.with_tie_priority(vec![1, 0]).unwrap();
        assert_eq!(prefers_two.best_response(ItemSet::full(2), &p), set(2, &[2]));
    }

    #[test]
    fn lex_order_on_rank_masks() {
        // {1,2} before {1,3} before {2,3}
        assert!(lex_before(0b011, 0b101));
        assert!(lex_before(0b101, 0b110));
        assert!(!lex_before(0b110, 0b011));
        assert!(!lex_before(0b011, 0b011));
    }

    #[test]
    fn sequential_allocation_serves_first_buyer_first() {
        let inst = submodular_then_additive();
        let p = PriceVector::from_ints(&[10, 12, 14]).unwrap();
        let a = inst.allocate(&p).unwrap();
        // buyer 1 gets utility 101 from any pair versus 100 from all three
        assert_eq!(a.bundles, vec![set(3, &[1, 2]), set(3, &[3])]);
        assert_eq!(a.profits, vec![10.into(), 12.into(), 14.into()]);
        assert!(a.is_market_clearing(&inst));
    }

    #[test]
    fn unlimited_allocation_leaves_item_short() {
        let inst = submodular_pair();
        let p = PriceVector::from_ints(&[10, 10, 20]).unwrap();
        let a = inst.allocate(&p).unwrap();
        assert_eq!(a.bundles, vec![set(3, &[1, 2]), set(3, &[2, 3])]);
        assert_eq!(a.sold, vec![1, 2, 1]);
        assert_eq!(a.welfare, Value::from_int(200));
        assert!(!a.is_market_clearing(&inst));
    }

    #[test]
    fn free_items_clear_the_market() {
        for inst in [submodular_then_additive(), submodular_pair()] {
            let p = PriceVector::zeros(3);
            let a = inst.allocate(&p).unwrap();
            assert!(a.is_market_clearing(&inst));
        }
        let a = submodular_pair().allocate(&PriceVector::zeros(3)).unwrap();
        assert!(a.bundles.iter().all(|s| *s == ItemSet::full(3)));
    }

    #[test]
    fn budgeted_best_response_respects_budget() {
        let b = Buyer::additive(vec![10.into(), 10.into()])
            .unwrap()
            .with_budget(12.into())
            .unwrap();
        let p = PriceVector::from_ints(&[6, 7]).unwrap();
        // both cost 13 > 12; {1} gives 4, {2} gives 3
        assert_eq!(b.best_response(ItemSet::full(2), &p), set(2, &[1]));
        let p = PriceVector::from_ints(&[6, 6]).unwrap();
        assert_eq!(b.best_response(ItemSet::full(2), &p), ItemSet::full(2));
    }

    #[test]
    fn budgets_rejected_for_non_additive() {
        let v = SetFunction::dense_ints(2, &[0, 14, 14, 25]).unwrap();
        let b = Buyer::submodular(v).unwrap();
        assert!(matches!(b.with_budget(5.into()), Err(Error::UnsupportedBudget(_))));
    }

    #[test]
    fn declared_class_is_validated() {
        let v = SetFunction::dense_ints(3, &[0, 12, 12, 20, 19, 20, 20, 30]).unwrap();
        assert!(matches!(Buyer::submodular(v.clone()), Err(Error::ClassMismatch { .. })));
        assert!(matches!(
            Buyer::new(v, ValuationClass::Additive, None, None),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn instance_validation() {
        let b = || Buyer::additive(vec![1.into(), 2.into()]).unwrap();
        assert!(MarketInstance::new(vec![Value::zero()], Supply::Unlimited, vec![b()]).is_err());
        assert!(MarketInstance::new(vec![Value::zero(), Value::from_int(-1)], Supply::Unlimited, vec![b()]).is_err());
        assert!(MarketInstance::new(
            vec![Value::zero(), Value::zero()],
            Supply::SingleCopy {
                arrival_order: vec![0, 0]
            },
            vec![b(), b()]
        )
        .is_err());
        let inst = MarketInstance::unlimited(vec![b()]).unwrap();
        assert!(matches!(
            inst.allocate(&PriceVector::zeros(3)),
            Err(Error::PriceLength { .. })
        ));
        assert!(PriceVector::new(vec![Value::from_int(-1)]).is_err());
    }

    #[test]
    fn withholding_follows_preferences() {
        let v1 = SetFunction::dense_ints(3, &[0, 16, 16, 30, 16, 30, 30, 43]).unwrap();
        let v2 = SetFunction::dense_ints(3, &[0, 17, 17, 31, 17, 31, 31, 43]).unwrap();
        let inst =
            MarketInstance::single_copy(vec![Buyer::submodular(v1).unwrap(), Buyer::submodular(v2).unwrap()]).unwrap();
        let p = PriceVector::from_ints(&[14, 14, 16]).unwrap();
        let a = inst.allocate_with_preferences(&p, &[0, 0, 1]).unwrap();
        assert_eq!(a.bundles, vec![set(3, &[1, 2]), set(3, &[3])]);
        assert_eq!(a.profits[2], Value::from_int(16));
    }

    #[test]
    fn price_vector_parsing() {
        let p: PriceVector = "10, 12/2,0".parse().unwrap();
        assert_eq!(p.as_slice(), &[10.into(), 6.into(), Value::zero()]);
        assert!("1.5,2".parse::<PriceVector>().is_err());
        assert!("-1,2".parse::<PriceVector>().is_err());
        assert_eq!(p.to_string(), "(10, 6, 0)");
    }
}
