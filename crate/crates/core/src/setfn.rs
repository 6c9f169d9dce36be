//! Set functions over a ground set of at most 16 items.
//!
//! Items are 0-based internally (`item i` of the text is index `i - 1`) and
//! a set is a bitmask with bit `i` standing for item index `i`. Display
//! formatting is 1-based, matching how items are numbered in instance files.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::value::Value;

pub const MAX_ITEMS: usize = 16;

/// A subset of the ground set `{0, .., n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemSet {
    bits: u32,
    n: u8,
}

impl ItemSet {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_ITEMS);
        ItemSet { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ITEMS);
        ItemSet {
            bits: full_mask(n),
            n: n as u8,
        }
    }

    /// Builds a set from raw bits. Bits at or above `n` are rejected.
    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_ITEMS {
            return Err(Error::GroundSetSize(n));
        }
        if bits & !full_mask(n) != 0 {
            return Err(Error::InvalidSetFunction(format!(
                "bits {bits:#b} outside a ground set of {n} items"
            )));
        }
        Ok(ItemSet { bits, n: n as u8 })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        ItemSet { bits, n: n as u8 }
    }

    /// Builds a set from 0-based item indices.
    pub fn from_items<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Result<Self> {
        let mut s = ItemSet::empty(n);
        for i in items {
            if i >= n {
                return Err(Error::ItemOutOfRange { item: i, n });
            }
            s.bits |= 1 << i;
        }
        Ok(s)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn ground_size(&self) -> usize {
        self.n as usize
    }

    pub fn contains(&self, item: usize) -> bool {
        item < self.n as usize && self.bits & (1 << item) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn with(&self, item: usize) -> ItemSet {
        ItemSet {
            bits: self.bits | (1 << item),
            n: self.n,
        }
    }

    pub fn without(&self, item: usize) -> ItemSet {
        ItemSet {
            bits: self.bits & !(1 << item),
            n: self.n,
        }
    }

    pub fn union(&self, other: &ItemSet) -> ItemSet {
        ItemSet {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    pub fn intersection(&self, other: &ItemSet) -> ItemSet {
        ItemSet {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    pub fn difference(&self, other: &ItemSet) -> ItemSet {
        ItemSet {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    pub fn complement(&self) -> ItemSet {
        ItemSet {
            bits: !self.bits & full_mask(self.n as usize),
            n: self.n,
        }
    }

    pub fn is_subset(&self, other: &ItemSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// 0-based item indices in ascending order.
    pub fn items(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.n as usize).filter(move |i| bits & (1 << i) != 0)
    }

    /// 1-based item labels in ascending order.
    pub fn labels(&self) -> Vec<usize> {
        self.items().map(|i| i + 1).collect()
    }

    /// Every subset of `self`, starting with the empty set.
    pub fn subsets(&self) -> impl Iterator<Item = ItemSet> {
        let n = self.n;
        SubsetIter {
            mask: self.bits,
            next: Some(0),
        }
        .map(move |bits| ItemSet { bits, n })
    }
}

impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Enumerates submasks of `mask` in increasing numeric order.
struct SubsetIter {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for SubsetIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(cur)
    }
}

#[derive(Clone)]
enum Repr {
    Dense(Vec<Value>),
    Additive(Vec<Value>),
}

/// A normalized, nonnegative set function.
///
/// Additive functions keep only their per-item values; the dense table is
/// expanded on first use and cached.
#[derive(Clone)]
pub struct SetFunction {
    n: usize,
    repr: Repr,
    dense: OnceLock<Vec<Value>>,
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Additive(v) => f.debug_tuple("Additive").field(v).finish(),
            Repr::Dense(v) => f.debug_tuple("Dense").field(v).finish(),
        }
    }
}

impl PartialEq for SetFunction {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table() == other.table()
    }
}

impl Eq for SetFunction {}

/// Structural properties decided by exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub normalized: bool,
    pub monotone: bool,
    pub additive: bool,
    pub submodular: bool,
    pub subadditive: bool,
}

impl SetFunction {
    /// Dense table indexed by bitmask; `values.len()` must be `2^n`.
    pub fn dense(n: usize, values: Vec<Value>) -> Result<Self> {
        check_ground(n)?;
        if values.len() != 1 << n {
            return Err(Error::InvalidSetFunction(format!(
                "table has {} entries, expected {}",
                values.len(),
                1usize << n
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidSetFunction(format!(
                "v(empty set) = {} but valuations must be normalized",
                values[0]
            )));
        }
        if let Some((mask, v)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidSetFunction(format!(
                "negative value {v} on {}",
                ItemSet::from_bits_unchecked(n, mask as u32)
            )));
        }
        Ok(SetFunction {
            n,
            repr: Repr::Dense(values),
            dense: OnceLock::new(),
        })
    }

    /// Additive function `v(S) = sum of per-item values`.
    pub fn additive(values: Vec<Value>) -> Result<Self> {
        let n = values.len();
        check_ground(n)?;
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidSetFunction(format!(
                "negative value {v} for item {}",
                i + 1
            )));
        }
        Ok(SetFunction {
            n,
            repr: Repr::Additive(values),
            dense: OnceLock::new(),
        })
    }

    /// Convenience for tests and examples: integer table in bitmask order.
    pub fn dense_ints(n: usize, values: &[i64]) -> Result<Self> {
        SetFunction::dense(n, values.iter().map(|&v| Value::from_int(v)).collect())
    }

    pub fn additive_ints(values: &[i64]) -> Result<Self> {
        SetFunction::additive(values.iter().map(|&v| Value::from_int(v)).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Per-item values when stored in additive form.
    pub fn additive_values(&self) -> Option<&[Value]> {
        match &self.repr {
            Repr::Additive(v) => Some(v),
            Repr::Dense(_) => None,
        }
    }

    /// The full table indexed by bitmask.
    pub fn table(&self) -> &[Value] {
        match &self.repr {
            Repr::Dense(v) => v,
            Repr::Additive(items) => self.dense.get_or_init(|| expand_additive(items)),
        }
    }

    pub fn eval(&self, s: &ItemSet) -> Result<Value> {
        if s.ground_size() != self.n {
            return Err(Error::GroundSetMismatch {
                expected: self.n,
                actual: s.ground_size(),
            });
        }
        Ok(self.eval_bits(s.bits()).clone())
    }

    /// Table lookup by raw mask. The mask must lie inside the ground set.
    pub fn eval_bits(&self, bits: u32) -> &Value {
        &self.table()[bits as usize]
    }

    /// `v(S + i) - v(S)`.
    pub fn marginal(&self, item: usize, s: &ItemSet) -> Result<Value> {
        if s.ground_size() != self.n {
            return Err(Error::GroundSetMismatch {
                expected: self.n,
                actual: s.ground_size(),
            });
        }
        if item >= self.n {
            return Err(Error::ItemOutOfRange { item, n: self.n });
        }
        if s.contains(item) {
            return Err(Error::ItemInSet(item + 1));
        }
        Ok(self.marginal_bits(item, s.bits()))
    }

    pub(crate) fn marginal_bits(&self, item: usize, bits: u32) -> Value {
        match &self.repr {
            Repr::Additive(v) => v[item].clone(),
            Repr::Dense(t) => &t[(bits | (1 << item)) as usize] - &t[bits as usize],
        }
    }

    /// Marginal on top of everything else, `v(N) - v(N \ {i})`.
    pub fn top_marginal(&self, item: usize) -> Value {
        let rest = full_mask(self.n) & !(1 << item);
        self.marginal_bits(item, rest)
    }

    pub fn classify(&self) -> Classification {
        let t = self.table();
        let n = self.n;
        let full = full_mask(n);
        let normalized = t[0].is_zero();

        let mut monotone = true;
        let mut additive = true;
        'outer: for s in 0..=full {
            for i in 0..n {
                if s & (1 << i) != 0 {
                    continue;
                }
                let with = (s | (1 << i)) as usize;
                if t[with] < t[s as usize] {
                    monotone = false;
                }
                if additive && t[with] != &t[s as usize] + &t[1 << i] {
                    additive = false;
                }
                if !monotone && !additive {
                    break 'outer;
                }
            }
        }

        // Second-order test: v(S+x) + v(S+y) >= v(S+x+y) + v(S) for all S and x != y outside S.
        let mut submodular = true;
        'sub: for s in 0..=full {
            for x in 0..n {
                if s & (1 << x) != 0 {
                    continue;
                }
                for y in (x + 1)..n {
                    if s & (1 << y) != 0 {
                        continue;
                    }
                    let sx = (s | (1 << x)) as usize;
                    let sy = (s | (1 << y)) as usize;
                    let sxy = (s | (1 << x) | (1 << y)) as usize;
                    if &t[sx] + &t[sy] < &t[sxy] + &t[s as usize] {
                        submodular = false;
                        break 'sub;
                    }
                }
            }
        }

        // Normalized nonnegative submodular functions are subadditive. Otherwise
        // enumerate: disjoint pairs suffice for monotone functions.
        let subadditive = if submodular && normalized {
            true
        } else {
            let mut ok = true;
            'sa: for a in 0..=full {
                let others = if monotone { full & !a } else { full };
                for b in (ItemSet::from_bits_unchecked(n, others)).subsets() {
                    let b = b.bits();
                    if t[(a | b) as usize] > &t[a as usize] + &t[b as usize] {
                        ok = false;
                        break 'sa;
                    }
                }
            }
            ok
        };

        Classification {
            normalized,
            monotone,
            additive,
            submodular,
            subadditive,
        }
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ITEMS {
        Err(Error::GroundSetSize(n))
    } else {
        Ok(())
    }
}

fn expand_additive(items: &[Value]) -> Vec<Value> {
    let n = items.len();
    let mut t = vec![Value::zero(); 1 << n];
    for s in 1..(1usize << n) {
        let low = s.trailing_zeros() as usize;
        t[s] = &t[s & (s - 1)] + &items[low];
    }
    t
}
