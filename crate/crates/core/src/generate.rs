//! Seeded random instances for property checks and sweeps.
//!
//! Submodular valuations are sums of capped additive pieces
//! `S -> min(cap, sum_{i in S} w_i)`, which are monotone and submodular.

use rand::Rng;

use crate::market::{Buyer, MarketInstance, Supply};
use crate::setfn::{full_mask, SetFunction};
use crate::value::Value;

/// Additive valuation with integer item values in `0..=max`.
pub fn additive<R: Rng>(rng: &mut R, n: usize, max: i64) -> SetFunction {
    let vals: Vec<Value> = (0..n).map(|_| Value::from_int(rng.gen_range(0..=max))).collect();
    SetFunction::additive(vals).expect("nonnegative")
}

/// Monotone submodular valuation with integer values at most `max`.
pub fn submodular<R: Rng>(rng: &mut R, n: usize, max: i64) -> SetFunction {
    let pieces = rng.gen_range(1..=2i64);
    let share = (max / pieces).max(1);
    let mut table = vec![0i64; 1 << n];
    for _ in 0..pieces {
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=share)).collect();
        let cap = rng.gen_range(1..=share);
        for (s, slot) in table.iter_mut().enumerate() {
            let sum: i64 = (0..n).filter(|i| s >> i & 1 == 1).map(|i| w[i]).sum();
            *slot += sum.min(cap);
        }
    }
    debug_assert_eq!(table.len(), full_mask(n) as usize + 1);
    SetFunction::dense_ints(n, &table).expect("normalized and nonnegative")
}

pub fn additive_buyer<R: Rng>(rng: &mut R, n: usize, max: i64) -> Buyer {
    Buyer::additive(additive(rng, n, max).additive_values().expect("additive").to_vec()).expect("valid")
}

/// A submodular buyer; declared additive when the draw happens to be additive.
pub fn submodular_buyer<R: Rng>(rng: &mut R, n: usize, max: i64) -> Buyer {
    Buyer::submodular(submodular(rng, n, max)).expect("capped sums are submodular")
}

/// Integer costs in `0..=max` per item.
pub fn costs<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<Value> {
    (0..n).map(|_| Value::from_int(rng.gen_range(0..=max))).collect()
}

/// Unlimited-supply market of submodular buyers, zero costs.
pub fn unlimited_submodular<R: Rng>(rng: &mut R, n: usize, m: usize, max: i64) -> MarketInstance {
    let buyers = (0..m).map(|_| submodular_buyer(rng, n, max)).collect();
    MarketInstance::unlimited(buyers).expect("valid")
}

/// Unlimited supply with at most one submodular buyer, the rest additive.
pub fn unlimited_mostly_additive<R: Rng>(rng: &mut R, n: usize, m: usize, max: i64) -> MarketInstance {
    let special = rng.gen_range(0..=m);
    let buyers = (0..m)
        .map(|j| {
            if j == special {
                submodular_buyer(rng, n, max)
            } else {
                additive_buyer(rng, n, max)
            }
        })
        .collect();
    MarketInstance::unlimited(buyers).expect("valid")
}

/// Single copy, a submodular buyer served first, then `additive` additive buyers.
pub fn single_copy_submodular_first<R: Rng>(rng: &mut R, n: usize, additive: usize, max: i64) -> MarketInstance {
    let mut buyers = vec![submodular_buyer(rng, n, max)];
    buyers.extend((0..additive).map(|_| additive_buyer(rng, n, max)));
    MarketInstance::single_copy(buyers).expect("valid")
}

/// Single copy with arbitrary submodular buyers in a random arrival order.
pub fn single_copy<R: Rng>(rng: &mut R, n: usize, m: usize, max: i64) -> MarketInstance {
    let buyers = (0..m).map(|_| submodular_buyer(rng, n, max)).collect();
    let mut order: Vec<usize> = (0..m).collect();
    for k in (1..m).rev() {
        order.swap(k, rng.gen_range(0..=k));
    }
    MarketInstance::new(
        vec![Value::zero(); n],
        Supply::SingleCopy { arrival_order: order },
        buyers,
    )
    .expect("valid")
}

/// Two additive buyers, the first with an integer budget, unlimited supply.
pub fn budgeted_pair<R: Rng>(rng: &mut R, n: usize, max: i64) -> MarketInstance {
    let a = additive(rng, n, max);
    let total: Value = a.additive_values().expect("additive").iter().sum();
    let cap = total.numer().try_into().unwrap_or(0i64) + 2;
    let b1 = Buyer::additive(a.additive_values().expect("additive").to_vec())
        .expect("valid")
        .with_budget(Value::from_int(rng.gen_range(1..=cap)))
        .expect("additive");
    MarketInstance::unlimited(vec![b1, additive_buyer(rng, n, max)]).expect("valid")
}
