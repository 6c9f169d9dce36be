//! Bundled instances, embedded at compile time from `fixtures/*.json`.

use crate::error::{Error, Result};
use crate::instance::parse_instance_str;
use crate::market::{Buyer, MarketInstance};
use crate::value::Value;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        const BUNDLED: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*
        ];
    };
}

bundled!(
    "additive_first_no_eps_ne",
    "budget_spent",
    "budget_unspent",
    "clearing_condition_fails",
    "harmonic_m3",
    "harmonic_m5",
    "preference_game_no_equilibrium",
    "subadditive_not_submodular",
    "submodular_pair",
    "submodular_then_additive",
    "tie_priority_no_equilibrium",
);

/// Names accepted by [`load`].
pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// Raw JSON of a bundled instance.
pub fn source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<MarketInstance> {
    let text = source(name).ok_or_else(|| Error::InvalidInstance(format!("no bundled instance {name:?}")))?;
    Ok(parse_instance_str(text)?.instance)
}

/// One item, unlimited supply, `m` additive buyers: buyer 1 values the item
/// at `1 + extra`, buyer `j > 1` at `1/j`.
pub fn harmonic(m: usize, extra: Value) -> MarketInstance {
    assert!(m >= 1, "at least one buyer");
    let mut buyers = vec![Buyer::additive(vec![Value::one() + extra]).expect("nonnegative")];
    buyers.extend((2..=m).map(|j| Buyer::additive(vec![Value::ratio(1, j as i64)]).expect("positive")));
    MarketInstance::unlimited(buyers).expect("valid")
}
