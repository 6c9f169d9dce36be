//! Exact equilibrium analysis for posted-price markets where each seller
//! prices a single item and buyers with combinatorial valuations pick
//! utility-maximizing bundles.
//!
//! Every quantity is an exact rational ([`Value`]), so ties, breakpoints and
//! tight bounds are decided without tolerance.

pub mod budget;
pub mod characterize;
pub mod cli;
pub mod epsne;
pub mod equilibrium;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod instance;
mod labels;
pub mod market;
pub mod setfn;
pub mod value;
pub mod welfare;

pub use error::{Error, Result};
pub use market::{Allocation, Buyer, MarketInstance, PriceVector, Supply, ValuationClass};
pub use setfn::{Classification, ItemSet, SetFunction};
pub use value::Value;
