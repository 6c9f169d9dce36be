//! Price ascent to a market-clearing ε-equilibrium in a single-copy market
//! where a submodular buyer arrives first and additive buyers follow.
//!
//! Run with `cargo run --example eps_ne_ascent`.

use postedprice::epsne::construct_eps_ne;
use postedprice::{Buyer, MarketInstance, SetFunction, Value};

fn main() -> postedprice::Result<()> {
    let first = SetFunction::dense_ints(2, &[0, 6, 5, 9])?;
    let market = MarketInstance::single_copy(vec![
        Buyer::submodular(first)?,
        Buyer::additive(vec![1.into(), 1.into()])?,
        Buyer::additive(vec![2.into(), 0.into()])?,
    ])?;
    let out = construct_eps_ne(&market, &Value::ratio(1, 2))?;
    println!("start {} (bound {} raises)", out.trace.initial, out.trace.raise_bound);
    for r in &out.trace.raises {
        println!("  seller {}: {} -> {}", r.seller + 1, r.from, r.to);
    }
    println!(
        "final {}: ε-equilibrium {}, clearing {}",
        out.prices, out.verdict.is_equilibrium, out.market_clearing
    );
    Ok(())
}
