//! Production costs as an extra buyer who values each item at its cost.
//!
//! Run with `cargo run --example cost_reduction`.

use postedprice::characterize::{cost_correspondence, eliminate_costs};
use postedprice::epsne::with_costs;
use postedprice::equilibrium::GridOptions;
use postedprice::{fixtures, Value};

fn main() -> postedprice::Result<()> {
    let market = fixtures::load("submodular_then_additive")?.with_costs(vec![0.into(), 5.into(), 500.into()])?;
    let reduced = eliminate_costs(&market)?;
    println!(
        "{} buyers become {}; costs are now {:?}",
        market.m(),
        reduced.m(),
        reduced.costs()
    );

    let c = cost_correspondence(&market, &Value::zero(), &GridOptions::default())?;
    println!("equilibria correspond: {}", c.matches);
    for (a, b) in c.original.iter().zip(&c.reduced) {
        println!("  {a} <-> {b}");
    }

    // the item costing 500 stays with the cost buyer
    let out = with_costs(&market, &Value::ratio(1, 2))?;
    println!(
        "ascent ends at {}, real buyers clear the market: {}",
        out.prices, out.market_clearing
    );
    Ok(())
}
