//! Two additive buyers, the first with a budget: deciding whether a
//! market-clearing equilibrium exists, and finding it.
//!
//! Run with `cargo run --example budget_conditions`.

use postedprice::budget::{boundary_pricing, decide_mc_pne};
use postedprice::{fixtures, Buyer, MarketInstance};

fn main() -> postedprice::Result<()> {
    for name in ["budget_unspent", "budget_spent"] {
        let market = fixtures::load(name)?;
        let r = decide_mc_pne(&market)?;
        println!(
            "{name}: exists {}, pricings {:?}",
            r.exists,
            r.equilibria.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        );
        for failing in r.unspent.bullets.iter().filter(|b| !b.holds) {
            println!("  unspent case fails: {}", failing.name);
        }
    }

    // pricings that exactly exhaust the budget, one per split point
    let market = MarketInstance::unlimited(vec![
        Buyer::additive(vec![9.into(), 4.into(), 6.into()])?.with_budget(11.into())?,
        Buyer::additive(vec![3.into(), 5.into(), 2.into()])?,
    ])?;
    for k in 0..3 {
        let p: Vec<String> = boundary_pricing(&market, k)?.iter().map(|v| v.to_string()).collect();
        println!("k = {k}: ({})", p.join(", "));
    }
    Ok(())
}
