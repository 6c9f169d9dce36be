//! Market-clearing conditions for unlimited supply and the pricing they pin down.
//!
//! Run with `cargo run --example unique_pricing`.

use postedprice::characterize::{mc_condition, unique_mc_pricing, uniqueness_condition};
use postedprice::equilibrium::verify;
use postedprice::{fixtures, Buyer, MarketInstance, SetFunction, Value};

fn main() -> postedprice::Result<()> {
    let failing = fixtures::load("clearing_condition_fails")?;
    let r = mc_condition(&failing)?;
    if let Some(item) = r.first_failure() {
        let worst = item
            .ratio_checks
            .iter()
            .min_by_key(|q| q.slack.clone())
            .expect("two buyers");
        println!("item {} fails: {} > {}", item.item + 1, worst.lhs, worst.rhs);
    }
    println!("{}", unique_mc_pricing(&failing).unwrap_err());

    // one submodular buyer and one additive buyer, marginals within a factor of two
    let sub = SetFunction::dense_ints(2, &[0, 12, 10, 18])?;
    let market = MarketInstance::unlimited(vec![
        Buyer::submodular(sub)?,
        Buyer::additive(vec![9.into(), 7.into()])?,
    ])?;
    let u = uniqueness_condition(&market)?;
    let p = unique_mc_pricing(&market)?;
    let v = verify(&market, &p, &Value::zero())?;
    println!(
        "pricing {p}: equilibrium {}, clearing {}, unique {}",
        v.is_equilibrium, v.market_clearing, u.applies
    );
    Ok(())
}
