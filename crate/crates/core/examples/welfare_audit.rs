//! Optimal welfare, price of anarchy and the harmonic welfare bound.
//!
//! Run with `cargo run --example welfare_audit`.

use postedprice::equilibrium::{enumerate_grid_equilibria, GridOptions};
use postedprice::welfare::{hm_bound_audit, opt_welfare, poa_pos};
use postedprice::{fixtures, PriceVector, Value};

fn main() -> postedprice::Result<()> {
    for m in [2, 3, 5] {
        // buyer j values the single item at 1/j; pricing at 1 sells only to buyer 1
        let market = fixtures::harmonic(m, Value::zero());
        let p = PriceVector::from_ints(&[1])?;
        let audit = hm_bound_audit(&market, &p)?;
        println!(
            "m = {m}: OPT {}, welfare {}, bound holds {}, tight {}",
            opt_welfare(&market)?,
            audit.realized_value,
            audit.holds,
            audit.tight
        );
    }

    let pair = fixtures::load("submodular_pair")?;
    let eqs = enumerate_grid_equilibria(&pair, &Value::zero(), &GridOptions::default())?;
    let r = poa_pos(&pair, &eqs)?;
    println!("two submodular buyers: {} equilibria, OPT {}", r.equilibria, r.opt);
    if let (Some(poa), Some(pos)) = (r.poa, r.pos) {
        println!("price of anarchy {poa}, price of stability {pos}");
    }
    Ok(())
}
