//! Sellers who also choose which buyer they would rather sell to.
//!
//! Run with `cargo run --example preference_game`.

use postedprice::equilibrium::{enumerate_preference_equilibria, verify_preference_game, GridOptions};
use postedprice::{fixtures, PriceVector, Value};

fn main() -> postedprice::Result<()> {
    let market = fixtures::load("preference_game_no_equilibrium")?;
    let p = PriceVector::from_ints(&[0, 0, 0])?;
    // every seller prefers the second buyer (0-based index 1)
    let v = verify_preference_game(&market, &p, &[1, 1, 1], &Value::zero())?;
    println!("bundles {:?}, equilibrium {}", v.allocation.bundles, v.is_equilibrium);
    for s in v.violators() {
        println!(
            "  seller {} would move to price {} preferring buyer {}",
            s.seller + 1,
            s.best.price,
            s.best.preference.map_or(0, |j| j + 1)
        );
    }
    let all = enumerate_preference_equilibria(&market, &Value::zero(), &GridOptions::default())?;
    println!("profiles that are equilibria: {}", all.len());
    Ok(())
}
