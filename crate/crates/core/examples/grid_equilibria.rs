//! Exact equilibrium checks and exhaustive search over breakpoint grids.
//!
//! Run with `cargo run --example grid_equilibria`.

use postedprice::equilibrium::{enumerate_grid_equilibria, grid_axes, verify, GridOptions};
use postedprice::{fixtures, PriceVector, Value};

fn main() -> postedprice::Result<()> {
    let market = fixtures::load("submodular_then_additive")?;
    let v = verify(&market, &PriceVector::from_ints(&[10, 12, 14])?, &Value::zero())?;
    println!(
        "(10, 12, 14): equilibrium {}, clearing {}",
        v.is_equilibrium, v.market_clearing
    );

    let axes = grid_axes(&market);
    println!("grid axis sizes {:?}", axes.iter().map(Vec::len).collect::<Vec<_>>());
    for e in enumerate_grid_equilibria(&market, &Value::zero(), &GridOptions::default())? {
        println!("equilibrium {} with welfare {}", e.prices, e.allocation.welfare);
    }

    // Here the first buyer breaks ties toward item 2, which leaves every
    // seller wanting to move. The best deviation can be a supremum that is
    // approached but never reached.
    let tied = fixtures::load("tie_priority_no_equilibrium")?;
    let v = verify(&tied, &PriceVector::from_ints(&[11, 12])?, &Value::zero())?;
    for s in v.violators() {
        println!(
            "seller {} earns {} now, up to {} near price {} (attained: {})",
            s.seller + 1,
            s.current_profit,
            s.best.profit,
            s.best.price,
            s.best.attained
        );
    }
    let none = enumerate_grid_equilibria(&tied, &Value::zero(), &GridOptions::default())?;
    println!("grid equilibria with tie priority: {}", none.len());

    // a tolerance can let equilibria appear
    let additive_first = fixtures::load("additive_first_no_eps_ne")?;
    for eps in [Value::ratio(69, 10), Value::from_int(15)] {
        let n = enumerate_grid_equilibria(&additive_first, &eps, &GridOptions::default())?.len();
        println!("ε = {eps}: {n} grid ε-equilibria");
    }
    Ok(())
}
