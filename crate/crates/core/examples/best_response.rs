//! How a single buyer picks a bundle, and how a sequence of buyers shares
//! single copies.
//!
//! Run with `cargo run --example best_response`.

use postedprice::{Buyer, ItemSet, MarketInstance, PriceVector, SetFunction};

fn main() -> postedprice::Result<()> {
    // table in bitmask order: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}
    let v = SetFunction::dense_ints(3, &[0, 110, 112, 123, 114, 125, 127, 136])?;
    let c = v.classify();
    println!(
        "monotone {}, submodular {}, additive {}",
        c.monotone, c.submodular, c.additive
    );

    let first = Buyer::submodular(v)?;
    let second = Buyer::additive(vec![10.into(), 12.into(), 14.into()])?;
    let p = PriceVector::from_ints(&[10, 12, 14])?;

    let all = ItemSet::full(3);
    let chosen = first.best_response(all, &p);
    println!("first buyer takes {chosen}, utility {}", first.utility(&chosen, &p));

    // the second buyer only sees what is left
    let left = all.difference(&chosen);
    println!("second buyer takes {} out of {left}", second.best_response(left, &p));

    let market = MarketInstance::single_copy(vec![first, second])?;
    let a = market.allocate(&p)?;
    println!(
        "bundles {:?}, welfare {}, clearing {}",
        a.bundles,
        a.welfare,
        a.is_market_clearing(&market)
    );

    // a subadditive buyer can leave cheap items on the shelf
    let odd = Buyer::general(SetFunction::dense_ints(3, &[0, 10, 10, 20, 19, 20, 20, 20])?)?;
    println!(
        "subadditive buyer at (9, 9, 9) takes {}",
        odd.best_response(all, &PriceVector::from_ints(&[9, 9, 9])?)
    );
    Ok(())
}
