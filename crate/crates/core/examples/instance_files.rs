//! Reading and writing instance files.
//!
//! Run with `cargo run --example instance_files`.

use postedprice::instance::{digest, parse_instance_str, to_json};

const TEXT: &str = r#"{
  "schema": 1,
  "name": "two items, one table buyer",
  "n": 2,
  "supply": { "mode": "unlimited" },
  "buyers": [
    { "class": "submodular", "valuation": { "table": { "1": 5, "2": "7/2", "1,2": 8 } } },
    { "class": "additive", "valuation": { "additive": [3, 3] }, "budget": 5 }
  ]
}"#;

fn main() -> postedprice::Result<()> {
    let loaded = parse_instance_str(TEXT)?;
    for w in &loaded.warnings {
        println!("warning: {w}");
    }
    let market = loaded.instance;
    println!("sha256 {}", digest(&market));
    print!("{}", to_json(&market, loaded.name.as_deref()));
    Ok(())
}
