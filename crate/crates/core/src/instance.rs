//! JSON instance files.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "name": "demo",
//!   "n": 2,
//!   "costs": [0, "1/2"],
//!   "supply": { "mode": "single-copy", "arrival_order": [1, 2] },
//!   "buyers": [
//!     { "class": "submodular", "valuation": { "table": { "1": 14, "2": 14, "1,2": 25 } },
//!       "tie_priority": [2, 1] },
//!     { "class": "additive", "valuation": { "additive": [10, 12] }, "budget": 30 }
//!   ]
//! }
//! ```
//!
//! Items, buyers and table keys are 1-based. Numbers are integers or
//! `"num/den"` strings. A table may leave out `""` (taken as 0); an additive
//! buyer's table may leave out every set with two or more items.

use std::collections::BTreeMap;
use std::path::Path;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::market::{Buyer, MarketInstance, Supply, ValuationClass};
use crate::setfn::{ItemSet, SetFunction, MAX_ITEMS};
use crate::value::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<Vec<Value>>,
    pub supply: SupplyFile,
    pub buyers: Vec<BuyerFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SupplyFile {
    Unlimited,
    SingleCopy {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arrival_order: Option<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuyerFile {
    pub class: ValuationClass,
    pub valuation: ValuationFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_priority: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValuationFile {
    Additive(Vec<Value>),
    Table(#[serde(serialize_with = "ordered_table")] BTreeMap<String, Value>),
}

/// Keys by size, then lexicographically by item labels.
fn ordered_table<S: Serializer>(t: &BTreeMap<String, Value>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut entries: Vec<(Vec<usize>, &String, &Value)> = t
        .iter()
        .map(|(k, v)| (parse_key(k, MAX_ITEMS).unwrap_or_default(), k, v))
        .collect();
    entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let mut map = s.serialize_map(Some(entries.len()))?;
    for (_, k, v) in entries {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

/// `"1,3"` to sorted 1-based labels.
fn parse_key(key: &str, n: usize) -> Result<Vec<usize>> {
    let t = key.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let mut labels = t
        .split(',')
        .map(|x| {
            let l: usize = x
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad set key {key:?}: use comma-separated item numbers")))?;
            if l == 0 || l > n {
                return Err(Error::ItemOutOfRange { item: l, n });
            }
            Ok(l)
        })
        .collect::<Result<Vec<_>>>()?;
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse(format!("set key {key:?} repeats an item")));
    }
    Ok(labels)
}

fn key_of(s: &ItemSet) -> String {
    s.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

/// A parsed instance plus non-fatal notes about the input.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub name: Option<String>,
    pub instance: MarketInstance,
    pub warnings: Vec<String>,
}

fn to_zero_based(list: &[usize], len: usize, what: &str) -> Result<Vec<usize>> {
    list.iter()
        .map(|&x| {
            if x == 0 || x > len {
                Err(Error::InvalidInstance(format!("{what} entry {x} is outside 1..={len}")))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

fn build_valuation(
    j: usize,
    n: usize,
    class: ValuationClass,
    v: &ValuationFile,
    warnings: &mut Vec<String>,
) -> Result<SetFunction> {
    let at = |e: Error| Error::InvalidSetFunction(format!("buyer {}: {e}", j + 1));
    match v {
        ValuationFile::Additive(vals) => {
            if vals.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "buyer {}: {} additive values for {n} items",
                    j + 1,
                    vals.len()
                )));
            }
            SetFunction::additive(vals.clone()).map_err(at)
        }
        ValuationFile::Table(t) => {
            let mut dense: Vec<Option<Value>> = vec![None; 1 << n];
            for (k, val) in t {
                let labels = parse_key(k, n).map_err(at)?;
                let bits = labels.iter().fold(0usize, |b, l| b | 1 << (l - 1));
                if dense[bits].is_some() {
                    return Err(Error::Parse(format!("buyer {}: set {{{k}}} listed twice", j + 1)));
                }
                dense[bits] = Some(val.clone());
            }
            if dense[0].is_none() {
                warnings.push(format!("buyer {}: value of the empty set missing, taken as 0", j + 1));
                dense[0] = Some(Value::zero());
            }
            let mut out = Vec::with_capacity(1 << n);
            for (bits, slot) in dense.iter().enumerate() {
                let v = match slot {
                    Some(v) => v.clone(),
                    None if class == ValuationClass::Additive && bits.count_ones() >= 2 => {
                        let singles: Option<Value> = (0..n)
                            .filter(|i| bits >> i & 1 == 1)
                            .map(|i| dense[1 << i].clone())
                            .sum();
                        singles.ok_or_else(|| {
                            Error::InvalidInstance(format!("buyer {}: additive table lacks a singleton", j + 1))
                        })?
                    }
                    None => {
                        let s = ItemSet::from_bits(n, bits as u32)?;
                        return Err(Error::InvalidInstance(format!(
                            "buyer {}: table has no value for {s}",
                            j + 1
                        )));
                    }
                };
                out.push(v);
            }
            SetFunction::dense(n, out).map_err(at)
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<LoadedInstance> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                self.schema
            )));
        }
        let n = self.n;
        if n == 0 || n > MAX_ITEMS {
            return Err(Error::GroundSetSize(n));
        }
        let m = self.buyers.len();
        let mut warnings = Vec::new();
        let costs = self.costs.unwrap_or_else(|| vec![Value::zero(); n]);
        if costs.len() != n {
            return Err(Error::InvalidInstance(format!("{} costs for {n} items", costs.len())));
        }
        let supply = match self.supply {
            SupplyFile::Unlimited => Supply::Unlimited,
            SupplyFile::SingleCopy { arrival_order } => Supply::SingleCopy {
                arrival_order: match arrival_order {
                    Some(o) => to_zero_based(&o, m, "arrival order")?,
                    None => (0..m).collect(),
                },
            },
        };
        let mut buyers = Vec::with_capacity(m);
        for (j, b) in self.buyers.into_iter().enumerate() {
            let v = build_valuation(j, n, b.class, &b.valuation, &mut warnings)?;
            let tie = b
                .tie_priority
                .map(|t| to_zero_based(&t, n, "tie priority"))
                .transpose()?;
            let buyer = Buyer::new(v, b.class, tie, b.budget).map_err(|e| match e {
                Error::ClassMismatch { declared, detail, .. } => Error::ClassMismatch {
                    buyer: j + 1,
                    declared,
                    detail,
                },
                Error::UnsupportedBudget(_) => Error::UnsupportedBudget(j + 1),
                Error::InvalidInstance(msg) => Error::InvalidInstance(format!("buyer {}: {msg}", j + 1)),
                other => other,
            })?;
            buyers.push(buyer);
        }
        Ok(LoadedInstance {
            name: self.name,
            instance: MarketInstance::new(costs, supply, buyers)?,
            warnings,
        })
    }

    /// File form of an instance. Additive buyers use the short form.
    pub fn from_instance(inst: &MarketInstance, name: Option<&str>) -> InstanceFile {
        let n = inst.n();
        let buyers = inst
            .buyers()
            .iter()
            .map(|b| {
                let v = b.valuation();
                let valuation = match v.additive_values() {
                    Some(vals) => ValuationFile::Additive(vals.to_vec()),
                    None => ValuationFile::Table(
                        ItemSet::full(n)
                            .subsets()
                            .map(|s| (key_of(&s), v.eval_bits(s.bits()).clone()))
                            .collect(),
                    ),
                };
                let default: Vec<usize> = (0..n).collect();
                BuyerFile {
                    class: b.class(),
                    valuation,
                    tie_priority: (b.tie_priority() != default.as_slice())
                        .then(|| b.tie_priority().iter().map(|i| i + 1).collect()),
                    budget: b.budget().cloned(),
                }
            })
            .collect();
        InstanceFile {
            schema: SCHEMA_VERSION,
            name: name.map(str::to_string),
            n,
            costs: inst.has_costs().then(|| inst.costs().to_vec()),
            supply: match inst.supply() {
                Supply::Unlimited => SupplyFile::Unlimited,
                Supply::SingleCopy { arrival_order } => SupplyFile::SingleCopy {
                    arrival_order: Some(arrival_order.iter().map(|j| j + 1).collect()),
                },
            },
            buyers,
        }
    }
}

pub fn parse_instance_str(text: &str) -> Result<LoadedInstance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.into_instance()
}

pub fn parse_instance(path: impl AsRef<Path>) -> Result<LoadedInstance> {
    parse_instance_str(&std::fs::read_to_string(path)?)
}

pub fn to_json(inst: &MarketInstance, name: Option<&str>) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_instance(inst, name)).expect("serializable");
    s.push('\n');
    s
}

/// SHA-256 of the canonical compact encoding, hex.
pub fn digest(inst: &MarketInstance) -> String {
    let bytes = serde_json::to_vec(&InstanceFile::from_instance(inst, None)).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = r#"{
      "schema": 1, "name": "demo", "n": 2,
      "supply": { "mode": "single-copy", "arrival_order": [1, 2] },
      "buyers": [
        { "class": "submodular", "valuation": { "table": { "1": 14, "2": 14, "1,2": 25 } }, "tie_priority": [2, 1] },
        { "class": "additive", "valuation": { "additive": [10, "12/1"] } }
      ]
    }"#;

    #[test]
    fn parses_and_warns_on_missing_empty_set() {
        let l = parse_instance_str(DEMO).unwrap();
        assert_eq!(l.name.as_deref(), Some("demo"));
        assert_eq!(l.instance.m(), 2);
        assert_eq!(l.warnings.len(), 1);
        assert_eq!(l.instance.buyer(0).tie_priority(), &[1, 0]);
    }

    #[test]
    fn round_trip_is_identical() {
        let a = parse_instance_str(DEMO).unwrap().instance;
        let text = to_json(&a, Some("demo"));
        let b = parse_instance_str(&text).unwrap();
        assert_eq!(a, b.instance);
        assert!(b.warnings.is_empty());
        assert_eq!(text, to_json(&b.instance, Some("demo")));
        assert_eq!(digest(&a), digest(&b.instance));
    }

    #[test]
    fn additive_table_may_skip_pairs() {
        let text = r#"{"schema":1,"n":3,"supply":{"mode":"unlimited"},
          "buyers":[{"class":"additive","valuation":{"table":{"":0,"1":10,"2":12,"3":14}}}]}"#;
        let inst = parse_instance_str(text).unwrap().instance;
        let v = inst.buyer(0).valuation();
        assert_eq!(v.eval_bits(0b101), &Value::from_int(24));
    }

    #[test]
    fn rejections() {
        let bad = |t: &str| parse_instance_str(t).is_err();
        // decimal value
        assert!(bad(
            r#"{"schema":1,"n":1,"supply":{"mode":"unlimited"},"buyers":[{"class":"additive","valuation":{"additive":[1.5]}}]}"#
        ));
        // too many items
        assert!(bad(r#"{"schema":1,"n":17,"supply":{"mode":"unlimited"},"buyers":[]}"#));
        // missing set in a general table
        assert!(bad(
            r#"{"schema":1,"n":2,"supply":{"mode":"unlimited"},"buyers":[{"class":"general","valuation":{"table":{"1":1,"2":1}}}]}"#
        ));
        // negative value
        assert!(bad(
            r#"{"schema":1,"n":1,"supply":{"mode":"unlimited"},"buyers":[{"class":"additive","valuation":{"additive":[-1]}}]}"#
        ));
        // nonzero empty set
        assert!(bad(
            r#"{"schema":1,"n":1,"supply":{"mode":"unlimited"},"buyers":[{"class":"general","valuation":{"table":{"":1,"1":2}}}]}"#
        ));
        // unknown field
        assert!(bad(
            r#"{"schema":1,"n":1,"supply":{"mode":"unlimited"},"buyers":[],"extra":0}"#
        ));
    }

    #[test]
    fn class_mismatch_names_the_buyer() {
        let text = r#"{"schema":1,"n":3,"supply":{"mode":"unlimited"},"buyers":[
          {"class":"additive","valuation":{"additive":[1,1,1]}},
          {"class":"submodular","valuation":{"table":{"":0,"1":12,"2":12,"3":19,"1,2":20,"1,3":20,"2,3":20,"1,2,3":30}}}]}"#;
        match parse_instance_str(text) {
            Err(Error::ClassMismatch { buyer, declared, .. }) => assert_eq!((buyer, declared), (2, "submodular")),
            other => panic!("{other:?}"),
        }
    }
}
