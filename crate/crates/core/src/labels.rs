//! Serializers that print internal 0-based indices as 1-based labels.

use serde::{Serialize, Serializer};

pub fn one<S: Serializer>(i: &usize, s: S) -> Result<S::Ok, S::Error> {
    (i + 1).serialize(s)
}

pub fn many<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

pub fn opt<S: Serializer>(i: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
    i.map(|i| i + 1).serialize(s)
}

pub fn opt_many<S: Serializer>(v: &Option<Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|v| v.iter().map(|i| i + 1).collect::<Vec<_>>())
        .serialize(s)
}
