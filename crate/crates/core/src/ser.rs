//! Decimal-string serialisation for big integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serializer;

pub fn big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn big_opt<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

pub fn big_mat<S: Serializer>(m: &[[BigInt; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    for row in m {
        seq.serialize_element(&[row[0].to_string(), row[1].to_string()])?;
    }
    seq.end()
}

pub fn prime_map<S: Serializer>(m: &BTreeMap<u64, (u64, u64)>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for (p, (c, a)) in m {
        map.serialize_entry(&p.to_string(), &serde_json::json!({"claimed": c, "actual": a}))?;
    }
    map.end()
}
