//! Serialization helpers: rationals as `"p/q"` strings, integers as JSON
//! numbers when they fit in an `i64`.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::scalars::Rational;

pub fn rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn integers<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

pub fn rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn option_rationals<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => rationals(v, s),
        None => s.serialize_none(),
    }
}

pub fn int_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    struct Row<'a>(&'a [BigInt]);
    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            integers(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}
