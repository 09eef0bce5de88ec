//! JSON shapes shared by the library and the CLI.
//!
//! Integers are JSON numbers when they fit in 64 bits and decimal strings
//! otherwise; rationals are strings `"a/b"` (or `"a"` when integral).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .to_string()
                .parse()
                .map(JsonInt)
                .map_err(|_| de::Error::custom(format!("not an integer: {n}"))),
            serde_json::Value::String(s) => s
                .trim()
                .parse()
                .map(JsonInt)
                .map_err(|_| de::Error::custom(format!("not an integer: {s:?}"))),
            other => Err(de::Error::custom(format!("expected integer, got {other}"))),
        }
    }
}

impl std::fmt::Display for JsonInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(JsonRational).map_err(de::Error::custom)
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(JsonInt).collect())
        .collect()
}

pub fn matrix_from_json(rows: Vec<Vec<JsonInt>>) -> Result<IntMatrix> {
    IntMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect(),
    )
}

pub fn vector_to_json(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

/// `{ "rank": n, "gram": [[...], ...] }`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    pub gram: Vec<Vec<JsonInt>>,
}

impl From<&Lattice> for LatticeJson {
    fn from(l: &Lattice) -> Self {
        LatticeJson {
            rank: l.rank(),
            gram: matrix_to_json(l.gram()),
        }
    }
}

impl TryFrom<LatticeJson> for Lattice {
    type Error = Error;
    fn try_from(j: LatticeJson) -> Result<Lattice> {
        let rank = j.rank;
        let gram = matrix_from_json(j.gram)?;
        if gram.nrows() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: gram.nrows(),
            });
        }
        Lattice::new(gram)
    }
}

/// Parses either the lattice object format or a bare Gram matrix.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.is_array() {
        let rows: Vec<Vec<JsonInt>> =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        return Lattice::new(matrix_from_json(rows)?);
    }
    let j: LatticeJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    Lattice::try_from(j)
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Lattice::try_from(LatticeJson::deserialize(d)?).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_round_trip() {
        let l = Lattice::from_i64_rows(&[[2, 3], [3, 0]]).unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"{"rank":2,"gram":[[2,3],[3,0]]}"#);
        assert_eq!(parse_lattice(&text).unwrap(), l);
        assert_eq!(parse_lattice("[[2,3],[3,0]]").unwrap(), l);
        assert!(parse_lattice(r#"{"rank":3,"gram":[[2,3],[3,0]]}"#).is_err());
        assert_eq!(parse_lattice("[[1,1],[2,1]]"), Err(Error::NotSymmetric));
    }

    #[test]
    fn big_integers_are_strings() {
        let big: BigInt = BigInt::from(u64::MAX) * 4;
        let text = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(text, format!("\"{big}\""));
        let back: JsonInt = serde_json::from_str(&text).unwrap();
        assert_eq!(back.0, big);
    }
}
