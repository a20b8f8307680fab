//! JSON plumbing shared by the parsers: diagnostics with positions, and
//! integers that may be too wide for a JSON number.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

/// Parses `text` as `T`, keeping serde_json's line and column.
pub fn from_str<'a, T: serde::Deserialize<'a>>(text: &'a str) -> Result<T, ParseError> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline. Serialization of these types cannot fail.
pub fn to_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Serde adapter: a `BigInt` is written as a JSON number when it fits in an
/// `i64`, otherwise as a decimal string; both forms are accepted on input.
pub mod bigint {
    use super::*;
    use num_traits::ToPrimitive;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        d.deserialize_any(BigIntVisitor)
    }

    pub(crate) struct BigIntVisitor;

    impl Visitor<'_> for BigIntVisitor {
        type Value = BigInt;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an integer or a decimal string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
            // 4096 digits is far beyond anything the constructions produce
            if v.len() > 4096 {
                return Err(E::custom("integer string too long"));
            }
            v.parse().map_err(|_| E::custom(format!("not an integer: {v:?}")))
        }
    }
}

/// `BTreeMap<String, BigInt>` through [`bigint`].
pub mod bigint_map {
    use std::collections::BTreeMap;

    use serde::de::MapAccess;
    use serde::ser::SerializeMap;

    use super::*;

    struct Wrap<'a>(&'a BigInt);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::bigint::serialize(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, BigInt>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(k, &Wrap(v))?;
        }
        map.end()
    }

    struct Unwrap(BigInt);

    impl<'de> serde::Deserialize<'de> for Unwrap {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            super::bigint::deserialize(d).map(Unwrap)
        }
    }

    struct MapVisitor;

    impl<'de> Visitor<'de> for MapVisitor {
        type Value = BTreeMap<String, BigInt>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map from generator ids to integers")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, Unwrap(v))) = a.next_entry::<String, Unwrap>()? {
                if out.insert(k.clone(), v).is_some() {
                    return Err(de::Error::custom(format!("duplicate generator {k:?}")));
                }
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, BigInt>, D::Error> {
        d.deserialize_map(MapVisitor)
    }
}
