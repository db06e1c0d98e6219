//! JSON helpers for arbitrary-precision integers.
//!
//! Integers are written as plain JSON numbers with every digit preserved,
//! whatever the scalar type. Use with `#[serde(with = "crate::json::int")]`
//! and friends.

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use crate::Scalar;

/// Newtype that (de)serializes a scalar as an exact JSON number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Int<T>(pub T);

impl<T: Scalar> Serialize for Int<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int::serialize(&self.0, s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Int<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        int::deserialize(d).map(Int)
    }
}

pub mod int {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        let n: Number = v.to_string().parse().map_err(S::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let n = Number::deserialize(d)?;
        let text = n.to_string();
        text.parse::<T>()
            .map_err(|_| D::Error::custom(format!("{text} is not an integer of the expected type")))
    }
}

pub mod int_seq {
    use super::*;

    struct Ref<'a, T>(&'a T);

    impl<T: Scalar> Serialize for Ref<'_, T> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            int::serialize(self.0, s)
        }
    }

    pub fn serialize<T: Scalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Ref))
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        let v: Vec<Int<T>> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|i| i.0).collect())
    }
}
