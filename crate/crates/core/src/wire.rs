//! Serde adapters writing every scalar as its canonical string (`"3/2"`).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;

fn parse<'de, T: Scalar, D: Deserializer<'de>>(s: &str) -> Result<T, D::Error> {
    T::parse_repr(s).map_err(D::Error::custom)
}

pub mod scalar {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_repr())
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let s = String::deserialize(d)?;
        parse::<T, D>(&s)
    }
}

pub mod scalar_opt {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(Scalar::to_repr).serialize(s)
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse::<T, D>(&s))
            .transpose()
    }
}

pub mod scalar_vec {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Scalar::to_repr))
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse::<T, D>(s))
            .collect()
    }
}

/// Maps with string-serializable keys and scalar values.
pub mod scalar_map {
    use std::collections::BTreeMap;

    use super::*;

    pub fn serialize<K, T, S>(m: &BTreeMap<K, T>, s: S) -> Result<S::Ok, S::Error>
    where
        K: Serialize,
        T: Scalar,
        S: Serializer,
    {
        s.collect_map(m.iter().map(|(k, v)| (k, v.to_repr())))
    }

    pub fn deserialize<'de, K, T, D>(d: D) -> Result<BTreeMap<K, T>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        T: Scalar,
        D: Deserializer<'de>,
    {
        BTreeMap::<K, String>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| Ok((k, parse::<T, D>(&v)?)))
            .collect()
    }
}
