//! JSON encoding of exact values: rationals as `"p/q"` strings, integers accepted bare.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::RatMatrix;
use super::rational::{format_rational, parse_rational, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn into_rational<E: serde::de::Error>(self) -> Result<Rational, E> {
        match self {
            Scalar::Text(s) => parse_rational(&s).map_err(E::custom),
            Scalar::Int(n) => Ok(super::rational::rat(n)),
        }
    }
}

/// `#[serde(with = "serde_rational")]` for a single rational field.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        format_rational(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Scalar::deserialize(d)?.into_rational()
    }
}

/// `#[serde(with = "serde_vector")]`: a column vector as a flat list.
pub mod serde_vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &RatMatrix, s: S) -> Result<S::Ok, S::Error> {
        v.entries().iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatMatrix, D::Error> {
        let raw = Vec::<Scalar>::deserialize(d)?;
        let vals = raw.into_iter().map(Scalar::into_rational).collect::<Result<Vec<_>, D::Error>>()?;
        Ok(RatMatrix::column_vector(vals))
    }
}

/// Optional column vector.
pub mod serde_opt_vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<RatMatrix>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|m| m.entries().iter().map(format_rational).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<RatMatrix>, D::Error> {
        let raw = Option::<Vec<Scalar>>::deserialize(d)?;
        raw.map(|r| {
            let vals = r.into_iter().map(Scalar::into_rational).collect::<Result<Vec<_>, D::Error>>()?;
            Ok(RatMatrix::column_vector(vals))
        })
        .transpose()
    }
}

/// List of column vectors.
pub mod serde_vectors {
    use super::*;

    pub fn serialize<S: Serializer, V: AsRef<[RatMatrix]>>(vs: V, s: S) -> Result<S::Ok, S::Error> {
        vs.as_ref()
            .iter()
            .map(|v| v.entries().iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RatMatrix>, D::Error> {
        let raw = Vec::<Vec<Scalar>>::deserialize(d)?;
        raw.into_iter()
            .map(|r| {
                let vals = r.into_iter().map(Scalar::into_rational).collect::<Result<Vec<_>, D::Error>>()?;
                Ok(RatMatrix::column_vector(vals))
            })
            .collect()
    }
}

/// Optional list of column vectors.
pub mod serde_opt_vectors {
    use super::*;

    pub fn serialize<S: Serializer>(vs: &Option<Vec<RatMatrix>>, s: S) -> Result<S::Ok, S::Error> {
        match vs {
            Some(v) => serializer_some(v, s),
            None => s.serialize_none(),
        }
    }

    fn serializer_some<S: Serializer>(v: &[RatMatrix], s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wrap<'a>(#[serde(with = "super::serde_vectors")] &'a [RatMatrix]);
        s.serialize_some(&Wrap(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<RatMatrix>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_vectors")] Vec<RatMatrix>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Matrices travel as arrays of rows. A matrix without rows is written as `[]` and
/// reads back as `0 x 0`.
impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<Scalar>>::deserialize(d)?;
        let rows = raw.len();
        let cols = raw.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows * cols);
        for (i, r) in raw.into_iter().enumerate() {
            if r.len() != cols {
                return Err(D::Error::custom(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for x in r {
                data.push(x.into_rational()?);
            }
        }
        RatMatrix::new(rows, cols, data).map_err(D::Error::custom)
    }
}
