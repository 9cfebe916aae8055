use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{PencilError, Result};
use crate::exact::{rat, serde_rational, Rational};

/// Supplier of the arbitrary scalars consumed by [`super::simulate_family`].
///
/// Each step draws the right singular scalars first (one per nonzero column minimal
/// index, in block order), then one scalar per zero column.
pub trait FreeInputSource {
    /// `None` once the source is exhausted.
    fn next_scalar(&mut self) -> Option<Rational>;
}

/// Replays a fixed list.
#[derive(Debug, Clone)]
pub struct ExplicitInputs {
    values: Vec<Rational>,
    cursor: usize,
}

impl ExplicitInputs {
    pub fn new(values: Vec<Rational>) -> Self {
        ExplicitInputs { values, cursor: 0 }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| rat(v)).collect())
    }

    pub fn consumed(&self) -> usize {
        self.cursor
    }
}

impl FreeInputSource for ExplicitInputs {
    fn next_scalar(&mut self) -> Option<Rational> {
        let v = self.values.get(self.cursor).cloned();
        if v.is_some() {
            self.cursor += 1;
        }
        v
    }
}

/// Endless uniform integers in `[low, high]` from a seeded ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct SeededInputs {
    rng: ChaCha8Rng,
    low: i64,
    high: i64,
}

impl SeededInputs {
    pub fn new(seed: u64) -> Self {
        Self::with_range(seed, -5, 5)
    }

    pub fn with_range(seed: u64, low: i64, high: i64) -> Self {
        assert!(low <= high, "empty range");
        SeededInputs { rng: ChaCha8Rng::seed_from_u64(seed), low, high }
    }
}

impl FreeInputSource for SeededInputs {
    fn next_scalar(&mut self) -> Option<Rational> {
        Some(rat(self.rng.gen_range(self.low..=self.high)))
    }
}

/// Always zero: selects the particular solution with no excitation.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroInputs;

impl FreeInputSource for ZeroInputs {
    fn next_scalar(&mut self) -> Option<Rational> {
        Some(rat(0))
    }
}

/// Scalars drawn for one step `k -> k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FreeStep {
    #[serde(with = "rational_list")]
    pub eps: Vec<Rational>,
    #[serde(with = "rational_list")]
    pub zero: Vec<Rational>,
}

impl FreeStep {
    pub fn flatten(&self) -> impl Iterator<Item = &Rational> {
        self.eps.iter().chain(self.zero.iter())
    }
}

pub(crate) fn draw(
    source: &mut dyn FreeInputSource,
    n: usize,
    consumed: &mut usize,
) -> Result<Vec<Rational>> {
    (0..n)
        .map(|_| {
            let v = source
                .next_scalar()
                .ok_or(PencilError::FreeInputsExhausted { consumed: *consumed })?;
            *consumed += 1;
            Ok(v)
        })
        .collect()
}

mod rational_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::serde_rational;
    use crate::exact::Rational;

    #[derive(Serialize, Deserialize)]
    struct Wire(#[serde(with = "serde_rational")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|r| Wire(r.clone())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<Wire>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}
