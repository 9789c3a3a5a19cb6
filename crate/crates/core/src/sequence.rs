use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite prefix `a(1), ..., a(H)` of a sequence.
///
/// Indexing is 1-based and `a(0) = 0` is available implicitly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SequenceDoc", into = "SequenceDoc")]
pub struct SequencePrefix {
    values: Vec<Rational>,
}

impl SequencePrefix {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(SequencePrefix { values })
    }

    /// Tabulates `g(1), ..., g(h)`.
    pub fn from_fn(h: usize, mut g: impl FnMut(usize) -> Rational) -> Result<Self> {
        Self::new((1..=h).map(&mut g).collect())
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// `a(n)`, with `a(0) = 0`. Panics past the horizon.
    pub fn get(&self, n: usize) -> Rational {
        if n == 0 {
            Rational::zero()
        } else {
            self.values[n - 1].clone()
        }
    }

    pub fn at(&self, n: usize) -> &Rational {
        &self.values[n - 1]
    }

    pub fn slope(&self, n: usize) -> Rational {
        self.at(n).div_index(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn truncate(&self, h: usize) -> Result<Self> {
        if h > self.horizon() {
            return Err(Error::HorizonTooShort {
                needed: h,
                available: self.horizon(),
            });
        }
        Self::new(self.values[..h].to_vec())
    }
}

/// Wire form: `{"values": [...], "offset": 1}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct SequenceDoc {
    values: Vec<Rational>,
    #[serde(default = "one")]
    offset: usize,
}

fn one() -> usize {
    1
}

impl TryFrom<SequenceDoc> for SequencePrefix {
    type Error = Error;

    fn try_from(doc: SequenceDoc) -> Result<Self> {
        if doc.offset != 1 {
            return Err(Error::Parse(format!(
                "offset must be 1, got {}",
                doc.offset
            )));
        }
        SequencePrefix::new(doc.values)
    }
}

impl From<SequencePrefix> for SequenceDoc {
    fn from(s: SequencePrefix) -> Self {
        SequenceDoc {
            values: s.values,
            offset: 1,
        }
    }
}
