use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::AffineVector;
use crate::Rational;

/// Diagonal 0/1 matrix selecting the accepting states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Projection {
    size: usize,
    accepting: Vec<usize>,
}

impl Projection {
    pub fn new(size: usize, accepting: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(&index) = set.iter().find(|&&i| i >= size) {
            return Err(Error::StateOutOfRange { index, size });
        }
        Ok(Self {
            size,
            accepting: set.into_iter().collect(),
        })
    }

    pub fn empty(size: usize) -> Self {
        Self {
            size,
            accepting: Vec::new(),
        }
    }

    pub fn full(size: usize) -> Self {
        Self {
            size,
            accepting: (0..size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Accepting indices in increasing order.
    pub fn accepting(&self) -> &[usize] {
        &self.accepting
    }

    pub fn contains(&self, index: usize) -> bool {
        self.accepting.binary_search(&index).is_ok()
    }

    /// `I - P`.
    pub fn complement(&self) -> Projection {
        Projection {
            size: self.size,
            accepting: (0..self.size).filter(|i| !self.contains(*i)).collect(),
        }
    }

    /// `P_a ⊗ P_b`: index `i * other.size + j` accepts iff both `i` and `j` do.
    pub fn tensor(&self, other: &Projection) -> Projection {
        let accepting = self
            .accepting
            .iter()
            .flat_map(|i| other.accepting.iter().map(move |j| i * other.size + j))
            .collect();
        Projection {
            size: self.size * other.size,
            accepting,
        }
    }

    /// `P_a + P_b` for disjoint accepting sets over the same states.
    pub fn union_disjoint(&self, other: &Projection) -> Result<Projection> {
        if self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        if let Some(&i) = self.accepting.iter().find(|i| other.contains(**i)) {
            return Err(Error::OverlappingProjections(i));
        }
        let mut accepting = self.accepting.clone();
        accepting.extend_from_slice(&other.accepting);
        accepting.sort_unstable();
        Ok(Projection {
            size: self.size,
            accepting,
        })
    }

    /// Places two projections on consecutive blocks of states.
    pub fn direct_sum(&self, other: &Projection) -> Projection {
        let mut accepting = self.accepting.clone();
        accepting.extend(other.accepting.iter().map(|i| i + self.size));
        Projection {
            size: self.size + other.size,
            accepting,
        }
    }

    /// Shifts every index by `offset` inside a larger space of `size` states.
    pub(crate) fn embed(&self, size: usize, offset: usize) -> Projection {
        debug_assert!(offset + self.size <= size);
        Projection {
            size,
            accepting: self.accepting.iter().map(|i| i + offset).collect(),
        }
    }

    /// `|P v|`, the L1 mass of `v` on accepting states.
    pub fn projected_norm(&self, v: &AffineVector) -> Rational {
        self.projected_norm_raw(v.entries())
    }

    pub(crate) fn projected_norm_raw(&self, v: &[Rational]) -> Rational {
        self.accepting
            .iter()
            .fold(Rational::zero(), |acc, &i| acc + v[i].abs())
    }
}
