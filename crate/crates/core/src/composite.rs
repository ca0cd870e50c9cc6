//! Constructions kept as an expression tree instead of a materialized
//! automaton.
//!
//! Tensor powers grow fast: intersecting two twice-amplified 3-state
//! automata already needs `3^18` states. A [`Composite`] stores the recipe
//! and evaluates a word by running only the leaf automata, then combining
//! the L1 masses of their final states the way the materialized automaton
//! would:
//!
//! * a tensor product state `x ⊗ y` has mass `|x| |y|`, and on the product
//!   of accepting sets `|P x| |P y|`;
//! * a block state `(α z; β z)` has mass `(α + β) |z|`;
//! * complementing the accepting set leaves `|v| - |P v|`;
//! * the majority set of `x ⊗ x ⊗ x` has mass `p³ + 3 p² (t - p)`.
//!
//! [`Composite::materialize`] builds the explicit automaton when it fits;
//! the test suite checks both paths agree.

use num_traits::One;

use crate::automaton::{AcceptanceFunction, Afa};
use crate::combinators::{self, check_ceiling, same_alphabet, BooleanOp, MixWeights};
use crate::error::{Error, Result};
use crate::rational::ratio;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Composite {
    Leaf(Afa),
    Tensor(Box<Composite>, Box<Composite>),
    Convex(Box<Composite>, Box<Composite>, MixWeights),
    Complement(Box<Composite>),
    Amplify(Box<Composite>),
}

/// `(|P v|, |v|)` for the final state of some run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Masses {
    pub accepting: Rational,
    pub total: Rational,
}

impl Masses {
    pub fn value(&self) -> Rational {
        &self.accepting / &self.total
    }
}

impl From<Afa> for Composite {
    fn from(a: Afa) -> Self {
        Composite::Leaf(a)
    }
}

impl Composite {
    pub fn leaf(a: Afa) -> Self {
        Composite::Leaf(a)
    }

    pub fn tensor(self, other: Composite) -> Result<Self> {
        same_alphabet(self.alphabet(), other.alphabet())?;
        Ok(Composite::Tensor(Box::new(self), Box::new(other)))
    }

    pub fn convex(self, other: Composite, weights: MixWeights) -> Result<Self> {
        same_alphabet(self.alphabet(), other.alphabet())?;
        Ok(Composite::Convex(Box::new(self), Box::new(other), weights))
    }

    pub fn complement(self) -> Self {
        Composite::Complement(Box::new(self))
    }

    pub fn amplify(self) -> Self {
        Composite::Amplify(Box::new(self))
    }

    pub fn amplify_rounds(self, rounds: u32) -> Self {
        (0..rounds).fold(self, |c, _| c.amplify())
    }

    pub fn union(self, other: Composite) -> Result<Self> {
        self.convex(other, MixWeights::new(ratio(1, 2), ratio(1, 2))?)
    }

    pub fn intersection(self, other: Composite) -> Result<Self> {
        self.tensor(other)
    }

    /// Lazy counterpart of [`combinators::boolean_with_amplify`].
    pub fn boolean_with_amplify(self, other: Composite, op: BooleanOp, eps: &Rational) -> Result<Self> {
        let rounds = combinators::rounds_for_error(eps, &ratio(1, 4))?;
        let a = self.amplify_rounds(rounds);
        let b = other.amplify_rounds(rounds);
        match op {
            BooleanOp::Union => a.union(b),
            BooleanOp::Intersection => a.intersection(b),
        }
    }

    pub fn alphabet(&self) -> &[char] {
        match self {
            Composite::Leaf(a) => a.alphabet(),
            Composite::Tensor(a, _) | Composite::Convex(a, _, _) => a.alphabet(),
            Composite::Complement(a) | Composite::Amplify(a) => a.alphabet(),
        }
    }

    /// States of the materialized automaton, `None` past `u128`.
    pub fn state_count(&self) -> Option<u128> {
        match self {
            Composite::Leaf(a) => Some(a.state_count() as u128),
            Composite::Tensor(a, b) => a.state_count()?.checked_mul(b.state_count()?),
            Composite::Convex(a, b, _) => a.state_count()?.checked_mul(b.state_count()?)?.checked_mul(2),
            Composite::Complement(a) => a.state_count(),
            Composite::Amplify(a) => a.state_count()?.checked_pow(3),
        }
    }

    /// Builds the explicit automaton, refusing above `ceiling` states.
    pub fn materialize(&self, ceiling: u64) -> Result<Afa> {
        check_ceiling(self.state_count(), ceiling)?;
        self.build()
    }

    fn build(&self) -> Result<Afa> {
        match self {
            Composite::Leaf(a) => Ok(a.clone()),
            Composite::Tensor(a, b) => combinators::tensor_product(&a.build()?, &b.build()?),
            Composite::Convex(a, b, w) => combinators::convex_sum(&a.build()?, &b.build()?, w),
            Composite::Complement(a) => Ok(combinators::complement(&a.build()?)),
            Composite::Amplify(a) => combinators::amplify(&a.build()?),
        }
    }

    /// Accepting and total L1 mass of the final state on `word`.
    pub fn masses(&self, word: &str) -> Result<Masses> {
        match self {
            Composite::Leaf(a) => {
                let v = a.run(word)?;
                Ok(Masses {
                    accepting: a.accepting().projected_norm(&v),
                    total: v.l1_norm(),
                })
            }
            Composite::Tensor(a, b) => {
                let x = a.masses(word)?;
                let y = b.masses(word)?;
                Ok(Masses {
                    accepting: x.accepting * y.accepting,
                    total: x.total * y.total,
                })
            }
            Composite::Convex(a, b, w) => {
                let x = a.masses(word)?;
                let y = b.masses(word)?;
                // first block accepts on P_a ⊗ I, second on I ⊗ P_b
                let accepting = w.alpha() * &x.accepting * &y.total + w.beta() * &x.total * &y.accepting;
                let total = (w.alpha() + w.beta()) * &x.total * &y.total;
                Ok(Masses { accepting, total })
            }
            Composite::Complement(a) => {
                let x = a.masses(word)?;
                Ok(Masses {
                    accepting: &x.total - &x.accepting,
                    total: x.total,
                })
            }
            Composite::Amplify(a) => {
                let Masses { accepting: p, total: t } = a.masses(word)?;
                let rejecting = &t - &p;
                let three = Rational::from_integer(3.into());
                let accepting = &p * &p * &p + three * &p * &p * rejecting;
                Ok(Masses {
                    accepting,
                    total: &t * &t * &t,
                })
            }
        }
    }

    pub fn accept_value(&self, word: &str) -> Result<Rational> {
        let m = self.masses(word)?;
        if m.total < Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "state mass {} below 1: leaf automata are not affine",
                m.total
            )));
        }
        Ok(m.value())
    }
}

impl AcceptanceFunction for Composite {
    fn alphabet(&self) -> &[char] {
        Composite::alphabet(self)
    }

    fn accept_value(&self, word: &str) -> Result<Rational> {
        Composite::accept_value(self, word)
    }
}
