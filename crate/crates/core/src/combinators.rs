//! Constructions that combine automata while controlling the acceptance
//! function exactly.
//!
//! | construction        | acceptance value          |
//! |---------------------|---------------------------|
//! | [`tensor_product`]  | `f(w) * g(w)`             |
//! | [`scale`]           | `α f(w)`                  |
//! | [`convex_sum`]      | `α f(w) + β g(w)`         |
//! | [`complement`]      | `1 - f(w)`                |
//! | [`amplify`]         | `f(w)² (3 - 2 f(w))`      |
//!
//! All outputs are materialized automata; see [`crate::composite`] for a
//! lazily evaluated form of the same constructions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::automaton::{Afa, Kind};
use crate::error::{Error, Result};
use crate::linalg::{AffineMatrix, AffineVector};
use crate::projection::Projection;
use crate::rational::{is_unit_interval, ratio};
use crate::Rational;

/// Default ceiling on the number of states [`amplify_rounds`] may produce.
pub const DEFAULT_STATE_CEILING: u64 = 1_000_000;

/// Nonnegative weights summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixWeights {
    alpha: Rational,
    beta: Rational,
}

impl MixWeights {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if !is_unit_interval(&alpha) {
            return Err(out_of_unit("alpha", alpha));
        }
        if !is_unit_interval(&beta) {
            return Err(out_of_unit("beta", beta));
        }
        if !(&alpha + &beta).is_one() {
            return Err(Error::InvalidArgument(format!(
                "mix weights {alpha} and {beta} do not sum to 1"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// `(α, 1 - α)`.
    pub fn from_alpha(alpha: Rational) -> Result<Self> {
        let beta = Rational::one() - &alpha;
        Self::new(alpha, beta)
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }
}

pub(crate) fn out_of_unit(what: &'static str, value: Rational) -> Error {
    Error::OutOfRange {
        what,
        value: Box::new(value),
        range: "[0,1]",
    }
}

pub(crate) fn same_alphabet(a: &[char], b: &[char]) -> Result<()> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    if x == y {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: a.to_vec(),
            right: b.to_vec(),
        })
    }
}

fn map_transitions(
    a: &Afa,
    mut f: impl FnMut(char, &AffineMatrix) -> Result<AffineMatrix>,
) -> Result<BTreeMap<char, AffineMatrix>> {
    a.alphabet()
        .iter()
        .map(|&c| Ok((c, f(c, a.transition(c)?)?)))
        .collect()
}

/// Runs `a` and `b` side by side on the tensor product of their state
/// spaces. Accepts on pairs of accepting states, so the value is `f_a * f_b`.
pub fn tensor_product(a: &Afa, b: &Afa) -> Result<Afa> {
    same_alphabet(a.alphabet(), b.alphabet())?;
    let transitions = map_transitions(a, |c, m| Ok(m.tensor(b.transition(c)?)))?;
    Afa::new(
        a.kind().join(b.kind()),
        a.alphabet().to_vec(),
        a.initial().tensor(b.initial()),
        transitions,
        a.accepting().tensor(b.accepting()),
    )
}

/// Two-state probabilistic automaton whose value is `alpha` on every word.
pub fn constant(alphabet: &[char], alpha: Rational) -> Result<Afa> {
    if !is_unit_interval(&alpha) {
        return Err(out_of_unit("alpha", alpha));
    }
    let rest = Rational::one() - &alpha;
    let transitions = alphabet
        .iter()
        .map(|&c| (c, AffineMatrix::identity(2)))
        .collect();
    Afa::new(
        Kind::Stochastic,
        alphabet.to_vec(),
        AffineVector::new(vec![alpha, rest])?,
        transitions,
        Projection::new(2, [0])?,
    )
}

/// Value `alpha * f_a`: the product with [`constant`]`(alpha)`.
pub fn scale(a: &Afa, alpha: Rational) -> Result<Afa> {
    tensor_product(&constant(a.alphabet(), alpha)?, a)
}

/// Value `α f_a + β f_b`.
///
/// Two copies of `a ⊗ b` run in parallel, weighted `α` and `β`; the first
/// copy accepts on the accepting states of `a`, the second on those of `b`.
pub fn convex_sum(a: &Afa, b: &Afa, weights: &MixWeights) -> Result<Afa> {
    same_alphabet(a.alphabet(), b.alphabet())?;
    let transitions = map_transitions(a, |c, m| {
        let block = m.tensor(b.transition(c)?);
        Ok(block.direct_sum(&block))
    })?;
    let start = a.initial().tensor(b.initial());
    let initial = start.scaled(weights.alpha()).concat(&start.scaled(weights.beta()));
    let first = a.accepting().tensor(&Projection::full(b.state_count()));
    let second = Projection::full(a.state_count()).tensor(b.accepting());
    Afa::new(
        a.kind().join(b.kind()),
        a.alphabet().to_vec(),
        initial,
        transitions,
        first.direct_sum(&second),
    )
}

/// Value `1 - f_a`: the same automaton accepting on the other states.
pub fn complement(a: &Afa) -> Afa {
    a.with_accepting(a.accepting().complement())
        .expect("complement keeps the state count")
}

/// Majority vote of three copies: value `f² (3 - 2f)`.
pub fn amplify(a: &Afa) -> Result<Afa> {
    let transitions = map_transitions(a, |_, m| Ok(m.tensor(m).tensor(m)))?;
    let initial = a.initial().tensor(a.initial()).tensor(a.initial());
    let yes = a.accepting();
    let no = yes.complement();
    let term = |x: &Projection, y: &Projection, z: &Projection| x.tensor(y).tensor(z);
    let accepting = term(yes, yes, yes)
        .union_disjoint(&term(&no, yes, yes))?
        .union_disjoint(&term(yes, &no, yes))?
        .union_disjoint(&term(yes, yes, &no))?;
    Afa::new(a.kind(), a.alphabet().to_vec(), initial, transitions, accepting)
}

/// `x² (3 - 2x)`, the value map of one [`amplify`] round.
pub fn majority_polynomial(x: &Rational) -> Rational {
    x * x * (Rational::from_integer(3.into()) - x * Rational::from_integer(2.into()))
}

/// Number of states after `rounds` amplification rounds of a `k`-state
/// automaton, `k^(3^rounds)`, or `None` if it does not fit in a `u128`.
pub fn amplified_state_count(states: usize, rounds: u32) -> Option<u128> {
    let exponent = 3u32.checked_pow(rounds)?;
    (states as u128).checked_pow(exponent)
}

/// [`amplify`] applied `rounds` times, refusing to exceed
/// [`DEFAULT_STATE_CEILING`] states.
pub fn amplify_rounds(a: &Afa, rounds: u32) -> Result<Afa> {
    amplify_rounds_with_ceiling(a, rounds, DEFAULT_STATE_CEILING)
}

pub fn amplify_rounds_with_ceiling(a: &Afa, rounds: u32, ceiling: u64) -> Result<Afa> {
    check_ceiling(amplified_state_count(a.state_count(), rounds), ceiling)?;
    let mut out = a.clone();
    for _ in 0..rounds {
        out = amplify(&out)?;
    }
    Ok(out)
}

pub(crate) fn check_ceiling(states: Option<u128>, ceiling: u64) -> Result<()> {
    match states {
        Some(n) if n <= ceiling as u128 => Ok(()),
        Some(n) => Err(Error::TooManyStates {
            states: n.to_string(),
            ceiling,
        }),
        None => Err(Error::TooManyStates {
            states: "more than 2^128".into(),
            ceiling,
        }),
    }
}

/// Smallest number of [`amplify`] rounds taking error `eps` to at most
/// `target`. Each round maps the error `x` to `x² (3 - 2x)`; the iteration
/// converges to zero exactly when `eps < 1/2`.
pub fn rounds_for_error(eps: &Rational, target: &Rational) -> Result<u32> {
    let half = ratio(1, 2);
    if *eps < Rational::zero() || *eps >= half {
        return Err(Error::OutOfRange {
            what: "error bound",
            value: Box::new(eps.clone()),
            range: "[0, 1/2)",
        });
    }
    if *target <= Rational::zero() && !eps.is_zero() {
        return Err(Error::InvalidArgument(
            "a positive error never reaches zero".into(),
        ));
    }
    let mut x = eps.clone();
    let mut rounds = 0;
    while x > *target {
        x = majority_polynomial(&x);
        rounds += 1;
    }
    Ok(rounds)
}

/// Automaton `b` with `f_a(w) > λ₁ ⇔ f_b(w) > λ₂` and
/// `f_a(w) = λ₁ ⇔ f_b(w) = λ₂` for every word.
///
/// For `λ₁ < 1` and `λ₂ ≥ λ₁` the value becomes `α f_a + (1 - α)` with
/// `α = (1 - λ₂) / (1 - λ₁)`. Downward shifts go through the complement on
/// both sides, and `λ₁ = 1` rescales by `λ₂`.
pub fn shift_cutpoint(a: &Afa, from: &Rational, to: &Rational) -> Result<Afa> {
    if !is_unit_interval(from) {
        return Err(out_of_unit("lambda1", from.clone()));
    }
    if !is_unit_interval(to) {
        return Err(out_of_unit("lambda2", to.clone()));
    }
    let one = Rational::one();
    let boundary = to.is_zero() || to.is_one();
    if boundary && from != to {
        // Nothing lies above 1 or below 0, so one side of the equivalence is empty.
        return Err(Error::UnshiftableCutpoint {
            from: Box::new(from.clone()),
            to: Box::new(to.clone()),
        });
    }
    if from.is_one() {
        return scale(a, to.clone());
    }
    if to < from {
        let flipped = shift_cutpoint(&complement(a), &(&one - from), &(&one - to))?;
        return Ok(complement(&flipped));
    }
    let alpha = (&one - to) / (&one - from);
    let ones = constant(a.alphabet(), one)?;
    convex_sum(a, &ones, &MixWeights::from_alpha(alpha)?)
}

/// Value `(f_a + f_b) / 2`. With both inputs at error at most 1/4, members
/// of the union score at least 3/8 and non-members at most 1/4.
pub fn union(a: &Afa, b: &Afa) -> Result<Afa> {
    convex_sum(a, b, &MixWeights::new(ratio(1, 2), ratio(1, 2))?)
}

/// Value `f_a * f_b`. With both inputs at error at most 1/4, members of the
/// intersection score at least 9/16 and non-members at most 1/4.
pub fn intersection(a: &Afa, b: &Afa) -> Result<Afa> {
    tensor_product(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BooleanOp {
    Union,
    Intersection,
}

impl BooleanOp {
    /// Decision threshold `(accept_at_least, reject_at_most)` that holds
    /// when both inputs have error at most 1/4.
    pub fn thresholds(self) -> (Rational, Rational) {
        match self {
            BooleanOp::Union => (ratio(3, 8), ratio(1, 4)),
            BooleanOp::Intersection => (ratio(9, 16), ratio(1, 4)),
        }
    }
}

/// Amplifies both inputs until their declared error `eps` is at most 1/4,
/// then applies `op`.
pub fn boolean_with_amplify(a: &Afa, b: &Afa, op: BooleanOp, eps: &Rational) -> Result<Afa> {
    let rounds = rounds_for_error(eps, &ratio(1, 4))?;
    let a = amplify_rounds(a, rounds)?;
    let b = amplify_rounds(b, rounds)?;
    match op {
        BooleanOp::Union => union(&a, &b),
        BooleanOp::Intersection => intersection(&a, &b),
    }
}
