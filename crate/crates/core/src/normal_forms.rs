//! Equivalent automata with a restricted shape.
//!
//! [`canonical_initial`] moves the initial state to `e_0 = (1, 0, ..., 0)`.
//! [`bounded_form`] then rescales a cutpoint-1/2 automaton so that every
//! entry of every reachable state stays inside `[-1, 1]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automaton::Afa;
use crate::combinators::shift_cutpoint;
use crate::error::{Error, Result};
use crate::linalg::{AffineMatrix, AffineVector};
use crate::projection::Projection;
use crate::rational::{ceil_to_integer, ratio};
use crate::Rational;

/// Equivalent automaton with one extra state, index 0, as initial state.
///
/// Reading `x` from the new state jumps to `(0; A_x v_0)`; the original
/// states keep their matrices. Values agree on every non-empty word. On the
/// empty word the run stays at `e_0`, so the value is 0 or 1: state 0 is
/// accepting exactly when the original value on the empty word exceeds 1/2,
/// which preserves that value when it is 0 or 1 and cutpoint-1/2 membership
/// otherwise. No automaton with initial state `e_0` can do better.
pub fn canonical_initial(a: &Afa) -> Result<Afa> {
    let k = a.state_count();
    let v0 = a.initial();
    let transitions = a
        .alphabet()
        .iter()
        .map(|&c| {
            let m = a.transition(c)?;
            let mut columns = Vec::with_capacity(k + 1);
            let jump = m.apply(v0)?;
            columns.push(
                jump.entries()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (i + 1, x.clone()))
                    .collect(),
            );
            for j in 0..k {
                columns.push(m.column(j).iter().map(|(i, x)| (i + 1, x.clone())).collect());
            }
            Ok((c, AffineMatrix::from_sparse_columns(k + 1, columns)))
        })
        .collect::<Result<_>>()?;

    let mut accepting = a.accepting().embed(k + 1, 1);
    if a.accept_value("")? > ratio(1, 2) {
        accepting = Projection::new(1 + k, std::iter::once(0).chain(accepting.accepting().iter().copied()))?;
    }
    Afa::new(
        a.kind(),
        a.alphabet().to_vec(),
        AffineVector::basis(k + 1, 0),
        transitions,
        accepting,
    )
}

/// Largest absolute value among all transition-matrix entries (the initial
/// vector is not included).
pub fn max_entry(a: &Afa) -> Rational {
    a.transitions()
        .values()
        .map(AffineMatrix::max_abs_entry)
        .max()
        .unwrap_or_else(Rational::zero)
}

/// The integer scale `c = max(2, ⌈max_entry⌉)` used by [`bounded_form`].
pub fn entry_ceiling(a: &Afa) -> BigInt {
    ceil_to_integer(&max_entry(a)).max(BigInt::from(2))
}

/// Cutpoint-1/2 equivalent whose reachable states have entries in `[-1, 1]`.
///
/// `a` must start in `e_0`. With `k` states and `c` = [`entry_ceiling`],
/// each matrix becomes
///
/// ```text
///            ( 2 A_x              0    0   )
/// 1/(2kc) *  ( kc-1 ... kc-1     2kc   0   )
///            ( kc-1 ... kc-1      0   2kc  )
/// ```
///
/// and state `k` joins the accepting set. After `n` symbols the state is
/// `(A_w v_0; ((kc)^n - 1)/2; ((kc)^n - 1)/2) / (kc)^n`, so the value moves
/// towards 1/2 without crossing it.
pub fn bounded_form(a: &Afa) -> Result<Afa> {
    let k = a.state_count();
    if *a.initial() != AffineVector::basis(k, 0) {
        return Err(Error::NonCanonicalInitial);
    }
    let kc = Rational::from_integer(entry_ceiling(a) * BigInt::from(k));
    let shrink = kc.recip();
    let spill = (&kc - Rational::one()) / (&kc * Rational::from_integer(2.into()));
    let transitions = a
        .alphabet()
        .iter()
        .map(|&c| {
            let m = a.transition(c)?;
            let mut columns: Vec<Vec<(usize, Rational)>> = (0..k)
                .map(|j| {
                    let mut col: Vec<_> = m.column(j).iter().map(|(i, x)| (*i, x * &shrink)).collect();
                    col.push((k, spill.clone()));
                    col.push((k + 1, spill.clone()));
                    col
                })
                .collect();
            columns.push(vec![(k, Rational::one())]);
            columns.push(vec![(k + 1, Rational::one())]);
            Ok((c, AffineMatrix::from_sparse_columns(k + 2, columns)))
        })
        .collect::<Result<_>>()?;
    let accepting = Projection::new(
        k + 2,
        a.accepting().accepting().iter().copied().chain(std::iter::once(k)),
    )?;
    Afa::new(
        a.kind(),
        a.alphabet().to_vec(),
        AffineVector::basis(k + 2, 0),
        transitions,
        accepting,
    )
}

/// Shift the cutpoint `lambda` to 1/2, move to the canonical initial state,
/// then bound the entries. The result recognizes the same cutpoint language
/// at 1/2.
pub fn normalize_pipeline(a: &Afa, lambda: &Rational) -> Result<Afa> {
    let shifted = shift_cutpoint(a, lambda, &ratio(1, 2))?;
    bounded_form(&canonical_initial(&shifted)?)
}
