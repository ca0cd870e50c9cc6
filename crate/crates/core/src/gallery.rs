//! Concrete automata used throughout the tests, the guide and the CLI.

use std::collections::BTreeMap;

use crate::automaton::{Afa, Kind};
use crate::combinators::{self, BooleanOp};
use crate::composite::Composite;
use crate::error::{Error, Result};
use crate::linalg::{AffineMatrix, AffineVector};
use crate::projection::Projection;
use crate::rational::{int, ratio};
use crate::Rational;

/// Two-state probabilistic automaton with constant value `alpha`.
pub fn constant_pfa(alphabet: &[char], alpha: Rational) -> Result<Afa> {
    combinators::constant(alphabet, alpha)
}

/// Three-state counter for `|w|_a = |w|_b` over `{a, b}`.
///
/// After `w` the state is `(1, d, -d)` with `d = |w|_a - |w|_b`, so the
/// value is `1 / (1 + 2|d|)`: 1 on members, at most 1/3 otherwise.
pub fn eq_afa() -> Afa {
    eq_counter(&['a', 'b'], 'a', 'b')
}

/// [`eq_afa`] over a larger alphabet, counting `up` against `down`; every
/// other symbol leaves the counter untouched.
pub fn eq_counter(alphabet: &[char], up: char, down: char) -> Afa {
    let step = |d: i64| {
        AffineMatrix::new(vec![
            vec![int(1), int(0), int(0)],
            vec![int(d), int(1), int(0)],
            vec![int(-d), int(0), int(1)],
        ])
        .expect("counter columns sum to 1")
    };
    let transitions = alphabet
        .iter()
        .map(|&c| {
            let m = if c == up {
                step(1)
            } else if c == down {
                step(-1)
            } else {
                AffineMatrix::identity(3)
            };
            (c, m)
        })
        .collect();
    Afa::new(
        Kind::Affine,
        alphabet.to_vec(),
        AffineVector::basis(3, 0),
        transitions,
        Projection::new(3, [0]).expect("state 0 exists"),
    )
    .expect("counter automaton is valid")
}

/// Amplification rounds applied to each counter in [`eq3`]: the counters
/// err by 1/3 and one round only reaches 7/27.
pub const EQ3_ROUNDS: u32 = 2;

/// Bounded-error recognizer of `{w ∈ {a,b,c}* : |w|_a = |w|_b = |w|_c}`.
///
/// Intersection of the `a`/`b` and `a`/`c` counters, each amplified twice.
/// Members score 1; non-members at most 3283/19683. The explicit automaton
/// has `3^18` states, so it is returned unevaluated.
pub fn eq3() -> Composite {
    eq3_with_rounds(EQ3_ROUNDS)
}

/// [`eq3`] with a chosen number of amplification rounds per counter.
pub fn eq3_with_rounds(rounds: u32) -> Composite {
    let abc = ['a', 'b', 'c'];
    let ab = Composite::leaf(eq_counter(&abc, 'a', 'b')).amplify_rounds(rounds);
    let ac = Composite::leaf(eq_counter(&abc, 'a', 'c')).amplify_rounds(rounds);
    ab.intersection(ac).expect("same alphabet")
}

/// The two counters of [`eq3`] after amplification, i.e. the inputs of the
/// intersection.
pub fn eq3_components() -> (Composite, Composite) {
    let abc = ['a', 'b', 'c'];
    (
        Composite::leaf(eq_counter(&abc, 'a', 'b')).amplify_rounds(EQ3_ROUNDS),
        Composite::leaf(eq_counter(&abc, 'a', 'c')).amplify_rounds(EQ3_ROUNDS),
    )
}

/// [`eq3`] assembled via [`Composite::boolean_with_amplify`] from the
/// declared counter error 1/3.
pub fn eq3_from_error_bound() -> Result<Composite> {
    let abc = ['a', 'b', 'c'];
    Composite::leaf(eq_counter(&abc, 'a', 'b')).boolean_with_amplify(
        Composite::leaf(eq_counter(&abc, 'a', 'c')),
        BooleanOp::Intersection,
        &ratio(1, 3),
    )
}

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Vec<char>,
    pub states: usize,
    pub start: usize,
    pub accepting: Vec<usize>,
    pub delta: BTreeMap<(usize, char), usize>,
}

impl Dfa {
    /// Words over `{a, b}` with an even number of `a`.
    pub fn even_a() -> Dfa {
        Dfa {
            alphabet: vec!['a', 'b'],
            states: 2,
            start: 0,
            accepting: vec![0],
            delta: [((0, 'a'), 1), ((1, 'a'), 0), ((0, 'b'), 0), ((1, 'b'), 1)].into(),
        }
    }
}

/// The deterministic automaton as a 0/1 stochastic automaton; its value is
/// 1 on accepted words and 0 elsewhere.
pub fn dfa_embed(dfa: &Dfa) -> Result<Afa> {
    let n = dfa.states;
    if dfa.start >= n {
        return Err(Error::StateOutOfRange { index: dfa.start, size: n });
    }
    let transitions = dfa
        .alphabet
        .iter()
        .map(|&c| {
            let columns = (0..n)
                .map(|j| {
                    let target = *dfa
                        .delta
                        .get(&(j, c))
                        .ok_or(Error::IncompleteDfa { state: j, symbol: c })?;
                    if target >= n {
                        return Err(Error::StateOutOfRange { index: target, size: n });
                    }
                    Ok(vec![(target, int(1))])
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((c, AffineMatrix::from_sparse_columns(n, columns)))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Afa::new(
        Kind::Stochastic,
        dfa.alphabet.clone(),
        AffineVector::basis(n, dfa.start),
        transitions,
        Projection::new(n, dfa.accepting.iter().copied())?,
    )
}

/// Gallery names exported by the command-line tool.
pub const NAMES: [&str; 4] = ["constant", "eq", "eq3", "dfa-parity"];
