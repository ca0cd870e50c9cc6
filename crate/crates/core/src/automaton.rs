//! The automaton model and its acceptance value.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{AffineMatrix, AffineVector};
use crate::projection::Projection;
use crate::rational::is_unit_interval;
use crate::Rational;

/// Whether an automaton is a general affine automaton or a probabilistic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Affine,
    Stochastic,
}

impl Kind {
    /// Kind of an automaton assembled from parts of kinds `self` and `other`.
    pub fn join(self, other: Kind) -> Kind {
        if self == Kind::Stochastic && other == Kind::Stochastic {
            Kind::Stochastic
        } else {
            Kind::Affine
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Affine => "affine",
            Kind::Stochastic => "stochastic",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A broken invariant found by [`Afa::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoStates,
    DuplicateSymbol(char),
    InitialSum(Rational),
    MissingTransition(char),
    ExtraTransition(char),
    MatrixSize { symbol: char, expected: usize, found: usize },
    ColumnSum { symbol: char, column: usize, sum: Rational },
    ProjectionSize { expected: usize, found: usize },
    InitialEntryOutsideUnit { index: usize, value: Rational },
    EntryOutsideUnit { symbol: char, row: usize, column: usize, value: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "automaton has no states"),
            Violation::DuplicateSymbol(c) => write!(f, "symbol '{c}' listed twice in the alphabet"),
            Violation::InitialSum(s) => write!(f, "initial sums to {s}"),
            Violation::MissingTransition(c) => write!(f, "no transition matrix for symbol '{c}'"),
            Violation::ExtraTransition(c) => {
                write!(f, "transition matrix for '{c}' which is not in the alphabet")
            }
            Violation::MatrixSize { symbol, expected, found } => write!(
                f,
                "matrix for '{symbol}' is {found}x{found}, expected {expected}x{expected}"
            ),
            Violation::ColumnSum { symbol, column, sum } => {
                write!(f, "matrix for '{symbol}': column {column} sums to {sum}")
            }
            Violation::ProjectionSize { expected, found } => {
                write!(f, "accepting set is over {found} states, expected {expected}")
            }
            Violation::InitialEntryOutsideUnit { index, value } => {
                write!(f, "stochastic initial entry {index} is {value}, outside [0,1]")
            }
            Violation::EntryOutsideUnit { symbol, row, column, value } => write!(
                f,
                "stochastic matrix for '{symbol}': entry [{row}][{column}] is {value}, outside [0,1]"
            ),
        }
    }
}

/// Anything that assigns an acceptance value in `[0, 1]` to words.
pub trait AcceptanceFunction {
    fn alphabet(&self) -> &[char];

    fn accept_value(&self, word: &str) -> Result<Rational>;

    /// Cutpoint membership: strictly above `lambda`.
    fn member_at(&self, word: &str, lambda: &Rational) -> Result<bool> {
        Ok(self.accept_value(word)? > *lambda)
    }
}

/// An affine finite automaton: alphabet, initial affine state, one affine
/// matrix per symbol and a set of accepting states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Afa {
    kind: Kind,
    alphabet: Vec<char>,
    initial: AffineVector,
    transitions: BTreeMap<char, AffineMatrix>,
    accepting: Projection,
}

impl Afa {
    /// Assembles an automaton and checks every invariant.
    pub fn new(
        kind: Kind,
        alphabet: Vec<char>,
        initial: AffineVector,
        transitions: BTreeMap<char, AffineMatrix>,
        accepting: Projection,
    ) -> Result<Self> {
        let afa = Self::new_unchecked(kind, alphabet, initial, transitions, accepting);
        let violations = afa.validate();
        if violations.is_empty() {
            Ok(afa)
        } else {
            Err(Error::InvalidAutomaton(violations))
        }
    }

    /// Assembles an automaton without checks; see [`Afa::validate`].
    pub fn new_unchecked(
        kind: Kind,
        alphabet: Vec<char>,
        initial: AffineVector,
        transitions: BTreeMap<char, AffineMatrix>,
        accepting: Projection,
    ) -> Self {
        Self {
            kind,
            alphabet,
            initial,
            transitions,
            accepting,
        }
    }

    /// Convenience constructor from row-major integer-or-rational grids,
    /// one per symbol in alphabet order.
    pub fn from_rows(
        kind: Kind,
        alphabet: &[char],
        initial: Vec<Rational>,
        matrices: Vec<Vec<Vec<Rational>>>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if matrices.len() != alphabet.len() {
            return Err(Error::DimensionMismatch {
                expected: alphabet.len(),
                found: matrices.len(),
            });
        }
        let k = initial.len();
        let transitions = alphabet
            .iter()
            .zip(matrices)
            .map(|(&c, rows)| Ok((c, AffineMatrix::new_unchecked(rows)?)))
            .collect::<Result<_>>()?;
        Self::new(
            kind,
            alphabet.to_vec(),
            AffineVector::new_unchecked(initial),
            transitions,
            Projection::new(k, accepting)?,
        )
    }

    /// Every invariant violation, empty when the automaton is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.initial.len();
        if k == 0 {
            out.push(Violation::NoStates);
        }
        let mut seen = std::collections::BTreeSet::new();
        for &c in &self.alphabet {
            if !seen.insert(c) {
                out.push(Violation::DuplicateSymbol(c));
            }
        }
        let sum = self.initial.sum();
        if k > 0 && !sum.is_one() {
            out.push(Violation::InitialSum(sum));
        }
        if self.accepting.size() != k {
            out.push(Violation::ProjectionSize {
                expected: k,
                found: self.accepting.size(),
            });
        }
        for &c in &seen {
            if !self.transitions.contains_key(&c) {
                out.push(Violation::MissingTransition(c));
            }
        }
        for (&symbol, m) in &self.transitions {
            if !seen.contains(&symbol) {
                out.push(Violation::ExtraTransition(symbol));
            }
            if m.size() != k {
                out.push(Violation::MatrixSize {
                    symbol,
                    expected: k,
                    found: m.size(),
                });
                continue;
            }
            for (column, sum) in m.bad_columns() {
                out.push(Violation::ColumnSum { symbol, column, sum });
            }
        }
        if self.kind == Kind::Stochastic {
            for (index, value) in self.initial.entries().iter().enumerate() {
                if !is_unit_interval(value) {
                    out.push(Violation::InitialEntryOutsideUnit {
                        index,
                        value: value.clone(),
                    });
                }
            }
            for (&symbol, m) in &self.transitions {
                for (row, column, value) in m.entries() {
                    if !is_unit_interval(value) {
                        out.push(Violation::EntryOutsideUnit {
                            symbol,
                            row,
                            column,
                            value: value.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &AffineVector {
        &self.initial
    }

    pub fn transitions(&self) -> &BTreeMap<char, AffineMatrix> {
        &self.transitions
    }

    pub fn transition(&self, symbol: char) -> Result<&AffineMatrix> {
        self.transitions
            .get(&symbol)
            .ok_or(Error::UnknownSymbol(symbol))
    }

    pub fn accepting(&self) -> &Projection {
        &self.accepting
    }

    /// The same automaton with different accepting states.
    pub fn with_accepting(&self, accepting: Projection) -> Result<Afa> {
        if accepting.size() != self.state_count() {
            return Err(Error::DimensionMismatch {
                expected: self.state_count(),
                found: accepting.size(),
            });
        }
        Ok(Afa {
            accepting,
            ..self.clone()
        })
    }

    /// Final state after reading `word` left to right.
    pub fn run(&self, word: &str) -> Result<AffineVector> {
        self.run_from(self.initial.clone(), word)
    }

    /// Continues a run from `state`.
    pub fn run_from(&self, state: AffineVector, word: &str) -> Result<AffineVector> {
        let mut v = state.into_entries();
        for c in word.chars() {
            v = self.transition(c)?.apply_raw(&v);
        }
        Ok(AffineVector::new_unchecked(v))
    }

    /// `M_w = M_{w_n} ... M_{w_1}`, materialized. [`Afa::run`] never needs it.
    pub fn word_matrix(&self, word: &str) -> Result<AffineMatrix> {
        let mut acc = AffineMatrix::identity(self.state_count());
        for c in word.chars() {
            acc = self.transition(c)?.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Acceptance value of a state vector: `|P v| / |v|`.
    pub fn value_of_state(&self, v: &AffineVector) -> Rational {
        let total = v.l1_norm();
        if total.is_zero() {
            // Only reachable for vectors that are not affine.
            return Rational::zero();
        }
        self.accepting.projected_norm(v) / total
    }

    pub fn accept_value(&self, word: &str) -> Result<Rational> {
        Ok(self.value_of_state(&self.run(word)?))
    }

    /// Membership in the cutpoint language of `spec` (strict inequality).
    pub fn member(&self, word: &str, spec: &CutpointSpec) -> Result<bool> {
        Ok(self.accept_value(word)? > spec.lambda)
    }

    /// Calls `visit(word, state)` for every word of length at most
    /// `max_len`, shortlex order, sharing work between common prefixes.
    pub fn visit_words<F>(&self, max_len: usize, mut visit: F)
    where
        F: FnMut(&str, &AffineVector),
    {
        let mut layer = vec![(String::new(), self.initial.clone())];
        for len in 0..=max_len {
            for (w, v) in &layer {
                visit(w, v);
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::with_capacity(layer.len() * self.alphabet.len());
            for (w, v) in &layer {
                for &c in &self.alphabet {
                    let m = &self.transitions[&c];
                    let mut w2 = w.clone();
                    w2.push(c);
                    next.push((w2, AffineVector::new_unchecked(m.apply_raw(v.entries()))));
                }
            }
            layer = next;
        }
    }

    /// Acceptance values of every word of length at most `max_len`.
    pub fn values_up_to(&self, max_len: usize) -> Vec<(String, Rational)> {
        let mut out = Vec::new();
        self.visit_words(max_len, |w, v| out.push((w.to_string(), self.value_of_state(v))));
        out
    }
}

impl AcceptanceFunction for Afa {
    fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    fn accept_value(&self, word: &str) -> Result<Rational> {
        Afa::accept_value(self, word)
    }
}

/// A cutpoint with optional isolation radius and error bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutpointSpec {
    pub lambda: Rational,
    pub isolation: Option<Rational>,
    pub error_bound: Option<Rational>,
}

impl CutpointSpec {
    pub fn new(lambda: Rational) -> Result<Self> {
        if !is_unit_interval(&lambda) {
            return Err(Error::OutOfRange {
                what: "cutpoint",
                value: Box::new(lambda),
                range: "[0,1]",
            });
        }
        Ok(Self {
            lambda,
            isolation: None,
            error_bound: None,
        })
    }

    /// Adds an isolation radius `delta > 0` with `[λ-δ, λ+δ] ⊆ [0,1]`.
    pub fn isolated(mut self, delta: Rational) -> Result<Self> {
        let lo = &self.lambda - &delta;
        let hi = &self.lambda + &delta;
        if !delta.is_positive() || lo.is_negative() || hi > Rational::one() {
            return Err(Error::OutOfRange {
                what: "isolation",
                value: Box::new(delta),
                range: "(0, min(λ, 1-λ)]",
            });
        }
        self.isolation = Some(delta);
        Ok(self)
    }

    /// Adds a bounded-error guarantee `ε ∈ [0, 1/2)`.
    pub fn with_error_bound(mut self, eps: Rational) -> Result<Self> {
        if eps.is_negative() || eps >= Rational::new(1.into(), 2.into()) {
            return Err(Error::OutOfRange {
                what: "error bound",
                value: Box::new(eps),
                range: "[0, 1/2)",
            });
        }
        self.error_bound = Some(eps);
        Ok(self)
    }
}

/// All words over `alphabet` of length at most `max_len`, shortlex order.
pub fn words_up_to(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for &c in alphabet {
                let mut w = out[i].clone();
                w.push(c);
                out.push(w);
            }
        }
        start = end;
    }
    out
}
