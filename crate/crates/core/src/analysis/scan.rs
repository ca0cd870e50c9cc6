use std::io::Write;

use crate::automaton::Afa;
use crate::error::{Error, Result};
use crate::linalg::AffineMatrix;
use crate::rational::to_f64;
use crate::Rational;

/// Default number of steps computed exactly before falling back to floats.
pub const DEFAULT_EXACT_BUDGET: u64 = 2_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanPoint {
    pub n: u64,
    /// `F(n)` from the renormalized floating-point run.
    pub value: f64,
    pub exact: Option<Rational>,
}

/// Acceptance values `F(n) = f(a^n)` of a one-letter automaton.
#[derive(Clone, Debug, PartialEq)]
pub struct UnaryScan {
    pub points: Vec<ScanPoint>,
}

impl UnaryScan {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    /// Writes `n,F_float,F_exact_num,F_exact_den`, leaving the exact
    /// columns empty where no exact value was computed.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "F_float", "F_exact_num", "F_exact_den"])?;
        for p in &self.points {
            let (num, den) = match &p.exact {
                Some(r) => (r.numer().to_string(), r.denom().to_string()),
                None => (String::new(), String::new()),
            };
            w.write_record([p.n.to_string(), format!("{:.17}", p.value), num, den])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub exact: bool,
    /// Exact values are only produced for `n` up to this bound.
    pub exact_budget: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            exact: false,
            exact_budget: DEFAULT_EXACT_BUDGET,
        }
    }
}

/// `F(h + iQ)` for `i = 0..count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProgressionSpec {
    pub h: u64,
    pub q: u64,
    pub count: u64,
}

impl ProgressionSpec {
    pub fn new(h: u64, q: u64, count: u64) -> Result<Self> {
        if q == 0 || count == 0 {
            return Err(Error::InvalidArgument(
                "progression needs Q >= 1 and count >= 1".into(),
            ));
        }
        Ok(Self { h, q, count })
    }
}

/// Steps the single matrix of a unary automaton, in floats with L1
/// renormalization and optionally in exact arithmetic.
struct Stepper<'a> {
    afa: &'a Afa,
    matrix: &'a AffineMatrix,
    float_cols: Vec<Vec<(usize, f64)>>,
    float_state: Vec<f64>,
    exact_state: Option<Vec<Rational>>,
    budget: u64,
    n: u64,
}

impl<'a> Stepper<'a> {
    fn new(afa: &'a Afa, options: &ScanOptions) -> Result<Self> {
        if afa.alphabet().len() != 1 {
            return Err(Error::NonUnary(afa.alphabet().len()));
        }
        let matrix = afa.transition(afa.alphabet()[0])?;
        let float_cols = (0..matrix.size())
            .map(|j| matrix.column(j).iter().map(|(i, x)| (*i, to_f64(x))).collect())
            .collect();
        let float_state = afa.initial().entries().iter().map(to_f64).collect();
        let exact_state = options.exact.then(|| afa.initial().entries().to_vec());
        Ok(Self {
            afa,
            matrix,
            float_cols,
            float_state,
            exact_state,
            budget: options.exact_budget,
            n: 0,
        })
    }

    fn step(&mut self) {
        let mut next = vec![0.0; self.float_state.len()];
        for (x, col) in self.float_state.iter().zip(&self.float_cols) {
            for (i, m) in col {
                next[*i] += m * x;
            }
        }
        // F is invariant under positive rescaling of the state
        let norm: f64 = next.iter().map(|x| x.abs()).sum();
        if norm > 0.0 && norm.is_finite() {
            next.iter_mut().for_each(|x| *x /= norm);
        }
        self.float_state = next;
        self.n += 1;
        if self.n > self.budget {
            self.exact_state = None;
        }
        if let Some(v) = &self.exact_state {
            self.exact_state = Some(self.matrix.apply_raw(v));
        }
    }

    fn advance(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    fn point(&self) -> ScanPoint {
        let accepting = self.afa.accepting();
        let total: f64 = self.float_state.iter().map(|x| x.abs()).sum();
        let value = accepting
            .accepting()
            .iter()
            .map(|&i| self.float_state[i].abs())
            .sum::<f64>()
            / total;
        let exact = self.exact_state.as_ref().map(|v| {
            let total = v.iter().fold(Rational::from_integer(0.into()), |acc, x| acc + num_traits::abs(x.clone()));
            accepting.projected_norm_raw(v) / total
        });
        ScanPoint {
            n: self.n,
            value,
            exact,
        }
    }
}

pub fn unary_scan(a: &Afa, max_n: u64, exact: bool) -> Result<UnaryScan> {
    unary_scan_with(
        a,
        max_n,
        &ScanOptions {
            exact,
            ..ScanOptions::default()
        },
    )
}

/// `F(0), ..., F(max_n)`.
pub fn unary_scan_with(a: &Afa, max_n: u64, options: &ScanOptions) -> Result<UnaryScan> {
    let mut s = Stepper::new(a, options)?;
    let mut points = Vec::with_capacity(max_n as usize + 1);
    points.push(s.point());
    for _ in 0..max_n {
        s.step();
        points.push(s.point());
    }
    Ok(UnaryScan { points })
}

/// `F(h), F(h + Q), ..., F(h + (count - 1) Q)`.
pub fn progression_scan(a: &Afa, spec: &ProgressionSpec, options: &ScanOptions) -> Result<UnaryScan> {
    let mut s = Stepper::new(a, options)?;
    s.advance(spec.h);
    let mut points = vec![s.point()];
    for _ in 1..spec.count {
        s.advance(spec.q);
        points.push(s.point());
    }
    Ok(UnaryScan { points })
}
