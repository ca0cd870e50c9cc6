use crate::error::{Error, Result};

/// Product of half-open intervals `[a_j, b_j) ⊆ [0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalBox {
    bounds: Vec<(f64, f64)>,
}

impl IntervalBox {
    pub fn new(bounds: Vec<(f64, f64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidArgument("box needs at least one dimension".into()));
        }
        for &(a, b) in &bounds {
            if !(0.0..1.0).contains(&a) || b <= a || b > 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "interval [{a}, {b}) is not a nonempty subinterval of [0, 1)"
                )));
            }
        }
        Ok(Self { bounds })
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn volume(&self) -> f64 {
        self.bounds.iter().map(|(a, b)| b - a).product()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    /// Whether the fractional parts of `point` fall inside the box.
    pub fn contains_mod_one(&self, point: &[f64]) -> bool {
        point
            .iter()
            .zip(&self.bounds)
            .all(|(x, (a, b))| {
                let f = x - x.floor();
                *a <= f && f < *b
            })
    }
}

/// Number of the first `n` points whose fractional parts lie in `bx`.
pub fn box_count(seq: &[Vec<f64>], bx: &IntervalBox, n: usize) -> Result<usize> {
    if n > seq.len() {
        return Err(Error::InvalidArgument(format!(
            "asked for {n} points but the sequence has {}",
            seq.len()
        )));
    }
    let mut count = 0;
    for p in &seq[..n] {
        if p.len() != bx.dimension() {
            return Err(Error::DimensionMismatch {
                expected: bx.dimension(),
                found: p.len(),
            });
        }
        if bx.contains_mod_one(p) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquidistributionReport {
    pub empirical: f64,
    pub target: f64,
    pub deviation: f64,
}

/// Compares the observed frequency `C(I, n) / n` with the volume of `I`.
pub fn equidistribution_test(
    seq: &[Vec<f64>],
    bx: &IntervalBox,
    n: usize,
) -> Result<EquidistributionReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    let empirical = box_count(seq, bx, n)? as f64 / n as f64;
    let target = bx.volume();
    Ok(EquidistributionReport {
        empirical,
        target,
        deviation: (empirical - target).abs(),
    })
}

/// Points `x_i = i * (α_1, ..., α_d)` for `i = 1..=n`.
pub fn weyl_sequence(alphas: &[f64], n: usize) -> Vec<Vec<f64>> {
    (1..=n)
        .map(|i| alphas.iter().map(|a| i as f64 * a).collect())
        .collect()
}
