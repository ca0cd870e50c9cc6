use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub n: u64,
    /// Members `a^k` with `k ≤ n`.
    pub members: u64,
    /// `members / (n + 1)`.
    pub ratio_at_n: f64,
    /// Smallest running ratio over `0..=n`, a finite stand-in for the lim inf.
    pub running_min: f64,
}

/// Lower-density estimate of the unary language `{a^k : member(k)}` up to `n`.
pub fn lower_density(member: impl Fn(u64) -> bool, n: u64) -> DensityReport {
    let mut count = 0u64;
    let mut running_min = f64::INFINITY;
    for k in 0..=n {
        if member(k) {
            count += 1;
        }
        running_min = running_min.min(count as f64 / (k + 1) as f64);
    }
    DensityReport {
        n,
        members: count,
        ratio_at_n: count as f64 / (n + 1) as f64,
        running_min,
    }
}

/// `is_prime[k]` for `k ≤ limit`, by the sieve of Eratosthenes.
pub fn prime_sieve(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut p = 2;
    while p * p <= limit {
        if is_prime[p] {
            for m in (p * p..=limit).step_by(p) {
                is_prime[m] = false;
            }
        }
        p += 1;
    }
    is_prime
}

/// Integer polynomial with nonnegative coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<u64>,
}

impl Polynomial {
    /// Requires degree at least 3.
    pub fn new(coeffs: Vec<u64>) -> Result<Self> {
        let degree = coeffs.iter().rposition(|&c| c != 0);
        match degree {
            Some(d) if d >= 3 => Ok(Self {
                coeffs: coeffs[..=d].to_vec(),
            }),
            _ => Err(Error::InvalidArgument(format!(
                "polynomial {coeffs:?} must have degree at least 3"
            ))),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `q(x)`, or `None` on overflow.
    pub fn eval(&self, x: u64) -> Option<u64> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0u64, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }
}

/// Membership table of `{q(n) : n ∈ ℕ}` on `0..=limit`.
pub fn poly_members(q: &Polynomial, limit: usize) -> Vec<bool> {
    let mut table = vec![false; limit + 1];
    for x in 0.. {
        match q.eval(x) {
            Some(v) if v <= limit as u64 => table[v as usize] = true,
            _ => break,
        }
    }
    table
}
