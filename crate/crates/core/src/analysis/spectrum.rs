use nalgebra::{DMatrix, Schur};

use crate::error::{Error, Result};
use crate::linalg::AffineMatrix;
use crate::rational::to_f64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    /// `θ ∈ [0, 1)` with `λ = |λ| e^{2πiθ}`.
    pub angle: f64,
}

impl Eigenvalue {
    fn new(re: f64, im: f64) -> Self {
        let modulus = re.hypot(im);
        let mut angle = im.atan2(re) / std::f64::consts::TAU;
        if angle < 0.0 {
            angle += 1.0;
        }
        if angle >= 1.0 || modulus == 0.0 {
            angle = 0.0;
        }
        Self { re, im, modulus, angle }
    }
}

/// Eigenvalues of `m` (in `f64`), largest modulus first.
///
/// The all-ones row vector is a left eigenvector of every affine matrix, so
/// in the basis `(Σ x, x_1, ..., x_{k-1})` the matrix is block triangular
/// with blocks `1` and `M'_{ij} = M_{ij} - M_{i0}` (`i, j ≥ 1`). The
/// eigenvalue 1 is reported exactly and `M'` is formed in exact arithmetic
/// before the Schur iteration.
pub fn spectrum(m: &AffineMatrix) -> Result<Vec<Eigenvalue>> {
    let n = m.size();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut dense = DMatrix::<f64>::zeros(n - 1, n - 1);
    for j in 1..n {
        for i in 1..n {
            dense[(i - 1, j - 1)] = to_f64(&(m.get(i, j) - m.get(i, 0)));
        }
    }
    let mut out = vec![Eigenvalue::new(1.0, 0.0)];
    if n > 1 {
        let schur = Schur::try_new(dense, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Eigen("Schur iteration did not converge".into()))?;
        out.extend(schur.complex_eigenvalues().iter().map(|z| Eigenvalue::new(z.re, z.im)));
    }
    if out.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
        return Err(Error::Eigen("non-finite eigenvalue".into()));
    }
    out.sort_by(|a, b| {
        b.modulus
            .total_cmp(&a.modulus)
            .then(a.angle.total_cmp(&b.angle))
    });
    Ok(out)
}
