use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Smallest-denominator fraction `p/q` with `|θ - p/q| ≤ tol`, provided
/// `q ≤ max_denominator`.
///
/// Works on the exact binary values of `theta` and `tol` and walks the
/// continued-fraction expansion of the interval `[θ - tol, θ + tol]`.
pub fn rational_angle_detect(theta: f64, max_denominator: u64, tol: f64) -> Option<(u64, u64)> {
    if !theta.is_finite() || !tol.is_finite() || tol < 0.0 || max_denominator == 0 {
        return None;
    }
    let theta = Rational::from_float(theta)?;
    let tol = Rational::from_float(tol)?;
    let lo = (&theta - &tol).max(Rational::zero());
    let hi = &theta + &tol;
    if hi.is_negative() {
        return None;
    }
    let (p, q) = simplest_between(lo, hi);
    let q = q.to_u64()?;
    (q <= max_denominator).then_some((p.to_u64()?, q))
}

/// Simplest rational in `[lo, hi]` for `0 ≤ lo ≤ hi`.
fn simplest_between(lo: Rational, hi: Rational) -> (BigInt, BigInt) {
    let floor = lo.floor();
    if floor == lo {
        return (floor.to_integer(), BigInt::one());
    }
    let next = &floor + Rational::one();
    if next <= hi {
        return (next.to_integer(), BigInt::one());
    }
    // lo and hi share the integer part; recurse on the reciprocal of the rest
    let (p, q) = simplest_between((&hi - &floor).recip(), (&lo - &floor).recip());
    (floor.to_integer() * &p + q, p)
}
