//! Helpers around the exact scalar type.
//!
//! Every exact computation in the crate uses [`Rational`], an arbitrary
//! precision fraction that is always kept in lowest terms with a positive
//! denominator.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `numer / denom` as an exact rational. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Error produced when a number string is malformed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid number {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses an optionally signed integer, a fraction `p/q` with `q > 0`, or a
/// finite decimal such as `-0.125`. Decimals convert exactly.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: input.to_string(),
        reason,
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer = parse_signed_digits(p).ok_or_else(|| err("bad numerator"))?;
        if !q.bytes().all(|b| b.is_ascii_digit()) || q.is_empty() {
            return Err(err("denominator must be a positive integer"));
        }
        let denom: BigInt = q.parse().map_err(|_| err("bad denominator"))?;
        if denom.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad fractional part"));
        }
        let negative = whole.starts_with('-');
        let whole_int = parse_signed_digits(whole).ok_or_else(|| err("bad integer part"))?;
        let frac_int: BigInt = frac.parse().map_err(|_| err("bad fractional part"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = Rational::new(frac_int, scale);
        let whole_part = Rational::from_integer(whole_int);
        return Ok(if negative {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        });
    }
    parse_signed_digits(s)
        .map(Rational::from_integer)
        .ok_or_else(|| err("not a number"))
}

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -n } else { n })
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator and denominator both overflow f64; scale them down together.
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Decimal expansion of `r` rounded half away from zero to `places` digits.
pub fn to_decimal_string(r: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (r.abs() * Rational::from_integer(scale.clone())).round().to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if r.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>places$}")
    }
}

pub fn ceil_to_integer(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub(crate) fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}
