//! Scalar types: exact big rationals and IEEE doubles behind one trait.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::error::NumError;
use super::poly::UniPoly;
use super::roots::{companion_all_roots, sturm_real_roots, RootSet};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Absolute refinement tolerance used when isolating real roots exactly.
pub const STURM_TOL: f64 = 1e-12;

/// Arithmetic mode of a scalar or polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Exact rational arithmetic.
    Exact,
    /// Double-precision floating point.
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "rational",
            Mode::Float => "float",
        })
    }
}

/// Coefficient field shared by every generic routine in the crate.
///
/// Implemented for [`Rational`] and `f64`; the two implementations differ only in
/// how real roots of a polynomial are located.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Mode tag of this coefficient type.
    const MODE: Mode;

    /// Converts a machine integer.
    fn from_i64(v: i64) -> Self;

    /// Converts `n / d`; `d` must be nonzero.
    fn from_ratio(n: i64, d: i64) -> Self;

    /// Converts an exact rational (rounding in float mode).
    fn from_rational(r: &Rational) -> Self;

    /// Nearest double.
    fn to_f64(&self) -> f64;

    /// Tagged copy of the value.
    fn to_scalar(&self) -> Scalar;

    /// The exact value, in rational mode only.
    fn to_rational(&self) -> Option<Rational>;

    /// All real roots of `p` with the method appropriate for this mode.
    fn find_roots(p: &UniPoly<Self>) -> Result<RootSet, NumError>;
}

impl Coeff for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn find_roots(p: &UniPoly<Self>) -> Result<RootSet, NumError> {
        sturm_real_roots(p, STURM_TOL)
    }
}

impl Coeff for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn find_roots(p: &UniPoly<Self>) -> Result<RootSet, NumError> {
        companion_all_roots(p)
    }
}

/// Nearest double to a rational; saturates to ±∞ outside the double range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    match ToPrimitive::to_f64(r) {
        Some(v) => v,
        None if r.is_negative() => f64::NEG_INFINITY,
        None => f64::INFINITY,
    }
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(v: f64) -> Result<Rational, NumError> {
    Rational::from_float(v).ok_or(NumError::NonFinite)
}

/// Parses `"-3"`, `"0.25"`, `"1/2"`, `"1e-3"` or `"-2.5E+2"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, NumError> {
    let bad = || NumError::Parse(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_rational(num)?;
        let d = parse_rational(den)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let well_formed = !(int_part.is_empty() && frac_part.is_empty())
        && int_part.bytes().all(|b| b.is_ascii_digit())
        && frac_part.bytes().all(|b| b.is_ascii_digit());
    if !well_formed || exponent.unsigned_abs() > 4000 {
        return Err(bad());
    }
    let mut all: String = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(if negative { -value } else { value })
}

/// A scalar tagged with its arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    /// Exact rational value.
    Exact(Rational),
    /// Floating-point value.
    Float(f64),
}

impl Scalar {
    /// Mode of the stored value.
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    /// Nearest double.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    /// Exact value, if this scalar is rational.
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(v) => write!(f, "{v:e}"),
        }
    }
}

/// Absolute value helper usable in both modes.
pub fn abs<T: Coeff>(x: &T) -> T {
    if x.to_f64() < 0.0 {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Exact sign of a rational: -1, 0 or 1.
pub(super) fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rationals_are_normalized() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn parses_all_literal_shapes() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-12").unwrap(), q(-12, 1));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("-2.5E+2").unwrap(), q(-250, 1));
        assert_eq!(parse_rational(".25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("3/-6").unwrap(), q(-1, 2));
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "1e", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn float_round_trip_is_exact() {
        let r = rational_from_f64(0.1).unwrap();
        assert_eq!(rational_to_f64(&r), 0.1);
        assert!(rational_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn scalar_modes() {
        assert_eq!(Scalar::Exact(q(1, 3)).mode(), Mode::Exact);
        assert_eq!(Scalar::Float(0.5).to_f64(), 0.5);
        assert_eq!(Scalar::Exact(q(1, 4)).to_f64(), 0.25);
    }
}
