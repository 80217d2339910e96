//! Dense univariate polynomials over a [`Coeff`] field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::error::NumError;
use super::scalar::{Coeff, Mode, Rational, Scalar};

/// Name of the spectral variable a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Var {
    /// The separation constant of the hyperbolic families.
    Lambda,
    /// The spectral parameter of the Coulomb and oscillator families.
    Epsilon,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Lambda => "lambda",
            Var::Epsilon => "epsilon",
        })
    }
}

/// Polynomial `Σ coeffs[k]·v^k`, trimmed so the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
    var: Var,
}

impl<T: Coeff> UniPoly<T> {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(coeffs: Vec<T>, var: Var) -> Self {
        let mut p = Self { coeffs, var };
        p.trim();
        p
    }

    /// The zero polynomial.
    pub fn zero(var: Var) -> Self {
        Self { coeffs: Vec::new(), var }
    }

    /// A constant polynomial.
    pub fn constant(c: T, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// `c0 + c1·v`.
    pub fn linear(c0: T, c1: T, var: Var) -> Self {
        Self::new(vec![c0, c1], var)
    }

    /// The monomial `v`.
    pub fn x(var: Var) -> Self {
        Self::linear(T::zero(), T::one(), var)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `v^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Variable tag.
    pub fn var(&self) -> Var {
        self.var
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a double, coefficients rounded first.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(), self.var)
    }

    /// Rescales to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => {
                let inv = T::one() / lead.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_i64(k as i64))
            .collect();
        Self::new(coeffs, self.var)
    }

    fn check_var(&self, other: &Self) -> Result<(), NumError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(NumError::VarMismatch { left: self.var, right: other.var })
        }
    }

    /// Sum, rejecting mismatched variables.
    pub fn try_add(&self, other: &Self) -> Result<Self, NumError> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Ok(Self::new(coeffs, self.var))
    }

    /// Difference, rejecting mismatched variables.
    pub fn try_sub(&self, other: &Self) -> Result<Self, NumError> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Ok(Self::new(coeffs, self.var))
    }

    /// Product, rejecting mismatched variables.
    pub fn try_mul(&self, other: &Self) -> Result<Self, NumError> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, b) in other.coeffs.iter().enumerate() {
                out[i + k] = out[i + k].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self::new(out, self.var))
    }

    /// Euclidean division `self = quot·d + rem` with `deg rem < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), NumError> {
        self.check_var(d)?;
        let dd = d.degree().ok_or(NumError::DivisionByZero)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(self.var), Self::zero(self.var)));
        };
        if n < dd {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let mut quot = vec![T::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * dc.clone();
            }
            rem[k + dd] = T::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, self.var), Self::new(rem, self.var)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self, NumError> {
        self.check_var(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Applies `f` to every coefficient, producing a polynomial over another field.
    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), self.var)
    }

    /// Coefficients rounded to doubles.
    pub fn to_float(&self) -> UniPoly<f64> {
        self.map(|c| c.to_f64())
    }
}

impl<T: Coeff> Add for &UniPoly<T> {
    type Output = UniPoly<T>;

    /// # Panics
    /// Panics if the operands use different variables; use [`UniPoly::try_add`] to recover.
    fn add(self, rhs: Self) -> UniPoly<T> {
        self.try_add(rhs).expect("polynomial variables must agree")
    }
}

impl<T: Coeff> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;

    /// # Panics
    /// Panics if the operands use different variables; use [`UniPoly::try_sub`] to recover.
    fn sub(self, rhs: Self) -> UniPoly<T> {
        self.try_sub(rhs).expect("polynomial variables must agree")
    }
}

impl<T: Coeff> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;

    /// # Panics
    /// Panics if the operands use different variables; use [`UniPoly::try_mul`] to recover.
    fn mul(self, rhs: Self) -> UniPoly<T> {
        self.try_mul(rhs).expect("polynomial variables must agree")
    }
}

impl<T: Coeff> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.var)
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

/// A polynomial whose coefficient mode is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly {
    /// Exact rational coefficients.
    Exact(UniPoly<Rational>),
    /// Floating coefficients.
    Float(UniPoly<f64>),
}

/// Binary polynomial operation selector for [`poly_arith`].
#[derive(Clone, Debug, PartialEq)]
pub enum PolyOp {
    /// `p + q`.
    Add,
    /// `p - q`.
    Sub,
    /// `p · q`.
    Mul,
    /// `s · p`; the second polynomial operand is ignored.
    Scale(Scalar),
}

impl AnyPoly {
    /// Arithmetic mode of the coefficients.
    pub fn mode(&self) -> Mode {
        match self {
            AnyPoly::Exact(_) => Mode::Exact,
            AnyPoly::Float(_) => Mode::Float,
        }
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        match self {
            AnyPoly::Exact(p) => p.degree(),
            AnyPoly::Float(p) => p.degree(),
        }
    }
}

/// Mode-checked polynomial arithmetic.
///
/// Both operands (and the scale factor, for [`PolyOp::Scale`]) must share one mode and
/// one variable; exact inputs give exact results.
pub fn poly_arith(p: &AnyPoly, q: &AnyPoly, op: PolyOp) -> Result<AnyPoly, NumError> {
    if p.mode() != q.mode() {
        return Err(NumError::ModeMismatch { left: p.mode(), right: q.mode() });
    }
    match (p, q, op) {
        (AnyPoly::Exact(a), _, PolyOp::Scale(Scalar::Exact(s))) => Ok(AnyPoly::Exact(a.scale(&s))),
        (AnyPoly::Float(a), _, PolyOp::Scale(Scalar::Float(s))) => Ok(AnyPoly::Float(a.scale(&s))),
        (_, _, PolyOp::Scale(s)) => Err(NumError::ModeMismatch { left: p.mode(), right: s.mode() }),
        (AnyPoly::Exact(a), AnyPoly::Exact(b), op) => Ok(AnyPoly::Exact(binary(a, b, &op)?)),
        (AnyPoly::Float(a), AnyPoly::Float(b), op) => Ok(AnyPoly::Float(binary(a, b, &op)?)),
        _ => unreachable!("modes were checked above"),
    }
}

fn binary<T: Coeff>(a: &UniPoly<T>, b: &UniPoly<T>, op: &PolyOp) -> Result<UniPoly<T>, NumError> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Sub => a.try_sub(b),
        PolyOp::Mul => a.try_mul(b),
        PolyOp::Scale(_) => unreachable!("handled by the caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn lam(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&v| q(v, 1)).collect(), Var::Lambda)
    }

    #[test]
    fn difference_of_squares() {
        let p = &lam(&[-6, 1]) * &lam(&[6, 1]);
        assert_eq!(p, lam(&[-36, 0, 1]));
    }

    #[test]
    fn additive_identity_and_trim() {
        let p = lam(&[1, 2, 3]);
        assert_eq!(&p + &UniPoly::zero(Var::Lambda), p);
        assert_eq!(lam(&[1, 0, 0]).degree(), Some(0));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn rational_cancellation_through_poly_arith() {
        let two_lambda = AnyPoly::Exact(lam(&[0, 2]));
        let half = PolyOp::Scale(Scalar::Exact(q(1, 2)));
        let out = poly_arith(&two_lambda, &two_lambda, half).unwrap();
        assert_eq!(out, AnyPoly::Exact(UniPoly::x(Var::Lambda)));
    }

    #[test]
    fn mode_and_variable_mismatch_are_rejected() {
        let e = AnyPoly::Exact(lam(&[1]));
        let f = AnyPoly::Float(UniPoly::new(vec![1.0], Var::Lambda));
        assert!(matches!(poly_arith(&e, &f, PolyOp::Add), Err(NumError::ModeMismatch { .. })));
        let scale = PolyOp::Scale(Scalar::Float(2.0));
        assert!(matches!(poly_arith(&e, &e, scale), Err(NumError::ModeMismatch { .. })));
        let eps = UniPoly::new(vec![q(1, 1)], Var::Epsilon);
        assert!(lam(&[1]).try_mul(&eps).is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = lam(&[-1, 0, 1]); // (λ-1)(λ+1)
        let b = lam(&[-1, 1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot, lam(&[1, 1]));
        assert!(rem.is_zero());
        let g = (&a * &b).gcd(&a.derivative()).unwrap();
        assert_eq!(g, lam(&[1]));
        let sq = &b * &b;
        assert_eq!(sq.gcd(&sq.derivative()).unwrap(), b);
    }

    #[test]
    fn evaluation_and_monic() {
        let p = lam(&[2, -3, 4]);
        assert_eq!(p.eval(&q(1, 2)), q(3, 2));
        assert_eq!(p.eval_f64(0.5), 1.5);
        assert_eq!(p.monic().leading(), Some(&q(1, 1)));
        assert_eq!(p.monic().monic(), p.monic());
    }
}
