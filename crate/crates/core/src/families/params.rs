//! Parameter bundles of the six potential families.

use core::fmt;
use core::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use super::FamilyError;
use crate::numkit::{Coeff, Rational, Var};

/// The potential families handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Family {
    /// `csch²` plus `coth` well with a quasi-exactly solvable correction, on `x > 0`.
    Eckart,
    /// Eckart with the coordinate halved, on `x > 0`.
    Hulthen,
    /// Eckart continued to the whole line (`sech²` plus `tanh`).
    RosenMorse,
    /// Coulomb plus linear and harmonic terms, on `x > 0`.
    Coulomb,
    /// The Coulomb family on the line `ε = −a` (two charges in a harmonic trap).
    CoulombEps,
    /// Sextic-type polynomial oscillator (quartic potential) on the whole line.
    Oscillator,
}

impl Family {
    /// Every family, in canonical order.
    pub const ALL: [Family; 6] = [
        Family::Eckart,
        Family::Hulthen,
        Family::RosenMorse,
        Family::Coulomb,
        Family::CoulombEps,
        Family::Oscillator,
    ];

    /// Command-line and report name.
    pub fn name(self) -> &'static str {
        match self {
            Family::Eckart => "eckart",
            Family::Hulthen => "hulthen",
            Family::RosenMorse => "rosen-morse",
            Family::Coulomb => "coulomb",
            Family::CoulombEps => "coulomb-eps",
            Family::Oscillator => "oscillator",
        }
    }

    /// Spectral variable of the family's recurrence.
    pub fn var(self) -> Var {
        if self.is_hyperbolic() {
            Var::Lambda
        } else {
            Var::Epsilon
        }
    }

    /// Whether the family shares the Eckart recurrence (Eckart, Hultén, Rosen-Morse).
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Family::Eckart | Family::Hulthen | Family::RosenMorse)
    }

    /// Whether the natural domain is the whole real line.
    pub fn is_whole_line(self) -> bool {
        matches!(self, Family::RosenMorse | Family::Oscillator)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or(FamilyError::UnknownFamily)
    }
}

/// Twice the (half-)integer `j`, so that `j = 0, ½, 1, …` is stored exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TwoJ(pub u32);

impl TwoJ {
    /// Largest supported `2j`.
    pub const MAX: u32 = 64;

    /// Interprets an exact value of `j`; fails unless `2j` is a nonnegative integer.
    pub fn from_j(j: &Rational) -> Result<Self, FamilyError> {
        let twice = j * Rational::from_i64(2);
        if !twice.is_integer() || twice < Rational::zero() {
            return Err(FamilyError::InvalidJ);
        }
        match twice.to_integer().to_u32() {
            Some(v) if v <= Self::MAX => Ok(TwoJ(v)),
            _ => Err(FamilyError::InvalidJ),
        }
    }

    /// Degree `2j` of the polynomial part of the eigenfunction.
    pub fn degree(self) -> usize {
        self.0 as usize
    }

    /// `j` in the requested coefficient field.
    pub fn j<T: Coeff>(self) -> T {
        T::from_ratio(i64::from(self.0), 2)
    }

    /// `j` as a double.
    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for TwoJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Parameters of the Eckart, Hultén and Rosen-Morse families.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicParams<T> {
    /// Centrifugal-type strength `L`.
    pub l: T,
    /// Strength `A` of the `coth` (`tanh`) term.
    pub a: T,
    /// Deformation strength `q`.
    pub q: T,
    /// Inverse range `α > 0`.
    pub alpha: T,
    /// Polynomial degree `2j`.
    pub two_j: TwoJ,
}

/// Parameters of the perturbed Coulomb family.
#[derive(Clone, Debug, PartialEq)]
pub struct CoulombParams<T> {
    /// Angular momentum `ℓ ≥ 0`.
    pub ell: T,
    /// Coulomb strength `a`.
    pub a: T,
    /// Oscillator strength `q ≥ 0`.
    pub q: T,
    /// Polynomial degree `2j`.
    pub two_j: TwoJ,
}

/// Parameters of the Coulomb family restricted to `ε = −a`; the charge is the spectral value.
#[derive(Clone, Debug, PartialEq)]
pub struct PairParams<T> {
    /// Angular momentum `ℓ ≥ 0`.
    pub ell: T,
    /// Oscillator strength `q ≥ 0`.
    pub q: T,
    /// Polynomial degree `2j`.
    pub two_j: TwoJ,
}

/// Parameters of the quartic oscillator family.
#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorParams<T> {
    /// Linear-exponent coefficient `ℓ`.
    pub ell: T,
    /// Quadratic-exponent coefficient `a ≠ 0`.
    pub a: T,
    /// Cubic-exponent coefficient `q > 0`.
    pub q: T,
    /// Polynomial degree `2j`.
    pub two_j: TwoJ,
}

/// One family together with all of its parameters; the spectral value is supplied per level.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams<T> {
    /// Eckart family.
    Eckart(HyperbolicParams<T>),
    /// Hultén family (same parameters as Eckart).
    Hulthen(HyperbolicParams<T>),
    /// Rosen-Morse family (same parameters as Eckart).
    RosenMorse(HyperbolicParams<T>),
    /// Perturbed Coulomb family.
    Coulomb(CoulombParams<T>),
    /// Coulomb family on the line `ε = −a`.
    CoulombEps(PairParams<T>),
    /// Quartic oscillator family.
    Oscillator(OscillatorParams<T>),
}

impl<T: Coeff> FamilyParams<T> {
    /// Family tag.
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Eckart(_) => Family::Eckart,
            FamilyParams::Hulthen(_) => Family::Hulthen,
            FamilyParams::RosenMorse(_) => Family::RosenMorse,
            FamilyParams::Coulomb(_) => Family::Coulomb,
            FamilyParams::CoulombEps(_) => Family::CoulombEps,
            FamilyParams::Oscillator(_) => Family::Oscillator,
        }
    }

    /// Polynomial degree `2j`.
    pub fn two_j(&self) -> TwoJ {
        match self {
            FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => p.two_j,
            FamilyParams::Coulomb(p) => p.two_j,
            FamilyParams::CoulombEps(p) => p.two_j,
            FamilyParams::Oscillator(p) => p.two_j,
        }
    }

    /// Deformation strength `q`.
    pub fn q(&self) -> &T {
        match self {
            FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => &p.q,
            FamilyParams::Coulomb(p) => &p.q,
            FamilyParams::CoulombEps(p) => &p.q,
            FamilyParams::Oscillator(p) => &p.q,
        }
    }

    /// Hyperbolic parameters, if this is Eckart, Hultén or Rosen-Morse.
    pub fn hyperbolic(&self) -> Option<&HyperbolicParams<T>> {
        match self {
            FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => Some(p),
            _ => None,
        }
    }

    /// Rebuilds the same parameter set under another hyperbolic family tag.
    ///
    /// Returns `None` for the non-hyperbolic families.
    pub fn with_hyperbolic_family(&self, family: Family) -> Option<Self> {
        let p = self.hyperbolic()?.clone();
        match family {
            Family::Eckart => Some(FamilyParams::Eckart(p)),
            Family::Hulthen => Some(FamilyParams::Hulthen(p)),
            Family::RosenMorse => Some(FamilyParams::RosenMorse(p)),
            _ => None,
        }
    }

    /// Checks the domain restrictions of every parameter.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let positive = |v: &T| v.to_f64() > 0.0;
        let nonneg = |v: &T| v.to_f64() >= 0.0;
        let finite = |v: &T| v.to_f64().is_finite();
        let check = |ok: bool, name: &'static str, reason: &'static str| {
            if ok {
                Ok(())
            } else {
                Err(FamilyError::InvalidParameter { name, reason })
            }
        };
        match self {
            FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => {
                check(finite(&p.l) && finite(&p.a) && finite(&p.q), "L, A, q", "must be finite")?;
                check(finite(&p.alpha) && positive(&p.alpha), "alpha", "must be positive")
            }
            FamilyParams::Coulomb(p) => {
                check(finite(&p.a), "a", "must be finite")?;
                check(finite(&p.ell) && nonneg(&p.ell), "ell", "must be nonnegative")?;
                check(finite(&p.q) && nonneg(&p.q), "q", "must be nonnegative")
            }
            FamilyParams::CoulombEps(p) => {
                check(finite(&p.ell) && nonneg(&p.ell), "ell", "must be nonnegative")?;
                check(finite(&p.q) && nonneg(&p.q), "q", "must be nonnegative")
            }
            FamilyParams::Oscillator(p) => {
                check(finite(&p.ell), "ell", "must be finite")?;
                check(finite(&p.a) && !p.a.is_zero(), "a", "must be nonzero")?;
                check(finite(&p.q) && positive(&p.q), "q", "must be positive")
            }
        }
    }

    /// Applies `f` to every real parameter.
    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> FamilyParams<U> {
        let hyp = |p: &HyperbolicParams<T>| HyperbolicParams {
            l: f(&p.l),
            a: f(&p.a),
            q: f(&p.q),
            alpha: f(&p.alpha),
            two_j: p.two_j,
        };
        match self {
            FamilyParams::Eckart(p) => FamilyParams::Eckart(hyp(p)),
            FamilyParams::Hulthen(p) => FamilyParams::Hulthen(hyp(p)),
            FamilyParams::RosenMorse(p) => FamilyParams::RosenMorse(hyp(p)),
            FamilyParams::Coulomb(p) => FamilyParams::Coulomb(CoulombParams {
                ell: f(&p.ell),
                a: f(&p.a),
                q: f(&p.q),
                two_j: p.two_j,
            }),
            FamilyParams::CoulombEps(p) => {
                FamilyParams::CoulombEps(PairParams { ell: f(&p.ell), q: f(&p.q), two_j: p.two_j })
            }
            FamilyParams::Oscillator(p) => FamilyParams::Oscillator(OscillatorParams {
                ell: f(&p.ell),
                a: f(&p.a),
                q: f(&p.q),
                two_j: p.two_j,
            }),
        }
    }

    /// Parameters rounded to doubles.
    pub fn to_float(&self) -> FamilyParams<f64> {
        self.map(|v| v.to_f64())
    }

    /// Named parameter values in a fixed order, for reports.
    pub fn named_values(&self) -> alloc::vec::Vec<(&'static str, T)> {
        match self {
            FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => alloc::vec![
                ("L", p.l.clone()),
                ("A", p.a.clone()),
                ("q", p.q.clone()),
                ("alpha", p.alpha.clone()),
            ],
            FamilyParams::Coulomb(p) => {
                alloc::vec![("ell", p.ell.clone()), ("a", p.a.clone()), ("q", p.q.clone())]
            }
            FamilyParams::CoulombEps(p) => alloc::vec![("ell", p.ell.clone()), ("q", p.q.clone())],
            FamilyParams::Oscillator(p) => {
                alloc::vec![("ell", p.ell.clone()), ("a", p.a.clone()), ("q", p.q.clone())]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_j_accepts_half_integers_only() {
        assert_eq!(TwoJ::from_j(&Rational::from_ratio(3, 2)).unwrap(), TwoJ(3));
        assert_eq!(TwoJ::from_j(&Rational::from_i64(0)).unwrap(), TwoJ(0));
        assert!(TwoJ::from_j(&Rational::from_ratio(1, 3)).is_err());
        assert!(TwoJ::from_j(&Rational::from_ratio(-1, 2)).is_err());
        assert_eq!(TwoJ(3).j::<Rational>(), Rational::from_ratio(3, 2));
        assert_eq!(alloc::format!("{}", TwoJ(3)), "3/2");
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("rosen_morse".parse::<Family>().unwrap(), Family::RosenMorse);
        assert!("morse".parse::<Family>().is_err());
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        let osc = FamilyParams::Oscillator(OscillatorParams { ell: 1.0, a: 0.0, q: 1.0, two_j: TwoJ(0) });
        assert!(osc.validate().is_err());
        let eck = FamilyParams::Eckart(HyperbolicParams { l: 0.0, a: 1.0, q: 0.0, alpha: -1.0, two_j: TwoJ(0) });
        assert!(eck.validate().is_err());
        let cou = FamilyParams::Coulomb(CoulombParams { ell: 0.0, a: 1.0, q: 1.0, two_j: TwoJ(1) });
        assert!(cou.validate().is_ok());
    }
}
