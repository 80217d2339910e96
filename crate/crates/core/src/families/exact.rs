//! The `q = 0` exactly solvable levels.

use super::{gauge_energy, stated_energy, FamilyError, FamilyParams};
use crate::bd_recurrence::{exact_coeff_vector, ode_row, CoeffVector, RecurrenceError};
use crate::numkit::Coeff;

/// One exactly solvable level with the displayed closed forms next to the consistent values.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCase<T> {
    /// Degree of the polynomial part.
    pub m: usize,
    /// Spectral value from the displayed closed form.
    pub printed_root: T,
    /// Spectral value that makes the coefficient system consistent.
    pub root: T,
    /// Displayed closed-form energy (Hultén: quarter rule applied to the Eckart closed form).
    pub printed_energy: T,
    /// The family's stated energy formula evaluated at `printed_root`.
    pub stated_energy: T,
    /// Gauge-identity energy at `root`.
    pub gauge_energy: T,
    /// Polynomial coefficients (degree `m`) at `root`, `c_0 = 1`.
    pub coeffs: CoeffVector<T>,
}

/// Spectral value that makes row `m` of the `q = 0` coefficient system vanish.
///
/// The diagonal entry is affine in the spectral value, so it is solved exactly.
pub fn exact_root<T: Coeff>(params: &FamilyParams<T>, m: usize) -> Result<T, FamilyError> {
    let d0 = ode_row(params, &T::zero(), m as i64).diag;
    let d1 = ode_row(params, &T::one(), m as i64).diag - d0.clone();
    if d1.is_zero() {
        return Err(FamilyError::Pole("L + m + 1 = 0 or l + m + 1 = 0"));
    }
    Ok(-d0 / d1)
}

/// Exactly solvable level of polynomial degree `m` for Eckart-type or Coulomb families at `q = 0`.
pub fn exact_case<T: Coeff>(params: &FamilyParams<T>, m: usize) -> Result<ExactCase<T>, FamilyError> {
    params.validate()?;
    if !params.q().is_zero() {
        return Err(FamilyError::NotExactlySolvable);
    }
    let two = T::from_i64(2);
    let four = T::from_i64(4);
    let mt = T::from_i64(m as i64);
    let j: T = params.two_j().j();
    let (printed_root, printed_energy) = match params {
        FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => {
            let n = p.l.clone() + mt.clone() + T::one();
            if n.is_zero() {
                return Err(FamilyError::Pole("L + m + 1 = 0"));
            }
            let lambda = p.a.clone() / n.clone() - two.clone() * (p.l.clone() + two.clone() * j - mt + two);
            let ratio = p.a.clone() / n.clone();
            let a2 = p.alpha.clone() * p.alpha.clone();
            let e8 = a2.clone() / four.clone() * (ratio.clone() * ratio + four.clone() * n.clone() * n);
            let energy = match params {
                FamilyParams::Hulthen(_) => (e8 + p.a.clone() * a2) / four,
                _ => e8,
            };
            (lambda, energy)
        }
        FamilyParams::Coulomb(p) => {
            let n = p.ell.clone() + mt + T::one();
            if n.is_zero() {
                return Err(FamilyError::Pole("l + m + 1 = 0"));
            }
            let eps = -(p.a.clone() * (T::one() + T::one() / n.clone()));
            let half = p.a.clone() / two / n;
            (eps, half.clone() * half)
        }
        _ => return Err(FamilyError::NotExactlySolvable),
    };
    let root = exact_root(params, m)?;
    let coeffs = exact_coeff_vector(params, &root, m).map_err(|e| match e {
        RecurrenceError::Family(f) => f,
        _ => FamilyError::Pole("degenerate exactly solvable coefficient system"),
    })?;
    Ok(ExactCase {
        m,
        stated_energy: stated_energy(params, &printed_root),
        gauge_energy: gauge_energy(params, &root),
        printed_root,
        root,
        printed_energy,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{CoulombParams, HyperbolicParams, TwoJ};
    use crate::numkit::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn eckart_reference_level() {
        let p = FamilyParams::Eckart(HyperbolicParams { l: q(0), a: q(12), q: q(0), alpha: q(1), two_j: TwoJ(0) });
        let e = exact_case(&p, 0).unwrap();
        assert_eq!((e.printed_root.clone(), e.root.clone()), (q(8), q(8)));
        assert_eq!(e.printed_energy, q(37));
        assert_eq!(e.stated_energy, q(-37));
        assert_eq!(e.gauge_energy, q(-37));
        assert_eq!(e.coeffs.c, alloc::vec![q(1)]);
    }

    #[test]
    fn coulomb_reference_level() {
        let p = FamilyParams::Coulomb(CoulombParams { ell: q(0), a: q(-2), q: q(0), two_j: TwoJ(0) });
        let e = exact_case(&p, 0).unwrap();
        assert_eq!(e.printed_root, q(4));
        assert_eq!(e.root, q(0));
        assert_eq!(e.printed_energy, q(1));
        assert_eq!(e.stated_energy, q(-1));
        assert_eq!(e.gauge_energy, q(-1));
    }

    #[test]
    fn free_limit_and_poles() {
        let p = FamilyParams::Coulomb(CoulombParams { ell: q(0), a: q(0), q: q(0), two_j: TwoJ(0) });
        let e = exact_case(&p, 0).unwrap();
        assert_eq!((e.printed_root, e.printed_energy), (q(0), q(0)));
        let pole = FamilyParams::Eckart(HyperbolicParams { l: q(-2), a: q(1), q: q(0), alpha: q(1), two_j: TwoJ(0) });
        assert!(matches!(exact_case(&pole, 1), Err(FamilyError::Pole(_))));
        let qnz = FamilyParams::Coulomb(CoulombParams { ell: q(0), a: q(1), q: q(1), two_j: TwoJ(0) });
        assert_eq!(exact_case(&qnz, 0), Err(FamilyError::NotExactlySolvable));
    }
}
