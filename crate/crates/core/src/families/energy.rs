//! Closed-form energies: the stated formulas evaluated literally, and the gauge-identity energies.

use super::FamilyParams;
use crate::numkit::Coeff;

fn sq<T: Coeff>(v: T) -> T {
    v.clone() * v
}

/// `(A − (2L + λ/2 + 2k + 3)²)α²` with `k = 2j` (stated form) or `k = j` (gauge form).
fn hyperbolic<T: Coeff>(l: &T, a: &T, alpha: &T, lambda: &T, k: T) -> T {
    let two = T::from_i64(2);
    let inner = two.clone() * l.clone() + lambda.clone() / two.clone() + two * k + T::from_i64(3);
    (a.clone() - sq(inner)) * sq(alpha.clone())
}

/// `−(ε+a)²/4 + 2q(ℓ + 2j + 3/2)`.
fn coulomb<T: Coeff>(ell: &T, a: &T, q: &T, eps: &T, j: T) -> T {
    let two = T::from_i64(2);
    -sq(eps.clone() + a.clone()) / T::from_i64(4)
        + two.clone() * q.clone() * (ell.clone() + two * j + T::from_ratio(3, 2))
}

/// The family's displayed energy formula evaluated literally at spectral value `root`.
///
/// Eckart and Rosen-Morse use `(A − (2L + λ/2 + 4j + 3)²)α²`; Hultén applies the displayed
/// quarter rule `¼(E + Aα²)` to that value; Coulomb uses `−(ε+a)²/4 + 2q(ℓ+2j+3/2)`;
/// the pair family `2q(ℓ+2j+3/2)`; the oscillator `½(ε + 4j + 5)a`.
pub fn stated_energy<T: Coeff>(params: &FamilyParams<T>, root: &T) -> T {
    let j: T = params.two_j().j();
    let two = T::from_i64(2);
    match params {
        FamilyParams::Eckart(p) | FamilyParams::RosenMorse(p) => {
            hyperbolic(&p.l, &p.a, &p.alpha, root, two * j)
        }
        FamilyParams::Hulthen(p) => {
            let e = hyperbolic(&p.l, &p.a, &p.alpha, root, two * j);
            (e + p.a.clone() * sq(p.alpha.clone())) / T::from_i64(4)
        }
        FamilyParams::Coulomb(p) => coulomb(&p.ell, &p.a, &p.q, root, j),
        FamilyParams::CoulombEps(p) => {
            two.clone() * p.q.clone() * (p.ell.clone() + two * j + T::from_ratio(3, 2))
        }
        FamilyParams::Oscillator(p) => {
            (root.clone() + T::from_i64(4) * j + T::from_i64(5)) * p.a.clone() / two
        }
    }
}

/// The energy implied by the gauge identity `V − ψ″/ψ = E` for the family's eigenfunction.
///
/// Eckart and Rosen-Morse give `(A − (2L + λ/2 + 2j + 3)²)α²`; Hultén is
/// `¼(E_Eckart − Aα²)`; both Coulomb forms agree with the stated formulas; the oscillator
/// gives `−½(ε + 4j + 5)a`.
pub fn gauge_energy<T: Coeff>(params: &FamilyParams<T>, root: &T) -> T {
    let j: T = params.two_j().j();
    match params {
        FamilyParams::Eckart(p) | FamilyParams::RosenMorse(p) => hyperbolic(&p.l, &p.a, &p.alpha, root, j),
        FamilyParams::Hulthen(p) => {
            let e = hyperbolic(&p.l, &p.a, &p.alpha, root, j);
            (e - p.a.clone() * sq(p.alpha.clone())) / T::from_i64(4)
        }
        FamilyParams::Coulomb(_) | FamilyParams::CoulombEps(_) => stated_energy(params, root),
        FamilyParams::Oscillator(_) => -stated_energy(params, root),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{HyperbolicParams, OscillatorParams, PairParams, TwoJ};
    use crate::numkit::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn eckart_ground_state_instance() {
        let p = FamilyParams::Eckart(HyperbolicParams { l: q(0), a: q(12), q: q(0), alpha: q(1), two_j: TwoJ(0) });
        assert_eq!(stated_energy(&p, &q(8)), q(-37));
        assert_eq!(gauge_energy(&p, &q(8)), q(-37));
    }

    #[test]
    fn pair_energy_instance() {
        let p = FamilyParams::CoulombEps(PairParams { ell: q(0), q: q(1), two_j: TwoJ(1) });
        assert_eq!(stated_energy(&p, &q(2)), q(5));
        assert_eq!(stated_energy(&p, &q(-2)), q(5));
    }

    #[test]
    fn oscillator_sign() {
        let p = FamilyParams::Oscillator(OscillatorParams { ell: q(2), a: q(2), q: q(1), two_j: TwoJ(0) });
        assert_eq!(stated_energy(&p, &q(-3)), q(2));
        assert_eq!(gauge_energy(&p, &q(-3)), q(-2));
    }
}
