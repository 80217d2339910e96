//! Displayed closed forms of the Coulomb pair family, kept literal for comparison.

use alloc::vec;
use alloc::vec::Vec;

use crate::families::PairParams;
use crate::numkit::{Coeff, UniPoly, Var};

/// Displayed monic `P_1 … P_4` of the pair family, in `ε`:
/// `ε`, `ε² − 8qj(ℓ+1)`, `ε(ε² + 4q(2ℓ + 3 − 2j(3ℓ+4)))`,
/// `ε⁴ + 4q(8ℓ + 15 − 4j(4ℓ+5))ε² + 192j(j−1)(ℓ²+3ℓ+2)q²`.
pub fn displayed_pair_polynomial<T: Coeff>(p: &PairParams<T>, m: usize) -> Option<UniPoly<T>> {
    let int = T::from_i64;
    let (q, l) = (p.q.clone(), p.ell.clone());
    let j: T = p.two_j.j();
    let z = T::zero;
    let coeffs = match m {
        1 => vec![z(), T::one()],
        2 => vec![-(int(8) * q * j * (l + T::one())), z(), T::one()],
        3 => {
            let inner = int(2) * l.clone() + int(3) - int(2) * j * (int(3) * l + int(4));
            vec![z(), int(4) * q * inner, z(), T::one()]
        }
        4 => {
            let c2 = int(4) * q.clone() * (int(8) * l.clone() + int(15) - int(4) * j.clone() * (int(4) * l.clone() + int(5)));
            let c0 = int(192) * j.clone() * (j - T::one()) * (l.clone() * l.clone() + int(3) * l + int(2)) * q.clone() * q;
            vec![c0, z(), c2, z(), T::one()]
        }
        _ => return None,
    };
    Some(UniPoly::new(coeffs, Var::Epsilon))
}

/// Displayed critical roots of the pair family for `j ≤ 3/2`, ascending.
pub fn displayed_pair_roots(p: &PairParams<f64>) -> Option<Vec<f64>> {
    let (q, l) = (p.q, p.ell);
    let mut roots = match p.two_j.0 {
        0 => vec![0.0],
        1 => {
            let r = 2.0 * libm::sqrt(q * (l + 1.0));
            vec![-r, r]
        }
        2 => {
            let r = 2.0 * libm::sqrt(q * (4.0 * l + 5.0));
            vec![-r, 0.0, r]
        }
        3 => {
            let disc = libm::sqrt(153.0 + 64.0 * l * (l + 3.0));
            let big = libm::sqrt(2.0 * q * (5.0 * (2.0 * l + 3.0) + disc));
            let small = libm::sqrt(2.0 * q * (5.0 * (2.0 * l + 3.0) - disc));
            vec![-big, -small, small, big]
        }
        _ => return None,
    };
    roots.sort_by(f64::total_cmp);
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::TwoJ;

    #[test]
    fn root_table_reference_values() {
        let p = |two_j| PairParams { ell: 0.0, q: 1.0, two_j: TwoJ(two_j) };
        assert_eq!(displayed_pair_roots(&p(1)).unwrap(), vec![-2.0, 2.0]);
        let r = displayed_pair_roots(&p(3)).unwrap();
        let big = (2.0 * (15.0 + 153f64.sqrt())).sqrt();
        assert_eq!(r[3], big);
        assert!((r[3] - 7.39855619386).abs() < 1e-10 && (r[2] - 2.29376682474).abs() < 1e-10);
        assert!(displayed_pair_roots(&p(4)).is_none());
    }

    #[test]
    fn second_polynomial() {
        let p = PairParams { ell: 0.0, q: 1.0, two_j: TwoJ(1) };
        let p2 = displayed_pair_polynomial(&p, 2).unwrap();
        assert_eq!(p2.coeffs(), &[-4.0, 0.0, 1.0]);
        assert!(displayed_pair_polynomial(&p, 5).is_none());
    }
}
