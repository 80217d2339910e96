//! Invariants of the recurrence polynomials and root finders over random parameters.

use proptest::prelude::*;

use qes_core::bd_recurrence::{
    build_sequence, coeff_vector_from_ode, make_recurrence, monic_normal_form, RecurrenceError,
};
use qes_core::families::{CoulombParams, FamilyParams, HyperbolicParams, OscillatorParams, PairParams, TwoJ};
use qes_core::numkit::{companion_all_roots, sturm_real_roots, Coeff, Rational, UniPoly, Var, STURM_TOL};
use qes_core::oracle::displayed_pair_polynomial;

fn ratio(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

prop_compose! {
    fn positive()(n in 1i64..=40, d in 1i64..=9) -> Rational { ratio(n, d) }
}

prop_compose! {
    fn non_negative()(n in 0i64..=30, d in 1i64..=9) -> Rational { ratio(n, d) }
}

prop_compose! {
    fn signed()(n in -40i64..=40, d in 1i64..=9) -> Rational { ratio(n, d) }
}

fn families() -> impl Strategy<Value = FamilyParams<Rational>> {
    let two_j = 0u32..=5;
    prop_oneof![
        (non_negative(), signed(), positive(), positive(), two_j.clone(), 0usize..3).prop_map(|(l, a, q, alpha, tj, k)| {
            let h = HyperbolicParams { l, a, q, alpha, two_j: TwoJ(tj) };
            [FamilyParams::Eckart, FamilyParams::Hulthen, FamilyParams::RosenMorse][k](h)
        }),
        (non_negative(), signed(), positive(), two_j.clone())
            .prop_map(|(ell, a, q, tj)| FamilyParams::Coulomb(CoulombParams { ell, a, q, two_j: TwoJ(tj) })),
        (non_negative(), positive(), two_j.clone())
            .prop_map(|(ell, q, tj)| FamilyParams::CoulombEps(PairParams { ell, q, two_j: TwoJ(tj) })),
        (signed(), positive(), positive(), two_j)
            .prop_map(|(ell, a, q, tj)| FamilyParams::Oscillator(OscillatorParams { ell, a, q, two_j: TwoJ(tj) })),
    ]
}

/// The fourth pair polynomial obtained by running the recurrence by hand.
fn derived_fourth(p: &PairParams<Rational>) -> UniPoly<Rational> {
    let (q, l) = (p.q.clone(), p.ell.clone());
    let j: Rational = p.two_j.j();
    let int = Rational::from_i64;
    let c2 = int(4) * q.clone() * (int(8) * l.clone() + int(15) - int(4) * j.clone() * (int(3) * l.clone() + int(5)));
    let c0 = int(192) * j.clone() * (j - int(1)) * (l.clone() * l.clone() + int(3) * l + int(2)) * q.clone() * q;
    UniPoly::new(vec![c0, int(0), c2, int(0), int(1)], Var::Epsilon)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sequence_degrees_follow_the_index(p in families()) {
        if let Ok(seq) = build_sequence(&make_recurrence(&p).unwrap()) {
            for (m, poly) in seq.polys.iter().enumerate() {
                prop_assert_eq!(poly.degree(), Some(m));
            }
            prop_assert_eq!(seq.critical.degree(), Some(p.two_j().degree() + 1));
        }
    }

    #[test]
    fn exact_and_float_recurrences_agree(p in families()) {
        let exact = build_sequence(&make_recurrence(&p).unwrap()).unwrap();
        let float = build_sequence(&make_recurrence(&p.to_float()).unwrap()).unwrap();
        let (a, b) = (exact.critical.monic().to_float(), float.critical.monic());
        prop_assert_eq!(a.coeffs().len(), b.coeffs().len());
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()), "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn pair_roots_are_symmetric(ell in non_negative(), q in positive(), tj in 0u32..=6) {
        let p = FamilyParams::CoulombEps(PairParams { ell, q, two_j: TwoJ(tj) });
        let c = build_sequence(&make_recurrence(&p).unwrap()).unwrap().critical;
        let parity = c.degree().unwrap() % 2;
        for (k, a) in c.coeffs().iter().enumerate() {
            prop_assert!(k % 2 == parity || *a == ratio(0, 1));
        }
    }

    #[test]
    fn displayed_pair_polynomials(ell in non_negative(), q in positive(), tj in 4u32..=9) {
        let p = PairParams { ell, q, two_j: TwoJ(tj) };
        let seq = build_sequence(&make_recurrence(&FamilyParams::CoulombEps(p.clone())).unwrap()).unwrap();
        for m in 1..=3 {
            prop_assert_eq!(monic_normal_form(&seq, m).unwrap(), displayed_pair_polynomial(&p, m).unwrap());
        }
        let fourth = monic_normal_form(&seq, 4).unwrap();
        prop_assert_eq!(&fourth, &derived_fourth(&p));
        // the displayed fourth polynomial is off by 16ℓjqε²
        let differs = fourth != displayed_pair_polynomial(&p, 4).unwrap();
        prop_assert_eq!(differs, p.ell != ratio(0, 1));
    }

    #[test]
    fn hyperbolic_families_share_their_critical_polynomial(
        l in non_negative(), a in signed(), q in positive(), alpha in positive(), tj in 0u32..=5,
    ) {
        let h = HyperbolicParams { l, a, q, alpha, two_j: TwoJ(tj) };
        let crit = |p| build_sequence(&make_recurrence(&p).unwrap()).unwrap().critical;
        let e = crit(FamilyParams::Eckart(h.clone()));
        prop_assert_eq!(&e, &crit(FamilyParams::Hulthen(h.clone())));
        prop_assert_eq!(&e, &crit(FamilyParams::RosenMorse(h)));
    }

    #[test]
    fn coefficients_exist_only_at_roots(p in families(), shift in positive()) {
        let seq = build_sequence(&make_recurrence(&p).unwrap()).unwrap();
        let roots = qes_core::bd_recurrence::spectrum_roots(&seq).unwrap();
        for r in roots.real_roots.iter().filter_map(|r| r.exact.clone()) {
            prop_assert!(coeff_vector_from_ode(&p, &r).is_ok());
            let off = r + shift.clone();
            if seq.critical.eval(&off) != ratio(0, 1) {
                let is_not_eigenvalue = matches!(coeff_vector_from_ode(&p, &off), Err(RecurrenceError::NotAnEigenvalue { .. }));
                prop_assert!(is_not_eigenvalue);
            }
        }
    }

    #[test]
    fn sturm_and_companion_agree(roots in prop::collection::vec((-30i64..=30, 1i64..=4), 1..=6), extra in 0u32..=1) {
        // a product of rational linear factors, optionally times an irreducible quadratic
        let mut p = UniPoly::constant(ratio(1, 1), Var::Epsilon);
        for (n, d) in &roots {
            p = &p * &UniPoly::linear(ratio(-n, *d), ratio(1, 1), Var::Epsilon);
        }
        if extra == 1 {
            p = &p * &UniPoly::new(vec![ratio(3, 1), ratio(0, 1), ratio(1, 1)], Var::Epsilon);
        }
        let exact = sturm_real_roots(&p, STURM_TOL).unwrap();
        let float = companion_all_roots(&p.to_float()).unwrap();
        let mut want: Vec<f64> = roots.iter().map(|(n, d)| *n as f64 / *d as f64).collect();
        want.sort_by(f64::total_cmp);
        let got = exact.values_with_multiplicity();
        prop_assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() < 1e-9);
        }
        prop_assert_eq!(exact.complex_count, 2 * extra as usize);
        prop_assert_eq!(float.real_count() + float.complex_count, p.degree().unwrap());
        // clustered roots are only resolved to about the square root of the working precision
        let simple = exact.real_roots.iter().all(|r| r.multiplicity == 1);
        if simple {
            let f = float.values_with_multiplicity();
            prop_assert_eq!(f.len(), want.len());
            for (g, w) in f.iter().zip(&want) {
                prop_assert!((g - w).abs() < 1e-6 * (1.0 + w.abs()), "{} vs {}", g, w);
            }
        }
    }
}
