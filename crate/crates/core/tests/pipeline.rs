//! End-to-end checks of the spectrum pipeline against its oracles.

use qes_core::families::{FamilyParams, HyperbolicParams, PairParams, TwoJ};
use qes_core::numkit::{Coeff, Rational};
use qes_core::oracle::{fd_domain, fd_spectrum, GridSpec};
use qes_core::pipeline::solve_spectrum;
use qes_core::transforms::{
    default_coulomb_map, default_oscillator_map, limit_convergence_scan, MapVariant, DEFAULT_ALPHAS,
};

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn hyperbolic(l: Rational, a: i64, q: Rational, two_j: u32) -> HyperbolicParams<Rational> {
    HyperbolicParams { l, a: r(a, 1), q, alpha: r(1, 1), two_j: TwoJ(two_j) }
}

#[test]
fn exactly_solvable_eckart_level_closes_the_loop() {
    for m in 0..3 {
        let p = FamilyParams::Eckart(hyperbolic(r(0, 1), -30, r(0, 1), 0));
        let s = solve_spectrum(&p, Some(m), None).unwrap();
        let l = &s.levels[0];
        let ex = l.exact.as_ref().unwrap();
        assert_eq!(ex.m, m);
        assert_eq!(l.coeffs.len(), m + 1);
        assert!((l.e_derived - l.e_gauge).abs() < 1e-8 * l.e_gauge.abs(), "{} vs {}", l.e_derived, l.e_gauge);
        // the displayed closed-form energy carries the opposite sign
        assert!((ex.printed_energy + l.e_derived).abs() < 1e-8 * l.e_gauge.abs());
        assert!(l.residual < 1e-6);
    }
}

#[test]
fn vanishing_constant_term_is_normalized_at_the_lowest_coefficient() {
    let p = FamilyParams::RosenMorse(hyperbolic(r(1, 1), -18, r(2, 1), 3));
    let s = solve_spectrum(&p, None, None).unwrap();
    let l = s.levels.iter().find(|l| l.coeffs[0] == 0.0).expect("a level with a vanishing constant term");
    assert_eq!(l.coeffs.iter().find(|c| **c != 0.0), Some(&1.0));
    assert!(l.residual < 1e-6, "{}", l.residual);
    assert!((l.e_derived - l.e_gauge).abs() < 1e-8 * (1.0 + l.e_gauge.abs()));
}

#[test]
fn float_and_rational_modes_agree() {
    let p = FamilyParams::Eckart(hyperbolic(r(1, 2), -20, r(1, 2), 3));
    let exact = solve_spectrum(&p, None, None).unwrap();
    let float = solve_spectrum(&p.to_float(), None, None).unwrap();
    assert_eq!(exact.levels.len(), float.levels.len());
    for (a, b) in exact.levels.iter().zip(&float.levels) {
        assert!((a.root - b.root).abs() < 1e-9 * (1.0 + a.root.abs()));
        assert!((a.e_derived - b.e_derived).abs() < 1e-7 * (1.0 + a.e_derived.abs()));
    }
}

fn nearest_fd(l: &qes_core::pipeline::QesLevel, n: usize) -> f64 {
    let (lo, hi) = fd_domain(&l.spec);
    let g = GridSpec::new(lo, hi, n).unwrap();
    let v = |x: f64| l.spec.potential(x).unwrap_or(f64::NAN);
    qes_core::oracle::FdOperator::new(&v, &g).unwrap().nearest(l.e_derived)
}

#[test]
fn normalizable_levels_are_finite_difference_eigenvalues() {
    let cases = [
        FamilyParams::CoulombEps(PairParams { ell: r(0, 1), q: r(1, 1), two_j: TwoJ(1) }),
        FamilyParams::CoulombEps(PairParams { ell: r(1, 1), q: r(1, 2), two_j: TwoJ(2) }),
        FamilyParams::Eckart(hyperbolic(r(1, 1), -12, r(1, 1), 2)),
    ];
    for p in cases {
        for l in solve_spectrum(&p, None, None).unwrap().levels.iter().filter(|l| l.normalizable) {
            let nearest = nearest_fd(l, 12_000);
            assert!((nearest - l.e_derived).abs() < 1e-3, "{p:?}: {} vs {nearest}", l.e_derived);
        }
    }
}

#[test]
fn square_root_end_converges_slowly_toward_the_level() {
    // with q = 2(L + 1) - 1 the wavefunction vanishes like the square root of the distance to the origin
    let p = FamilyParams::Eckart(hyperbolic(r(0, 1), -12, r(1, 1), 2));
    let s = solve_spectrum(&p, None, None).unwrap();
    let l = s.levels.iter().find(|l| l.normalizable).unwrap();
    let gaps: Vec<f64> = [3_000, 12_000].iter().map(|&n| (nearest_fd(l, n) - l.e_derived).abs()).collect();
    assert!(gaps[1] < gaps[0], "{gaps:?}");
    assert!(gaps[1] > 1e-3, "{gaps:?}");
}

#[test]
fn finite_difference_oracle_is_second_order() {
    let err = |n: usize| {
        let g = GridSpec::new(-8.0, 8.0, n).unwrap();
        (fd_spectrum(&|x: f64| x * x, &g, 1).unwrap()[0] - 1.0).abs()
    };
    let ratio = err(499) / err(999);
    assert!((3.6..=4.4).contains(&ratio), "{ratio}");
}

#[test]
fn limit_maps_converge_and_controls_are_flagged() {
    for make in [default_coulomb_map, default_oscillator_map] {
        let m = make(MapVariant::Consistent);
        let rec = limit_convergence_scan(&m, &m.default_probe(), &DEFAULT_ALPHAS).unwrap();
        assert!(rec.decreasing && !rec.flagged);
        assert!(rec.order.unwrap() > 0.85);
        for bad in [MapVariant::AsPrinted, MapVariant::DropQSquared] {
            let m = make(bad);
            assert!(limit_convergence_scan(&m, &m.default_probe(), &DEFAULT_ALPHAS).unwrap().flagged);
        }
    }
}
