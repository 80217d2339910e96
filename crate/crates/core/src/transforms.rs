//! Maps between the families: coordinate halving (Hultén), analytic continuation
//! (Rosen-Morse), and the two parameter maps whose `α → 0` limits give the perturbed
//! Coulomb and quartic oscillator families, with a convergence scanner for those limits.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::families::{
    eckart_potential_complex, gauge_energy, potential_value, CoulombParams, FamilyError, FamilyParams,
    HyperbolicParams, OscillatorParams, TwoJ,
};

/// Failure of a transform or a limit scan.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TransformError {
    /// The source family is not the one the map starts from.
    #[error("expected {expected} parameters")]
    WrongFamily {
        /// Family the map accepts.
        expected: &'static str,
    },
    /// `α` must be strictly positive and finite.
    #[error("alpha = {alpha} is not a positive finite number")]
    BadAlpha {
        /// Offending value.
        alpha: f64,
    },
    /// The α list is empty or not strictly decreasing.
    #[error("alphas must be a nonempty strictly decreasing list of positive numbers")]
    BadAlphaList,
    /// The probe grid is empty.
    #[error("probe grid is empty")]
    EmptyProbe,
    /// The oscillator map divides by `q`.
    #[error("the oscillator limit map requires q > 0")]
    ZeroQ,
    /// An intermediate quantity overflowed.
    #[error("overflow at alpha = {alpha}")]
    Overflow {
        /// `α` at which the evaluation failed.
        alpha: f64,
    },
    /// A family evaluation failed.
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Eckart parameters to Hultén parameters: the recurrence and spectral values are unchanged,
/// the potential is `V_H(x) = ¼(V_E(x/2) − Aα²)` and `ψ_H(x) = ψ_E(x/2)`.
pub fn eckart_to_hulthen(p: &FamilyParams<f64>) -> Result<FamilyParams<f64>, TransformError> {
    match p {
        FamilyParams::Eckart(h) => Ok(FamilyParams::Hulthen(h.clone())),
        _ => Err(TransformError::WrongFamily { expected: "eckart" }),
    }
}

/// Eckart parameters to Rosen-Morse parameters: the potential is continued by
/// `x → x + iπ/(2α)` (so `e^{−2αx} → −e^{−2αx}`), the energies are unchanged.
pub fn eckart_to_rosen_morse(p: &FamilyParams<f64>) -> Result<FamilyParams<f64>, TransformError> {
    match p {
        FamilyParams::Eckart(h) => Ok(FamilyParams::RosenMorse(h.clone())),
        _ => Err(TransformError::WrongFamily { expected: "eckart" }),
    }
}

/// Hultén energy from an Eckart energy by the quarter rule `E′ = ¼(E_E + Aα²)`.
pub fn hulthen_energy_quarter_rule(eckart_energy: f64, p: &HyperbolicParams<f64>) -> f64 {
    0.25 * (eckart_energy + p.a * p.alpha * p.alpha)
}

/// Eckart potential at the complex point `x + iπ/(2α)`; its real part is the canonical
/// Rosen-Morse potential and its imaginary part vanishes.
pub fn continued_potential(p: &HyperbolicParams<f64>, lambda: f64, x: f64) -> Complex64 {
    eckart_potential_complex(p, lambda, Complex64::new(x, PI / (2.0 * p.alpha)))
}

/// Which version of a limit parameter map to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum MapVariant {
    /// Substitution under which `V − E` converges to the target family.
    Consistent,
    /// Substitution exactly as displayed.
    AsPrinted,
    /// Consistent substitution with the highest-order `q²` term of `A` removed (negative control).
    DropQSquared,
}

/// A parameter map whose `α → 0` limit is checked on `V − E`.
#[derive(Clone, Debug, PartialEq)]
pub enum LimitMap {
    /// Eckart at rate `α` towards the perturbed Coulomb family at spectral value `eps`.
    Coulomb {
        /// Target parameters.
        target: CoulombParams<f64>,
        /// Target spectral value `ε`.
        eps: f64,
        /// Substitution version.
        variant: MapVariant,
    },
    /// Rosen-Morse at rate `α` towards the quartic oscillator at spectral value `eps`.
    Oscillator {
        /// Target parameters.
        target: OscillatorParams<f64>,
        /// Target spectral value `ε`.
        eps: f64,
        /// Substitution version.
        variant: MapVariant,
    },
    /// A family mapped to itself (no `α` dependence).
    Identity {
        /// Parameters.
        params: FamilyParams<f64>,
        /// Spectral value.
        root: f64,
    },
}

fn check_alpha(alpha: f64) -> Result<(), TransformError> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(TransformError::BadAlpha { alpha })
    }
}

/// Eckart parameters and spectral value `λ` approximating a perturbed Coulomb level at rate `α`.
pub fn coulomb_limit_params(
    target: &CoulombParams<f64>,
    eps: f64,
    alpha: f64,
    variant: MapVariant,
) -> Result<(FamilyParams<f64>, f64), TransformError> {
    check_alpha(alpha)?;
    let CoulombParams { ell, a, q, two_j } = *target;
    let j = two_j.as_f64();
    let (a1, a2, a3, a4) = (alpha, alpha * alpha, alpha * alpha * alpha, alpha * alpha * alpha * alpha);
    let lambda = 2.0 + 4.0 * j + (a + eps) / a1 - 2.0 * q / a2;
    let base = a / a1 - q * ell / a2;
    let quartic = -3.0 * q * q / (8.0 * a4);
    let coupling = match variant {
        MapVariant::AsPrinted => 4.0 * a * q / a3,
        _ => q * (a + eps) / (4.0 * a3),
    };
    let big_a = match variant {
        MapVariant::DropQSquared => base + coupling,
        _ => base + coupling + quartic,
    };
    let params = HyperbolicParams { l: ell + q / (4.0 * a2), a: big_a, q: q / (2.0 * a2), alpha, two_j };
    Ok((FamilyParams::Eckart(params), lambda))
}

/// Rosen-Morse parameters and spectral value `λ` approximating a quartic oscillator level at rate `α`.
pub fn oscillator_limit_params(
    target: &OscillatorParams<f64>,
    eps: f64,
    alpha: f64,
    variant: MapVariant,
) -> Result<(FamilyParams<f64>, f64), TransformError> {
    check_alpha(alpha)?;
    let OscillatorParams { ell, a, q, two_j } = *target;
    if q == 0.0 {
        return Err(TransformError::ZeroQ);
    }
    let j = two_j.as_f64();
    let p = |k: i32| libm::pow(alpha, k as f64);
    let cubic_l = match variant {
        MapVariant::AsPrinted => -3.0 * q / (2.0 * p(3)),
        _ => -3.0 * q / (4.0 * p(3)),
    };
    let l = -ell / (4.0 * alpha) + a / (2.0 * p(2)) + cubic_l;
    let lambda = eps + 3.0 * ell / (2.0 * alpha) - a / p(2) + 2.0 * q / p(3);
    let mut big_a = (2.0 * a * ell - q * (3.0 * eps + 4.0 * j + 10.0)) / (4.0 * p(3)) - 7.0 * q * ell / (8.0 * p(4))
        + q * a / (4.0 * p(5));
    if variant != MapVariant::DropQSquared {
        big_a -= 3.0 * q * q / (8.0 * p(6));
    }
    let params = HyperbolicParams { l, a: big_a, q: q / (2.0 * p(3)), alpha, two_j };
    Ok((FamilyParams::RosenMorse(params), lambda))
}

/// `V(x) − E` of a level, with `E` from the gauge identity.
fn shifted_potential(params: &FamilyParams<f64>, root: f64, xs: &[f64], alpha: f64) -> Result<Vec<f64>, TransformError> {
    let e = gauge_energy(params, &root);
    xs.iter()
        .map(|&x| {
            let v = potential_value(params, root, x).map_err(|err| match err {
                FamilyError::Overflow { .. } => TransformError::Overflow { alpha },
                other => TransformError::Family(other),
            })?;
            let d = v - e;
            if d.is_finite() {
                Ok(d)
            } else {
                Err(TransformError::Overflow { alpha })
            }
        })
        .collect()
}

/// Family parameters together with the spectral value they carry.
type Endpoint = (FamilyParams<f64>, f64);

impl LimitMap {
    /// Source parameters and spectral value at rate `α`, and the target ones.
    fn pair(&self, alpha: f64) -> Result<(Endpoint, Endpoint), TransformError> {
        Ok(match self {
            LimitMap::Coulomb { target, eps, variant } => {
                (coulomb_limit_params(target, *eps, alpha, *variant)?, (FamilyParams::Coulomb(target.clone()), *eps))
            }
            LimitMap::Oscillator { target, eps, variant } => (
                oscillator_limit_params(target, *eps, alpha, *variant)?,
                (FamilyParams::Oscillator(target.clone()), *eps),
            ),
            LimitMap::Identity { params, root } => ((params.clone(), *root), (params.clone(), *root)),
        })
    }

    /// `sup_x |(V−E)_source(x; α) − (V−E)_target(x)|` over the probe points.
    pub fn deviation(&self, probe: &[f64], alpha: f64) -> Result<f64, TransformError> {
        check_alpha(alpha)?;
        let ((sp, sr), (tp, tr)) = self.pair(alpha)?;
        let source = shifted_potential(&sp, sr, probe, alpha)?;
        let target = shifted_potential(&tp, tr, probe, alpha)?;
        let dev = source.iter().zip(&target).map(|(s, t)| libm::fabs(s - t)).fold(0.0, f64::max);
        if dev.is_finite() {
            Ok(dev)
        } else {
            Err(TransformError::Overflow { alpha })
        }
    }

    /// Default probe grid: 57 points on `[0.2, 3]` for the Coulomb map, 41 points on
    /// `[−2, 2]` for the oscillator map, 41 points on `[0.5, 2.5]` for the identity.
    pub fn default_probe(&self) -> Vec<f64> {
        let (lo, hi, n) = match self {
            LimitMap::Coulomb { .. } => (0.2, 3.0, 57),
            LimitMap::Oscillator { .. } => (-2.0, 2.0, 41),
            LimitMap::Identity { .. } => (0.5, 2.5, 41),
        };
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }
}

/// Default α sequence of the limit scans.
pub const DEFAULT_ALPHAS: [f64; 3] = [0.04, 0.02, 0.01];

/// Deviations of a limit map along a decreasing α sequence.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceRecord {
    /// α values, strictly decreasing.
    pub alphas: Vec<f64>,
    /// Sup-norm deviation at each α.
    pub deviations: Vec<f64>,
    /// Order estimate `ln(d_{i−1}/d_i) / ln(α_{i−1}/α_i)` for each α after the first.
    pub orders: Vec<Option<f64>>,
    /// Smallest order estimate (`None` with fewer than two α values or a zero deviation).
    pub order: Option<f64>,
    /// Whether the deviations strictly decrease.
    pub decreasing: bool,
    /// Set when the deviations fail to decrease: the map does not converge.
    pub flagged: bool,
}

/// Evaluates a limit map along `alphas` (strictly decreasing, positive) on the probe points.
pub fn limit_convergence_scan(
    map: &LimitMap,
    probe: &[f64],
    alphas: &[f64],
) -> Result<ConvergenceRecord, TransformError> {
    if probe.is_empty() {
        return Err(TransformError::EmptyProbe);
    }
    let ok_list = !alphas.is_empty()
        && alphas.iter().all(|a| *a > 0.0 && a.is_finite())
        && alphas.windows(2).all(|w| w[1] < w[0]);
    if !ok_list {
        return Err(TransformError::BadAlphaList);
    }
    let deviations = alphas.iter().map(|&a| map.deviation(probe, a)).collect::<Result<Vec<_>, _>>()?;
    let mut orders = Vec::with_capacity(alphas.len());
    orders.push(None);
    for i in 1..alphas.len() {
        let (d0, d1) = (deviations[i - 1], deviations[i]);
        let est = if d0 > 0.0 && d1 > 0.0 {
            Some(libm::log(d0 / d1) / libm::log(alphas[i - 1] / alphas[i]))
        } else {
            None
        };
        orders.push(est);
    }
    let order = orders.iter().flatten().copied().reduce(f64::min);
    let all_zero = deviations.iter().all(|d| *d == 0.0);
    let decreasing = deviations.windows(2).all(|w| w[1] < w[0]);
    Ok(ConvergenceRecord { alphas: alphas.to_vec(), deviations, orders, order, decreasing, flagged: !(decreasing || all_zero) })
}

/// Coulomb target used by the default limit scan: `ℓ = 0, a = 2, q = 1, j = ½, ε = −2`.
pub fn default_coulomb_map(variant: MapVariant) -> LimitMap {
    LimitMap::Coulomb { target: CoulombParams { ell: 0.0, a: 2.0, q: 1.0, two_j: TwoJ(1) }, eps: -2.0, variant }
}

/// Oscillator target used by the default limit scan: `ℓ = 2, a = 2, q = 1, j = 0` at its root `ε = −3`.
pub fn default_oscillator_map(variant: MapVariant) -> LimitMap {
    LimitMap::Oscillator { target: OscillatorParams { ell: 2.0, a: 2.0, q: 1.0, two_j: TwoJ(0) }, eps: -3.0, variant }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coulomb_map_arithmetic() {
        let t = CoulombParams { ell: 0.0, a: 2.0, q: 1.0, two_j: TwoJ(1) };
        let (p, _) = coulomb_limit_params(&t, -2.0, 0.1, MapVariant::AsPrinted).unwrap();
        let h = p.hyperbolic().unwrap();
        assert!((h.q - 50.0).abs() < 1e-10 && (h.l - 25.0).abs() < 1e-10);
        assert!(coulomb_limit_params(&t, -2.0, 0.0, MapVariant::Consistent).is_err());
    }

    #[test]
    fn oscillator_map_arithmetic() {
        let t = OscillatorParams { ell: 2.0, a: 2.0, q: 1.0, two_j: TwoJ(0) };
        let (p, _) = oscillator_limit_params(&t, -3.0, 0.5, MapVariant::AsPrinted).unwrap();
        assert!((p.q() - 4.0).abs() < 1e-12);
        let zero = OscillatorParams { q: 0.0, ..t };
        assert_eq!(oscillator_limit_params(&zero, -3.0, 0.5, MapVariant::Consistent), Err(TransformError::ZeroQ));
    }

    #[test]
    fn identity_map_has_zero_deviation() {
        let map = LimitMap::Identity {
            params: FamilyParams::Coulomb(CoulombParams { ell: 0.0, a: 2.0, q: 1.0, two_j: TwoJ(1) }),
            root: -2.0,
        };
        let rec = limit_convergence_scan(&map, &map.default_probe(), &DEFAULT_ALPHAS).unwrap();
        assert!(rec.deviations.iter().all(|d| *d == 0.0));
        assert!(!rec.flagged);
    }

    #[test]
    fn consistent_maps_converge_and_control_is_flagged() {
        for map in [default_coulomb_map(MapVariant::Consistent), default_oscillator_map(MapVariant::Consistent)] {
            let rec = limit_convergence_scan(&map, &map.default_probe(), &DEFAULT_ALPHAS).unwrap();
            assert!(rec.decreasing, "{rec:?}");
        }
        for map in [default_coulomb_map(MapVariant::DropQSquared), default_oscillator_map(MapVariant::DropQSquared)] {
            let rec = limit_convergence_scan(&map, &map.default_probe(), &DEFAULT_ALPHAS).unwrap();
            assert!(rec.flagged, "{rec:?}");
        }
    }

    #[test]
    fn continuation_is_real_and_canonical() {
        let p = HyperbolicParams { l: 1.0, a: 0.7, q: 0.4, alpha: 0.9, two_j: TwoJ(2) };
        let rm = FamilyParams::RosenMorse(p.clone());
        for x in [-2.0, -0.3, 0.0, 0.8, 3.0] {
            let c = continued_potential(&p, 1.3, x);
            let v = potential_value(&rm, 1.3, x).unwrap();
            assert!(c.im.abs() <= 1e-12 * (1.0 + v.abs()));
            assert!((c.re - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn scan_rejects_bad_lists() {
        let map = default_coulomb_map(MapVariant::Consistent);
        assert_eq!(limit_convergence_scan(&map, &[1.0], &[]), Err(TransformError::BadAlphaList));
        assert_eq!(limit_convergence_scan(&map, &[1.0], &[0.01, 0.02]), Err(TransformError::BadAlphaList));
        assert_eq!(limit_convergence_scan(&map, &[], &[0.01]), Err(TransformError::EmptyProbe));
    }
}
