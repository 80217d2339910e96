//! Natural domains, default truncations and the numerical normalizability test.

use super::{EigenfunctionSpec, Family, FamilyParams};

/// Domain-doubling ratio below which `∫|ψ|²` is considered converged.
pub const NORMALIZABILITY_RATIO: f64 = 1.01;

/// Relative size of the gauge factor at the ends of a whole-line default domain.
const TAIL_LEVEL: f64 = 1e-12;

/// Open natural domain of a family.
pub fn natural_domain(family: Family) -> (f64, f64) {
    if family.is_whole_line() {
        (f64::NEG_INFINITY, f64::INFINITY)
    } else {
        (0.0, f64::INFINITY)
    }
}

/// Natural inverse length of a level, used to scale default domains.
pub(crate) fn inverse_length(spec: &EigenfunctionSpec) -> f64 {
    let raw = match &spec.params {
        FamilyParams::Eckart(p) | FamilyParams::RosenMorse(p) => p.alpha,
        FamilyParams::Hulthen(p) => p.alpha / 2.0,
        FamilyParams::Coulomb(p) => {
            if p.q > 0.0 {
                libm::sqrt(p.q)
            } else {
                0.5 * (spec.root + p.a).abs()
            }
        }
        FamilyParams::CoulombEps(p) => libm::sqrt(p.q),
        FamilyParams::Oscillator(p) => libm::cbrt(p.q),
    };
    if raw.is_finite() && raw > 0.0 {
        raw
    } else {
        1.0
    }
}

/// Default truncated domain of a level.
///
/// Half-line families use `[10⁻³/α′, 20/α′]`. Whole-line families use `[−X, X]`, with `X`
/// doubled from `1/α′` until the gauge factor at both ends is below `10⁻¹²` of its
/// largest sampled value (capped at `64/α′` for growing solutions).
pub fn default_domain(spec: &EigenfunctionSpec) -> (f64, f64) {
    let k = inverse_length(spec);
    if !spec.params.family().is_whole_line() {
        return (1e-3 / k, 20.0 / k);
    }
    let cap = 64.0 / k;
    let mut x = 1.0 / k;
    let log_tail = libm::log(TAIL_LEVEL);
    loop {
        let samples = 200;
        let peak = (0..=samples)
            .map(|i| -x + 2.0 * x * i as f64 / samples as f64)
            .filter_map(|t| spec.gauge.log_abs(t).ok())
            .fold(f64::NEG_INFINITY, f64::max);
        let edge = |t: f64| spec.gauge.log_abs(t).unwrap_or(f64::INFINITY);
        if (edge(-x) - peak < log_tail && edge(x) - peak < log_tail) || x >= cap {
            return (-x, x);
        }
        x = (2.0 * x).min(cap);
    }
}

/// `ln ∫_a^b ψ²` by a log-space trapezoid rule (geometric spacing when `a > 0`).
fn log_norm(spec: &EigenfunctionSpec, a: f64, b: f64) -> f64 {
    const N: usize = 6000;
    let geometric = a > 0.0;
    let mut terms = alloc::vec::Vec::with_capacity(N + 1);
    for i in 0..=N {
        let u = i as f64 / N as f64;
        let (x, log_jac) = if geometric {
            let ratio = libm::log(b / a);
            let x = a * libm::exp(u * ratio);
            (x, libm::log(x * ratio))
        } else {
            (a + (b - a) * u, libm::log(b - a))
        };
        let weight = if i == 0 || i == N { 0.5 } else { 1.0 };
        if let Ok(l) = spec.log_abs(x) {
            if l.is_finite() {
                terms.push(2.0 * l + log_jac + libm::log(weight / N as f64));
            } else if l.is_nan() || l == f64::INFINITY {
                return f64::INFINITY;
            }
        }
    }
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + libm::log(terms.iter().map(|t| libm::exp(t - max)).sum::<f64>())
}

/// Whether `∫|ψ|²` converges: doubling the default domain (halving its inner end on
/// half-line families) changes the integral by less than the factor [`NORMALIZABILITY_RATIO`].
pub fn is_normalizable(spec: &EigenfunctionSpec) -> bool {
    let (lo, hi) = default_domain(spec);
    let (lo2, hi2) = if spec.params.family().is_whole_line() { (2.0 * lo, 2.0 * hi) } else { (lo / 2.0, 2.0 * hi) };
    let base = log_norm(spec, lo, hi);
    let wide = log_norm(spec, lo2, hi2);
    base.is_finite() && wide.is_finite() && wide - base < libm::log(NORMALIZABILITY_RATIO)
}
