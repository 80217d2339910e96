//! Pointwise potentials, in canonical form and in the literal displayed form used for audits.
//!
//! The hyperbolic potentials carry a correction term proportional to `q` that depends on
//! the level's spectral value `λ` and on `j`, so every evaluator takes the root.

use num_complex::Complex64;

use super::{FamilyError, FamilyParams, HyperbolicParams};

fn finite(v: f64, x: f64) -> Result<f64, FamilyError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(FamilyError::Overflow { x })
    }
}

fn positive(x: f64) -> Result<(), FamilyError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(FamilyError::Domain { x })
    }
}

/// Constant `4L − 4j + λ + 2` of the correction term.
fn corr_const(p: &HyperbolicParams<f64>, lambda: f64) -> f64 {
    4.0 * p.l - 4.0 * p.two_j.as_f64() + lambda + 2.0
}

/// Eckart potential at `x > 0` with a generic exponential rate `r` (`z = e^{−r x}`):
/// `L(L+1)α²csch² + Aα²coth + qα² z²/(1−z)²·(q z² + (λ−4j) z − (4L−4j+λ+2))`,
/// where the hyperbolic functions take the argument `r x / 2`.
fn eckart_core(p: &HyperbolicParams<f64>, lambda: f64, x: f64, r: f64) -> Result<f64, FamilyError> {
    positive(x)?;
    let a2 = p.alpha * p.alpha;
    let z = libm::exp(-r * x);
    let s = -libm::expm1(-r * x); // 1 − z, accurate near x = 0
    let ratio = z / s;
    let csch2 = 4.0 * z / (s * s);
    let coth = (2.0 - s) / s;
    let j = p.two_j.as_f64();
    let qterm = p.q * a2 * ratio * ratio * (p.q * z * z + (lambda - 4.0 * j) * z - corr_const(p, lambda));
    finite(p.l * (p.l + 1.0) * a2 * csch2 + p.a * a2 * coth + qterm, x)
}

/// `1 / (1 + e^{2αx})`, evaluated without overflow.
fn logistic_neg(two_ax: f64) -> f64 {
    if two_ax > 0.0 {
        let e = libm::exp(-two_ax);
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + libm::exp(two_ax))
    }
}

/// Canonical Rosen-Morse potential (Eckart continued by `z → −z`), `w = e^{−2αx}`:
/// `−L(L+1)α²sech² + Aα²tanh + qα² w²/(1+w)²·(q w² − (λ−4j) w − (4L−4j+λ+2))`.
fn rosen_morse(p: &HyperbolicParams<f64>, lambda: f64, x: f64) -> Result<f64, FamilyError> {
    let [bracket, qterm] = rosen_morse_terms_canonical(p, lambda, x)?;
    finite(bracket + qterm, x)
}

/// Bracket and correction term of the canonical Rosen-Morse potential.
pub fn rosen_morse_terms_canonical(
    p: &HyperbolicParams<f64>,
    lambda: f64,
    x: f64,
) -> Result<[f64; 2], FamilyError> {
    if !x.is_finite() {
        return Err(FamilyError::Domain { x });
    }
    let a2 = p.alpha * p.alpha;
    let ax = p.alpha * x;
    let sech = 1.0 / libm::cosh(ax);
    let bracket = -p.l * (p.l + 1.0) * a2 * sech * sech + p.a * a2 * libm::tanh(ax);
    let ratio = logistic_neg(2.0 * ax); // w / (1 + w)
    let w = libm::exp(-2.0 * ax);
    let j = p.two_j.as_f64();
    let qterm = if p.q == 0.0 {
        0.0
    } else {
        p.q * a2 * ratio * ratio * (p.q * w * w - (lambda - 4.0 * j) * w - corr_const(p, lambda))
    };
    Ok([bracket, finite(qterm, x)?])
}

/// Literal displayed Rosen-Morse form: `tan` in the bracket and the Eckart correction left unshifted.
pub fn rosen_morse_terms_printed(p: &HyperbolicParams<f64>, lambda: f64, x: f64) -> [f64; 2] {
    let a2 = p.alpha * p.alpha;
    let ax = p.alpha * x;
    let sech = 1.0 / libm::cosh(ax);
    let bracket = -p.l * (p.l + 1.0) * a2 * sech * sech + p.a * a2 * libm::tan(ax);
    let e = libm::exp(2.0 * ax) - 1.0;
    let j = p.two_j.as_f64();
    let poly = p.q * libm::exp(-4.0 * ax) + (lambda - 4.0 * j) * libm::exp(-2.0 * ax) - corr_const(p, lambda);
    [bracket, p.q * a2 / (e * e) * poly]
}

/// Literal displayed Rosen-Morse potential (may be non-finite: the unshifted correction is singular at 0).
pub fn rosen_morse_printed(p: &HyperbolicParams<f64>, lambda: f64, x: f64) -> f64 {
    let [a, b] = rosen_morse_terms_printed(p, lambda, x);
    a + b
}

/// The three terms of the canonical Hultén potential `¼(V_E(x/2) − Aα²)`, `y = e^{−αx}/(1−e^{−αx})`:
/// `α²(L(L+1) + A/2) y`, `L(L+1)α² y²`, and the quarter-scaled correction term.
pub fn hulthen_terms_canonical(p: &HyperbolicParams<f64>, lambda: f64, x: f64) -> Result<[f64; 3], FamilyError> {
    positive(x)?;
    let a2 = p.alpha * p.alpha;
    let z = libm::exp(-p.alpha * x);
    let s = -libm::expm1(-p.alpha * x);
    let y = z / s;
    let ll = p.l * (p.l + 1.0);
    let j = p.two_j.as_f64();
    let qterm = 0.25 * p.q * a2 * y * y * (p.q * z * z + (lambda - 4.0 * j) * z - corr_const(p, lambda));
    Ok([a2 * (ll + 0.5 * p.a) * y, ll * a2 * y * y, qterm])
}

/// The three terms of the displayed Hultén potential, reproduced literally.
pub fn hulthen_terms_printed(p: &HyperbolicParams<f64>, lambda: f64, x: f64) -> Result<[f64; 3], FamilyError> {
    positive(x)?;
    let a2 = p.alpha * p.alpha;
    let z = libm::exp(-p.alpha * x);
    let s = -libm::expm1(-p.alpha * x);
    let y = z / s;
    let ll = p.l * (p.l + 1.0);
    let j = p.two_j.as_f64();
    let e = libm::expm1(2.0 * p.alpha * x);
    let qterm = p.q * a2 / (4.0 * e * e) * (p.q * z * z + (lambda - 4.0 * j) * z - corr_const(p, lambda));
    Ok([0.5 * a2 * (2.0 * ll + p.a) * y, ll * p.a * (p.alpha * y) * (p.alpha * y), qterm])
}

/// Literal displayed Hultén potential.
pub fn hulthen_printed(p: &HyperbolicParams<f64>, lambda: f64, x: f64) -> Result<f64, FamilyError> {
    let t = hulthen_terms_printed(p, lambda, x)?;
    finite(t[0] + t[1] + t[2], x)
}

/// Eckart potential evaluated at a complex coordinate, for checking analytic continuations.
pub fn eckart_potential_complex(p: &HyperbolicParams<f64>, lambda: f64, x: Complex64) -> Complex64 {
    let a2 = p.alpha * p.alpha;
    let ax = x * p.alpha;
    let sinh = ax.sinh();
    let csch2 = (sinh * sinh).inv();
    let coth = ax.cosh() / sinh;
    let z = (x * (-2.0 * p.alpha)).exp();
    let e = (x * (2.0 * p.alpha)).exp() - 1.0;
    let j = p.two_j.as_f64();
    let poly = z * z * p.q + z * (lambda - 4.0 * j) - corr_const(p, lambda);
    csch2 * (p.l * (p.l + 1.0) * a2) + coth * (p.a * a2) + poly * (p.q * a2) / (e * e)
}

/// Canonical potential of a family at `x`, for the level with spectral value `root`.
///
/// For the Coulomb pair family the charge is `a = −root`.
pub fn potential_value(params: &FamilyParams<f64>, root: f64, x: f64) -> Result<f64, FamilyError> {
    match params {
        FamilyParams::Eckart(p) => eckart_core(p, root, x, 2.0 * p.alpha),
        FamilyParams::Hulthen(p) => {
            let v = eckart_core(p, root, x / 2.0, 2.0 * p.alpha)?;
            finite(0.25 * (v - p.a * p.alpha * p.alpha), x)
        }
        FamilyParams::RosenMorse(p) => rosen_morse(p, root, x),
        FamilyParams::Coulomb(p) => coulomb(p.ell, p.a, p.q, root, x),
        FamilyParams::CoulombEps(p) => coulomb(p.ell, -root, p.q, root, x),
        FamilyParams::Oscillator(p) => {
            if !x.is_finite() {
                return Err(FamilyError::Domain { x });
            }
            let j = p.two_j.as_f64();
            let c1 = 0.5 * p.a * p.ell - 2.0 * p.q * (1.0 + 2.0 * j);
            let c2 = 0.25 * p.a * p.a - p.q * p.ell;
            finite(((p.q * p.q * x - p.q * p.a) * x + c2) * x * x + c1 * x, x)
        }
    }
}

fn coulomb(ell: f64, a: f64, q: f64, eps: f64, x: f64) -> Result<f64, FamilyError> {
    positive(x)?;
    finite(ell * (ell + 1.0) / (x * x) + a / x - q * (eps + a) * x + q * q * x * x, x)
}
