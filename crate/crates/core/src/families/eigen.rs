//! Closed-form eigenfunctions: gauge factor times the polynomial part in a mapped variable.

use alloc::vec::Vec;

use super::{potential_value, FamilyError, FamilyParams};

/// How the coordinate is mapped into the polynomial's variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VariableMap {
    /// `t = e^{−rate·x}`.
    Exponential {
        /// Exponential rate.
        rate: f64,
    },
    /// `t = −e^{−rate·x}` (the continued Eckart variable).
    NegatedExponential {
        /// Exponential rate.
        rate: f64,
    },
    /// `t = x`.
    Identity,
}

impl VariableMap {
    /// Mapped variable at `x`.
    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            VariableMap::Exponential { rate } => libm::exp(-rate * x),
            VariableMap::NegatedExponential { rate } => -libm::exp(-rate * x),
            VariableMap::Identity => x,
        }
    }

    /// `t(x + d) − t(x)`, accurate for small `d` (no cancellation between the two values).
    pub fn increment(&self, x: f64, d: f64) -> f64 {
        match *self {
            VariableMap::Exponential { rate } | VariableMap::NegatedExponential { rate } => {
                self.apply(x) * libm::expm1(-rate * d)
            }
            VariableMap::Identity => d,
        }
    }
}

/// The non-polynomial prefactor of an eigenfunction, stored through its logarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gauge {
    /// `(1 − t)^power · t^(−growth) · e^(−q t / 2)` with `t = e^{−rate·x}`, on `x > 0`.
    Hyperbolic {
        /// Exponent `L + 1 − q/2` of `1 − t`.
        power: f64,
        /// Exponent `(4L + 4j + 6 + λ)/4` of `1/t`.
        growth: f64,
        /// Deformation strength `q`.
        q: f64,
        /// Rate of the exponential variable.
        rate: f64,
    },
    /// `(1 + w)^power · w^(−growth) · e^(q w / 2)` with `w = e^{−rate·x}`, on the whole line.
    Continued {
        /// Exponent of `1 + w`.
        power: f64,
        /// Exponent of `1/w`.
        growth: f64,
        /// Deformation strength `q`.
        q: f64,
        /// Rate of the exponential variable.
        rate: f64,
    },
    /// `x^(ℓ+1) · e^{b x − q x²/2}` with `b = (ε + a)/2`, on `x > 0`.
    Coulomb {
        /// `ℓ + 1`.
        power: f64,
        /// Linear exponent coefficient `(ε + a)/2`.
        b: f64,
        /// Oscillator strength `q`.
        q: f64,
    },
    /// `e^{ℓx/2 + a x²/4 − q x³/3}` on the whole line.
    Oscillator {
        /// Linear coefficient `ℓ`.
        ell: f64,
        /// Quadratic coefficient `a`.
        a: f64,
        /// Cubic coefficient `q`.
        q: f64,
    },
}

impl Gauge {
    /// `ln |gauge(x)|`; `Err` outside the domain.
    pub fn log_abs(&self, x: f64) -> Result<f64, FamilyError> {
        if !x.is_finite() {
            return Err(FamilyError::Domain { x });
        }
        match *self {
            Gauge::Hyperbolic { power, growth, q, rate } => {
                if x <= 0.0 {
                    return Err(FamilyError::Domain { x });
                }
                let t = libm::exp(-rate * x);
                let one_minus_t = -libm::expm1(-rate * x);
                Ok(power * libm::log(one_minus_t) + growth * rate * x - 0.5 * q * t)
            }
            Gauge::Continued { power, growth, q, rate } => {
                let rx = rate * x;
                // ln(1 + e^{−rx}) without overflow for very negative x
                let ln1p_w = if rx > 0.0 { libm::log1p(libm::exp(-rx)) } else { -rx + libm::log1p(libm::exp(rx)) };
                let w = libm::exp(-rx);
                Ok(power * ln1p_w + growth * rx + 0.5 * q * w)
            }
            Gauge::Coulomb { power, b, q } => {
                if x <= 0.0 {
                    return Err(FamilyError::Domain { x });
                }
                Ok(power * libm::log(x) + b * x - 0.5 * q * x * x)
            }
            Gauge::Oscillator { ell, a, q } => Ok(x * (0.5 * ell + x * (0.25 * a - q * x / 3.0))),
        }
    }
}

impl Gauge {
    /// `ln |gauge(x + d) / gauge(x)|`, computed from differences so that it stays accurate
    /// when both logarithms are large; `Err` when either point is outside the domain.
    pub fn log_ratio(&self, x: f64, d: f64) -> Result<f64, FamilyError> {
        let y = x + d;
        if !(x.is_finite() && y.is_finite()) {
            return Err(FamilyError::Domain { x: y });
        }
        match *self {
            Gauge::Hyperbolic { power, growth, q, rate } => {
                if x <= 0.0 || y <= 0.0 {
                    return Err(FamilyError::Domain { x: if x <= 0.0 { x } else { y } });
                }
                let t = libm::exp(-rate * x);
                let dt = t * libm::expm1(-rate * d);
                let one_minus_t = -libm::expm1(-rate * x);
                Ok(power * libm::log1p(-dt / one_minus_t) + growth * rate * d - 0.5 * q * dt)
            }
            Gauge::Continued { power, growth, q, rate } => {
                let w = libm::exp(-rate * x);
                let dw = w * libm::expm1(-rate * d);
                let shrink = if w > 1.0 { 1.0 / (1.0 + 1.0 / w) } else { w / (1.0 + w) };
                Ok(power * libm::log1p(shrink * libm::expm1(-rate * d)) + growth * rate * d + 0.5 * q * dw)
            }
            Gauge::Coulomb { power, b, q } => {
                if x <= 0.0 || y <= 0.0 {
                    return Err(FamilyError::Domain { x: if x <= 0.0 { x } else { y } });
                }
                Ok(power * libm::log1p(d / x) + b * d - 0.5 * q * d * (2.0 * x + d))
            }
            Gauge::Oscillator { ell, a, q } => {
                Ok(d * (0.5 * ell + 0.25 * a * (2.0 * x + d) - q * (x * x + x * d + d * d / 3.0)))
            }
        }
    }
}

/// Everything needed to evaluate one eigenfunction pointwise.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenfunctionSpec {
    /// Family parameters (as doubles).
    pub params: FamilyParams<f64>,
    /// Spectral value of the level.
    pub root: f64,
    /// Polynomial coefficients in the mapped variable, ascending.
    pub coeffs: Vec<f64>,
    /// Coordinate map feeding the polynomial.
    pub variable: VariableMap,
    /// Prefactor.
    pub gauge: Gauge,
    /// Overall sign (±1) applied after evaluation.
    pub sign: f64,
}

impl EigenfunctionSpec {
    /// Assembles the eigenfunction of a level from its spectral value and polynomial coefficients.
    pub fn new(params: &FamilyParams<f64>, root: f64, coeffs: Vec<f64>) -> Result<Self, FamilyError> {
        params.validate()?;
        let j = params.two_j().as_f64();
        let (variable, gauge) = match params {
            FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => {
                let rate = match params {
                    FamilyParams::Hulthen(_) => p.alpha,
                    _ => 2.0 * p.alpha,
                };
                let power = p.l + 1.0 - 0.5 * p.q;
                let growth = (4.0 * p.l + 4.0 * j + 6.0 + root) / 4.0;
                if matches!(params, FamilyParams::RosenMorse(_)) {
                    (VariableMap::NegatedExponential { rate }, Gauge::Continued { power, growth, q: p.q, rate })
                } else {
                    (VariableMap::Exponential { rate }, Gauge::Hyperbolic { power, growth, q: p.q, rate })
                }
            }
            FamilyParams::Coulomb(p) => {
                (VariableMap::Identity, Gauge::Coulomb { power: p.ell + 1.0, b: 0.5 * (root + p.a), q: p.q })
            }
            FamilyParams::CoulombEps(p) => (VariableMap::Identity, Gauge::Coulomb { power: p.ell + 1.0, b: 0.0, q: p.q }),
            FamilyParams::Oscillator(p) => (VariableMap::Identity, Gauge::Oscillator { ell: p.ell, a: p.a, q: p.q }),
        };
        let mut spec = Self { params: params.clone(), root, coeffs, variable, gauge, sign: 1.0 };
        if matches!(params, FamilyParams::RosenMorse(_)) {
            spec.sign = spec.center_sign();
        }
        Ok(spec)
    }

    /// Sign making the continued eigenfunction positive at (or nearest to) the centre `x = 0`.
    fn center_sign(&self) -> f64 {
        let scale = match &self.params {
            FamilyParams::RosenMorse(p) => 1.0 / p.alpha,
            _ => 1.0,
        };
        for k in 0..64 {
            let offset = scale * 0.05 * k as f64;
            for x in [offset, -offset] {
                let v = self.poly_value(x);
                if v != 0.0 {
                    return v.signum();
                }
            }
        }
        1.0
    }

    /// Polynomial part at `x`.
    pub fn poly_value(&self, x: f64) -> f64 {
        let t = self.variable.apply(x);
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// `ln |ψ(x)|` (`−∞` at a node).
    pub fn log_abs(&self, x: f64) -> Result<f64, FamilyError> {
        Ok(self.gauge.log_abs(x)? + libm::log(libm::fabs(self.poly_value(x))))
    }

    /// `ψ(x)`; errors when the value overflows.
    pub fn value(&self, x: f64) -> Result<f64, FamilyError> {
        let lg = self.gauge.log_abs(x)?;
        let v = self.sign * libm::exp(lg) * self.poly_value(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FamilyError::Overflow { x })
        }
    }

    /// `ψ` at every point, all multiplied by one common factor `e^{−shift}` so the largest
    /// gauge value is 1; returns the values and `shift`.
    pub fn scaled_values(&self, xs: &[f64]) -> Result<(Vec<f64>, f64), FamilyError> {
        let logs = xs.iter().map(|&x| self.gauge.log_abs(x)).collect::<Result<Vec<_>, _>>()?;
        let shift = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let vals = xs
            .iter()
            .zip(&logs)
            .map(|(&x, &lg)| self.sign * libm::exp(lg - shift) * self.poly_value(x))
            .collect();
        Ok((vals, shift))
    }

    /// `ψ(x + k·h) / |gauge(x)|` for `k = −3, …, 3`: a seven-point stencil in units of the
    /// local gauge, free of the rounding carried by large gauge logarithms.
    pub fn stencil(&self, x: f64, h: f64) -> Result<[f64; 7], FamilyError> {
        // Taylor coefficients of the polynomial at t(x), so every offset enters exactly
        let mut taylor = self.coeffs.clone();
        let t = self.variable.apply(x);
        for k in 0..taylor.len() {
            for i in (k + 1..taylor.len()).rev() {
                let next = taylor[i];
                taylor[i - 1] += t * next;
            }
        }
        let mut out = [0.0; 7];
        for (slot, k) in out.iter_mut().zip(-3i32..=3) {
            let d = k as f64 * h;
            let ratio = if k == 0 { 0.0 } else { self.gauge.log_ratio(x, d)? };
            let dt = self.variable.increment(x, d);
            let poly = taylor.iter().rev().fold(0.0, |acc, c| acc * dt + c);
            *slot = self.sign * libm::exp(ratio) * poly;
        }
        if out.iter().all(|v| v.is_finite()) {
            Ok(out)
        } else {
            Err(FamilyError::Overflow { x })
        }
    }

    /// The family's canonical potential at `x` for this level.
    pub fn potential(&self, x: f64) -> Result<f64, FamilyError> {
        potential_value(&self.params, self.root, x)
    }
}

/// Pointwise eigenfunction value.
pub fn eigenfunction_value(spec: &EigenfunctionSpec, x: f64) -> Result<f64, FamilyError> {
    spec.value(x)
}
