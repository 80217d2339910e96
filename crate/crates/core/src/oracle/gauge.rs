//! The gauge identity `V − ψ″/ψ = E`: energy re-derivation, residual norms and the
//! potential reconstructed from an eigenfunction.

use alloc::vec::Vec;

use super::{GridSpec, OracleError};
use crate::families::EigenfunctionSpec;

/// Points with `|ψ|` below this fraction of the grid maximum are left out of ratios.
pub const NODE_CUTOFF: f64 = 1e-8;
/// Fewest points a statistic may rest on.
pub const MIN_VALID: usize = 16;

/// Weights of the sixth-order central second difference, over `180 h²`.
const D2_WEIGHTS: [f64; 7] = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];

/// Sampled eigenfunction with a seven-point second derivative at every point
/// at least three steps from either end.
struct Sampled {
    xs: Vec<f64>,
    psi: Vec<f64>,
    d2: Vec<f64>,
    max_abs: f64,
}

fn sample(spec: &EigenfunctionSpec, g: &GridSpec) -> Result<Sampled, OracleError> {
    let all = g.points();
    let h = g.h();
    let n = all.len();
    // GridSpec guarantees at least 64 points
    let inner = &all[3..n - 3];
    let logs = inner.iter().map(|&x| spec.gauge.log_abs(x)).collect::<Result<Vec<_>, _>>()?;
    let shift = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut xs = Vec::with_capacity(inner.len());
    let mut psi = Vec::with_capacity(inner.len());
    let mut d2 = Vec::with_capacity(inner.len());
    for (&x, &lg) in inner.iter().zip(&logs) {
        // the stencil is formed in local gauge units, then every point is put on one common scale
        let v = spec.stencil(x, h)?;
        let scale = libm::exp(lg - shift);
        let s: f64 = v.iter().zip(D2_WEIGHTS).map(|(f, w)| f * w).sum();
        xs.push(x);
        psi.push(v[3] * scale);
        d2.push(s / (180.0 * h * h) * scale);
    }
    let max_abs = psi.iter().map(|v| libm::fabs(*v)).fold(0.0, f64::max);
    if !(max_abs > 1e-300 && max_abs.is_finite()) {
        return Err(OracleError::DegenerateGrid);
    }
    Ok(Sampled { xs, psi, d2, max_abs })
}

/// `(x, V(x) − ψ″(x)/ψ(x))` at every point where `|ψ| ≥ cutoff·max|ψ|`.
fn local_energies(spec: &EigenfunctionSpec, g: &GridSpec, cutoff: f64) -> Result<Vec<(f64, f64)>, OracleError> {
    let s = sample(spec, g)?;
    let mut out = Vec::new();
    for i in 0..s.xs.len() {
        if libm::fabs(s.psi[i]) < cutoff * s.max_abs {
            continue;
        }
        let v = spec.potential(s.xs[i])?;
        out.push((s.xs[i], v - s.d2[i] / s.psi[i]));
    }
    if out.len() < MIN_VALID {
        return Err(OracleError::DegenerateGrid);
    }
    Ok(out)
}

/// Energy implied by the eigenfunction: the mean of `V − ψ″/ψ` over the grid (nodes excluded),
/// and the standard deviation of that quantity.
pub fn derive_energy(spec: &EigenfunctionSpec, g: &GridSpec) -> Result<(f64, f64), OracleError> {
    let vals = local_energies(spec, g, NODE_CUTOFF)?;
    let n = vals.len() as f64;
    let mean = vals.iter().map(|v| v.1).sum::<f64>() / n;
    let var = vals.iter().map(|v| (v.1 - mean) * (v.1 - mean)).sum::<f64>() / n;
    Ok((mean, libm::sqrt(var)))
}

/// `‖−ψ″ + (V − E)ψ‖₂ / ‖ψ‖₂` over the grid, three points at each end excluded.
pub fn residual_norm(spec: &EigenfunctionSpec, energy: f64, g: &GridSpec) -> Result<f64, OracleError> {
    let s = sample(spec, g)?;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..s.xs.len() {
        let v = spec.potential(s.xs[i])?;
        let r = -s.d2[i] + (v - energy) * s.psi[i];
        num += r * r;
        den += s.psi[i] * s.psi[i];
    }
    if den < 1e-300 {
        return Err(OracleError::DegenerateGrid);
    }
    Ok(libm::sqrt(num / den))
}

/// Potential rebuilt from the eigenfunction, `ψ″/ψ + E`, at up to `count` evenly spread
/// points where `|ψ| ≥ cutoff·max|ψ|`.
pub fn oracle_potential(
    spec: &EigenfunctionSpec,
    energy: f64,
    g: &GridSpec,
    cutoff: f64,
    count: usize,
) -> Result<Vec<(f64, f64)>, OracleError> {
    let s = sample(spec, g)?;
    let valid: Vec<usize> = (0..s.xs.len()).filter(|&i| libm::fabs(s.psi[i]) >= cutoff * s.max_abs).collect();
    if valid.len() < MIN_VALID.min(count) || valid.is_empty() {
        return Err(OracleError::DegenerateGrid);
    }
    let take = count.min(valid.len()).max(1);
    Ok((0..take)
        .map(|k| {
            let i = valid[if take == 1 { 0 } else { k * (valid.len() - 1) / (take - 1) }];
            (s.xs[i], s.d2[i] / s.psi[i] + energy)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyParams, HyperbolicParams, OscillatorParams, PairParams, TwoJ};
    use alloc::vec;

    fn pair() -> EigenfunctionSpec {
        let p = FamilyParams::CoulombEps(PairParams { ell: 0.0, q: 1.0, two_j: TwoJ(1) });
        EigenfunctionSpec::new(&p, -2.0, vec![1.0, 1.0]).unwrap()
    }

    #[test]
    fn two_electron_identity() {
        let g = GridSpec::new(1e-3, 12.0, 12000).unwrap();
        let s = pair();
        let (e, dev) = derive_energy(&s, &g).unwrap();
        assert!((e - 5.0).abs() < 1e-8 && dev < 1e-8, "{e} {dev}");
        assert!(residual_norm(&s, 5.0, &g).unwrap() < 1e-8);
        assert!(residual_norm(&s, 5.1, &g).unwrap() > 1e-2);
    }

    #[test]
    fn oscillator_and_eckart_identities() {
        let osc = FamilyParams::Oscillator(OscillatorParams { ell: 2.0, a: 2.0, q: 1.0, two_j: TwoJ(0) });
        let s = EigenfunctionSpec::new(&osc, -3.0, vec![1.0]).unwrap();
        let g = GridSpec::new(-1.5, 2.5, 4000).unwrap();
        let (e, dev) = derive_energy(&s, &g).unwrap();
        assert!((e + 2.0).abs() < 1e-8 && dev < 1e-8, "{e} {dev}");
        assert!(residual_norm(&s, -2.0, &g).unwrap() < 1e-8);

        let eck = FamilyParams::Eckart(HyperbolicParams { l: 0.0, a: 12.0, q: 0.0, alpha: 1.0, two_j: TwoJ(0) });
        let s = EigenfunctionSpec::new(&eck, 8.0, vec![1.0]).unwrap();
        let g = GridSpec::new(0.05, 5.0, 40000).unwrap();
        let (e, dev) = derive_energy(&s, &g).unwrap();
        assert!((e + 37.0).abs() < 1e-6 && dev < 1e-6, "{e} {dev}");
    }

    #[test]
    fn reconstructed_potential_matches() {
        let g = GridSpec::new(1e-3, 12.0, 12000).unwrap();
        let s = pair();
        for (x, v) in oracle_potential(&s, 5.0, &g, 1e-3, 40).unwrap() {
            assert!((v - (2.0 / x + x * x)).abs() < 1e-6 * (1.0 + v.abs()));
        }
    }
}
