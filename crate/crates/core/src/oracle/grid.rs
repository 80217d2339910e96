//! Uniform Dirichlet grids and the per-level audit grid.

use alloc::vec::Vec;

use super::OracleError;
use crate::families::{default_domain, gauge_energy, inverse_length, EigenfunctionSpec};

/// Smallest admissible number of interior points.
pub const MIN_POINTS: usize = 64;

/// Uniform grid with `n` interior points and Dirichlet ends, spacing `h = (x_max − x_min)/(n+1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    /// Left end (where `ψ = 0`).
    pub x_min: f64,
    /// Right end (where `ψ = 0`).
    pub x_max: f64,
    /// Number of interior points.
    pub n: usize,
}

impl GridSpec {
    /// Checked constructor.
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, OracleError> {
        if n < MIN_POINTS {
            return Err(OracleError::InvalidGrid("n must be at least 64"));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(OracleError::InvalidGrid("need finite x_min < x_max"));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// Grid spacing.
    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n + 1) as f64
    }

    /// Interior point `i` (1-based, `1 ≤ i ≤ n`).
    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.h()
    }

    /// All interior points.
    pub fn points(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.point(i)).collect()
    }
}

/// Interval for finite-difference spectra of a level's potential: the level's default domain,
/// with a half-line interval extended to start at the singular point `x = 0`. Dirichlet ends
/// are never sampled, so the singular value itself is never evaluated.
pub fn fd_domain(spec: &EigenfunctionSpec) -> (f64, f64) {
    let (lo, hi) = default_domain(spec);
    if spec.params.family().is_whole_line() {
        (lo, hi)
    } else {
        (0.0, hi)
    }
}

/// Drop in `ln|gauge|` below its maximum that bounds the audit window.
const WINDOW_LOG_DROP: f64 = 36.0;
/// Coarse samples used to place the audit window.
const COARSE: usize = 2001;
/// Log-slope bound, in units of the level's inverse length, that keeps the window off singular ends.
const SLOPE_LIMIT: f64 = 24.0;
/// Step constant: with `h = STEP / K` the sixth-order truncation error and the rounding of the
/// seven-point stencil both stay near `10⁻⁹ K²`.
const STEP: f64 = 0.01;
/// Bounds on the number of audit grid points.
const AUDIT_POINTS: (usize, usize) = (256, 400_000);

/// Grid on which a level's gauge identity is checked.
///
/// The window is anchored at the highest interior local maximum of `ln|gauge|` and extends
/// while `ln|gauge|` stays within 36 below it and its slope stays below a limit set by the
/// decaying side. A gauge without an interior maximum is anchored at its flattest point
/// instead, and the window keeps `ln|gauge|` within 36 of the anchor value on either side.
/// This keeps the window off singular ends and off exploding tails. The spacing follows the largest local wavenumber `K`
/// found in the window.
pub fn audit_grid(spec: &EigenfunctionSpec) -> Result<GridSpec, OracleError> {
    let whole = spec.params.family().is_whole_line();
    let (lo, hi) = default_domain(spec);
    let k = inverse_length(spec);
    let step = (hi - lo) / (COARSE - 1) as f64;
    let xs: Vec<f64> = (0..COARSE).map(|i| lo + step * i as f64).collect();
    let logs: Vec<f64> = xs.iter().map(|&x| spec.gauge.log_abs(x).unwrap_or(f64::NEG_INFINITY)).collect();
    let best = |range: &mut dyn Iterator<Item = usize>| {
        range.fold(None::<usize>, |b, i| match b {
            Some(j) if logs[j] >= logs[i] => Some(j),
            _ if logs[i].is_finite() => Some(i),
            _ => b,
        })
    };
    let slope = |i: usize| -> f64 {
        let (a, b) = (i.saturating_sub(1), (i + 1).min(COARSE - 1));
        libm::fabs((logs[b] - logs[a]) / (xs[b] - xs[a]))
    };
    let interior = best(&mut (1..COARSE - 1).filter(|&i| logs[i] >= logs[i - 1] && logs[i] >= logs[i + 1]));
    let (anchor, band, limit) = match interior {
        Some(peak_i) => {
            let peak = logs[peak_i];
            let in_drop = |i: usize| logs[i] >= peak - WINDOW_LOG_DROP;
            let (mut dl, mut dr) = (peak_i, peak_i);
            while dl > 0 && in_drop(dl - 1) {
                dl -= 1;
            }
            while dr + 1 < COARSE && in_drop(dr + 1) {
                dr += 1;
            }
            let decaying_slope = if whole { slope(dl).min(slope(dr)) } else { slope(dr) };
            (peak_i, (peak - WINDOW_LOG_DROP, peak), (SLOPE_LIMIT * k).max(2.0 * decaying_slope))
        }
        None => {
            // no bump to centre on: use the flattest stretch of the gauge instead
            let flat = (0..COARSE)
                .filter(|&i| logs[i].is_finite())
                .min_by(|&i, &j| slope(i).total_cmp(&slope(j)))
                .ok_or(OracleError::DegenerateGrid)?;
            let mid = logs[flat];
            (flat, (mid - WINDOW_LOG_DROP, mid + WINDOW_LOG_DROP), (SLOPE_LIMIT * k).max(2.0 * slope(flat)))
        }
    };
    let keep = |i: usize| logs[i] >= band.0 && logs[i] <= band.1 && slope(i) <= limit;
    let mut left = anchor;
    while left > 0 && keep(left - 1) {
        left -= 1;
    }
    let mut right = anchor;
    while right + 1 < COARSE && keep(right + 1) {
        right += 1;
    }
    // keep at least a few coarse cells around the anchor
    let left = left.min(anchor.saturating_sub(4));
    let right = right.max((anchor + 4).min(COARSE - 1));
    let (a, b) = (xs[left], xs[right]);

    let energy = gauge_energy(&spec.params, &spec.root);
    let mut wavenumber = k;
    for (i, &x) in xs.iter().enumerate().take(right + 1).skip(left) {
        wavenumber = wavenumber.max(slope(i));
        if let Ok(v) = spec.potential(x) {
            wavenumber = wavenumber.max(libm::sqrt(libm::fabs(v - energy)));
        }
    }
    let h = STEP / wavenumber;
    let n = libm::ceil((b - a) / h);
    let n = if n.is_finite() { (n as usize).clamp(AUDIT_POINTS.0, AUDIT_POINTS.1) } else { AUDIT_POINTS.1 };
    GridSpec::new(a, b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{FamilyParams, PairParams, TwoJ};
    use alloc::vec;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 1.0, 63).is_err());
        assert!(GridSpec::new(1.0, 1.0, 100).is_err());
        let g = GridSpec::new(0.0, 1.0, 99).unwrap();
        assert!((g.h() - 0.01).abs() < 1e-15);
        assert!((g.point(99) - 0.99).abs() < 1e-12);
    }

    #[test]
    fn audit_grid_covers_the_bulk() {
        let p = FamilyParams::CoulombEps(PairParams { ell: 0.0, q: 1.0, two_j: TwoJ(1) });
        let s = EigenfunctionSpec::new(&p, -2.0, vec![1.0, 1.0]).unwrap();
        let g = audit_grid(&s).unwrap();
        assert!(g.x_min < 0.1 && g.x_max > 6.0, "{g:?}");
    }

    #[test]
    fn audit_grid_avoids_the_exploding_tail() {
        use crate::families::OscillatorParams;
        let p = FamilyParams::Oscillator(OscillatorParams { ell: 2.0, a: 2.0, q: 1.0, two_j: TwoJ(0) });
        let s = EigenfunctionSpec::new(&p, -3.0, vec![1.0]).unwrap();
        let g = audit_grid(&s).unwrap();
        // the window keeps the valley at x = -0.618 but stops where the cubic tail climbs past the bump
        assert!(g.x_min > -3.0 && g.x_min < -0.7 && g.x_max > 4.0, "{g:?}");
    }
}
