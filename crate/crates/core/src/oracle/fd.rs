//! Finite-difference bound states by Sturm-count bisection on the tridiagonal matrix.

use alloc::vec::Vec;

use super::{GridSpec, OracleError};

/// Diagonal of `−d²/dx² + V` on the grid (off-diagonal entries are all `−1/h²`).
fn diagonal(v: &dyn Fn(f64) -> f64, g: &GridSpec) -> Result<Vec<f64>, OracleError> {
    let inv_h2 = 1.0 / (g.h() * g.h());
    (1..=g.n)
        .map(|i| {
            let x = g.point(i);
            let vx = v(x);
            if vx.is_finite() {
                Ok(2.0 * inv_h2 + vx)
            } else {
                Err(OracleError::NonFinitePotential { x })
            }
        })
        .collect()
}

/// Number of eigenvalues strictly below `lambda`.
fn count_below(diag: &[f64], off2: f64, lambda: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        d = if i == 0 { a - lambda } else { a - lambda - off2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (libm::fabs(a) + libm::fabs(lambda) + f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Tridiagonal discretization ready for eigenvalue counting.
pub struct FdOperator {
    diag: Vec<f64>,
    off2: f64,
    lo: f64,
    hi: f64,
}

impl FdOperator {
    /// Discretizes `−d²/dx² + V` with Dirichlet ends.
    pub fn new(v: &dyn Fn(f64) -> f64, g: &GridSpec) -> Result<Self, OracleError> {
        let diag = diagonal(v, g)?;
        let off = 1.0 / (g.h() * g.h());
        let lo = diag.iter().copied().fold(f64::INFINITY, f64::min) - 2.0 * off;
        let hi = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 2.0 * off;
        Ok(Self { diag, off2: off * off, lo, hi })
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        count_below(&self.diag, self.off2, lambda)
    }

    /// Eigenvalue `index` (0-based, ascending) by bisection between the Gershgorin bounds.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        let (mut lo, mut hi) = (self.lo, self.hi);
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The eigenvalue nearest to `target`.
    pub fn nearest(&self, target: f64) -> f64 {
        let below = self.count_below(target);
        let up = (below < self.diag.len()).then(|| self.eigenvalue(below));
        let down = below.checked_sub(1).map(|i| self.eigenvalue(i));
        match (down, up) {
            (Some(d), Some(u)) => {
                if libm::fabs(d - target) <= libm::fabs(u - target) {
                    d
                } else {
                    u
                }
            }
            (Some(d), None) => d,
            (None, Some(u)) => u,
            (None, None) => f64::NAN,
        }
    }
}

/// Lowest `k` eigenvalues of `−d²/dx² + V` on the grid with Dirichlet ends, ascending.
pub fn fd_spectrum(v: &dyn Fn(f64) -> f64, g: &GridSpec, k: usize) -> Result<Vec<f64>, OracleError> {
    if k > g.n {
        return Err(OracleError::TooManyEigenvalues { k, n: g.n });
    }
    let op = FdOperator::new(v, g)?;
    Ok((0..k).map(|i| op.eigenvalue(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_levels() {
        let g = GridSpec::new(-12.0, 12.0, 6000).unwrap();
        let e = fd_spectrum(&|x| x * x, &g, 3).unwrap();
        for (got, want) in e.iter().zip([1.0, 3.0, 5.0]) {
            assert!((got - want).abs() < 1e-4, "{got}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = GridSpec::new(0.0, 1.0, 64).unwrap();
        assert!(matches!(fd_spectrum(&|_| f64::NAN, &g, 1), Err(OracleError::NonFinitePotential { .. })));
        assert!(matches!(fd_spectrum(&|_| 0.0, &g, 65), Err(OracleError::TooManyEigenvalues { .. })));
    }

    #[test]
    fn nearest_eigenvalue() {
        let g = GridSpec::new(-12.0, 12.0, 4000).unwrap();
        let op = FdOperator::new(&|x| x * x, &g).unwrap();
        assert!((op.nearest(3.4) - 3.0).abs() < 1e-3);
        assert!((op.nearest(-10.0) - 1.0).abs() < 1e-3);
    }
}
