//! Paper-independent numerical checks: a finite-difference eigensolver, the gauge identity
//! (energy re-derivation, residuals, reconstructed potentials) and the formula audit.

mod audit;
mod fd;
mod gauge;
mod grid;
mod printed;

pub use audit::{audit_family, AuditReport, Finding, LevelSummary, ParamValue, Verdict, FORMULA_IDS};
pub use fd::{fd_spectrum, FdOperator};
pub use gauge::{derive_energy, oracle_potential, residual_norm, MIN_VALID, NODE_CUTOFF};
pub use grid::{audit_grid, fd_domain, GridSpec, MIN_POINTS};
pub use printed::{displayed_pair_polynomial, displayed_pair_roots};

use crate::families::FamilyError;

/// Failure of an oracle computation.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum OracleError {
    /// The grid is malformed.
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    /// The potential is not finite at a grid point.
    #[error("potential is not finite at x = {x}")]
    NonFinitePotential {
        /// Offending point.
        x: f64,
    },
    /// Too few usable points (the eigenfunction vanishes or underflows on the grid).
    #[error("degenerate grid: too few points where the eigenfunction is usable")]
    DegenerateGrid,
    /// More eigenvalues requested than grid points.
    #[error("requested {k} eigenvalues from a grid with {n} points")]
    TooManyEigenvalues {
        /// Requested count.
        k: usize,
        /// Grid size.
        n: usize,
    },
    /// Eigenfunction or potential evaluation failed.
    #[error(transparent)]
    Family(#[from] FamilyError),
}
