//! From parameters to verified levels: recurrence, roots, eigenfunctions, energies, residuals.

use alloc::vec::Vec;

use crate::bd_recurrence::{
    build_sequence, coeff_vector_from_ode, make_recurrence, spectrum_roots, RecurrenceError,
};
use crate::families::{
    exact_case, gauge_energy, is_normalizable, stated_energy, EigenfunctionSpec, FamilyError, FamilyParams,
};
use crate::numkit::{Coeff, Mode, NumError, Rational, RootSet};
use crate::oracle::{audit_grid, derive_energy, residual_norm, GridSpec, OracleError};
use crate::transforms::TransformError;

/// Any failure of the library, tagged with the module it came from.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum QesError {
    /// Parameter or evaluation failure in the families layer.
    #[error("families: {0}")]
    Family(#[from] FamilyError),
    /// Recurrence failure.
    #[error("bd_recurrence: {0}")]
    Recurrence(RecurrenceError),
    /// Arithmetic or root-finding failure.
    #[error("numkit: {0}")]
    Num(#[from] NumError),
    /// Oracle failure.
    #[error("oracle: {0}")]
    Oracle(OracleError),
    /// Transform or limit-scan failure.
    #[error("transforms: {0}")]
    Transform(TransformError),
    /// A sub-operation of the audit failed while checking one formula.
    #[error("oracle: while auditing {formula}: {source}")]
    Audit {
        /// Formula under test.
        formula: &'static str,
        /// Underlying failure.
        source: alloc::boxed::Box<QesError>,
    },
    /// A level index was given for a family state that is not exactly solvable.
    #[error("families: m selects an exactly solvable level and needs q = 0")]
    LevelIndexNeedsZeroQ,
}

impl From<RecurrenceError> for QesError {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::Family(f) => QesError::Family(f),
            RecurrenceError::Num(n) => QesError::Num(n),
            other => QesError::Recurrence(other),
        }
    }
}

impl From<OracleError> for QesError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Family(f) => QesError::Family(f),
            other => QesError::Oracle(other),
        }
    }
}

impl From<TransformError> for QesError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Family(f) => QesError::Family(f),
            other => QesError::Transform(other),
        }
    }
}

impl QesError {
    /// Whether the failure is a rejected input rather than a numerical breakdown.
    pub fn is_validation(&self) -> bool {
        match self {
            QesError::Family(f) => matches!(
                f,
                FamilyError::UnknownFamily
                    | FamilyError::InvalidJ
                    | FamilyError::InvalidParameter { .. }
                    | FamilyError::NotExactlySolvable
            ),
            QesError::Recurrence(r) => matches!(r, RecurrenceError::ExactlySolvable | RecurrenceError::OutOfRange { .. }),
            QesError::Num(n) => matches!(n, NumError::Parse(_)),
            QesError::Oracle(o) => matches!(o, OracleError::InvalidGrid(_) | OracleError::TooManyEigenvalues { .. }),
            QesError::Transform(t) => matches!(
                t,
                TransformError::BadAlpha { .. }
                    | TransformError::BadAlphaList
                    | TransformError::EmptyProbe
                    | TransformError::ZeroQ
                    | TransformError::WrongFamily { .. }
            ),
            QesError::Audit { source, .. } => source.is_validation(),
            QesError::LevelIndexNeedsZeroQ => true,
        }
    }
}

/// Displayed closed forms of an exactly solvable level.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactReadings {
    /// Polynomial degree `m`.
    pub m: usize,
    /// Spectral value from the displayed closed form.
    pub printed_root: f64,
    /// Displayed closed-form energy.
    pub printed_energy: f64,
    /// The family's general energy formula at the displayed spectral value.
    pub stated_at_printed_root: f64,
}

/// One quantized level with its oracle checks.
#[derive(Clone, Debug, PartialEq)]
pub struct QesLevel {
    /// Spectral value (`λ` or `ε`).
    pub root: f64,
    /// Exact spectral value when it is rational and known exactly.
    pub exact_root: Option<Rational>,
    /// Multiplicity as a root of the critical polynomial.
    pub multiplicity: usize,
    /// Displayed energy formula at the root.
    pub e_stated: f64,
    /// Energy implied by the gauge identity in closed form.
    pub e_gauge: f64,
    /// Energy measured on the grid from `V − ψ″/ψ`.
    pub e_derived: f64,
    /// Standard deviation of `V − ψ″/ψ` over the grid.
    pub constancy: f64,
    /// Relative residual `‖−ψ″ + (V − E_derived)ψ‖ / ‖ψ‖`.
    pub residual: f64,
    /// Whether `∫|ψ|²` converges.
    pub normalizable: bool,
    /// Polynomial coefficients, `c_0 = 1` unless the constant term vanishes.
    pub coeffs: Vec<f64>,
    /// Closed forms, for exactly solvable levels.
    pub exact: Option<ExactReadings>,
    /// Grid used for the checks.
    pub grid: GridSpec,
    /// Evaluable eigenfunction.
    pub spec: EigenfunctionSpec,
}

/// The solvable part of a spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Parameters as doubles.
    pub params: FamilyParams<f64>,
    /// Arithmetic used for the recurrence.
    pub mode: Mode,
    /// Critical polynomial coefficients (ascending), absent for exactly solvable levels.
    pub critical: Option<Vec<f64>>,
    /// Roots of the critical polynomial, absent for exactly solvable levels.
    pub roots: Option<RootSet>,
    /// Levels sorted by derived energy.
    pub levels: Vec<QesLevel>,
}

/// Oracle checks of one eigenfunction.
pub struct LevelChecks {
    /// Evaluable eigenfunction.
    pub spec: EigenfunctionSpec,
    /// Grid used.
    pub grid: GridSpec,
    /// Derived energy.
    pub e_derived: f64,
    /// Constancy deviation.
    pub constancy: f64,
    /// Residual at the derived energy.
    pub residual: f64,
    /// Normalizability flag.
    pub normalizable: bool,
}

/// Assembles an eigenfunction and runs the gauge-identity checks on it.
pub fn check_level(
    params: &FamilyParams<f64>,
    root: f64,
    coeffs: Vec<f64>,
    grid: Option<GridSpec>,
) -> Result<LevelChecks, QesError> {
    let spec = EigenfunctionSpec::new(params, root, coeffs)?;
    let grid = match grid {
        Some(g) => g,
        None => audit_grid(&spec)?,
    };
    let (e_derived, constancy) = derive_energy(&spec, &grid)?;
    let residual = residual_norm(&spec, e_derived, &grid)?;
    let normalizable = is_normalizable(&spec);
    Ok(LevelChecks { spec, grid, e_derived, constancy, residual, normalizable })
}

fn level(
    params: &FamilyParams<f64>,
    root: f64,
    exact_root: Option<Rational>,
    multiplicity: usize,
    coeffs: Vec<f64>,
    exact: Option<ExactReadings>,
    grid: Option<GridSpec>,
) -> Result<QesLevel, QesError> {
    let c = check_level(params, root, coeffs.clone(), grid)?;
    Ok(QesLevel {
        root,
        exact_root,
        multiplicity,
        e_stated: stated_energy(params, &root),
        e_gauge: gauge_energy(params, &root),
        e_derived: c.e_derived,
        constancy: c.constancy,
        residual: c.residual,
        normalizable: c.normalizable,
        coeffs,
        exact,
        grid: c.grid,
        spec: c.spec,
    })
}

/// Computes every level of the solvable part of the spectrum.
///
/// With `q ≠ 0` the levels are the real roots of the critical polynomial. With `q = 0` and
/// `j > 0`, or when `m` is given, the exactly solvable level of degree `m` (default `2j`) is
/// returned instead. `grid` overrides the per-level audit grid.
pub fn solve_spectrum<T: Coeff>(
    params: &FamilyParams<T>,
    m: Option<usize>,
    grid: Option<GridSpec>,
) -> Result<Spectrum, QesError> {
    params.validate()?;
    let pf = params.to_float();
    let degree = params.two_j().degree();
    let q_zero = params.q().is_zero();
    if m.is_some() && !q_zero {
        return Err(QesError::LevelIndexNeedsZeroQ);
    }
    if q_zero && (m.is_some() || degree > 0) {
        let m = m.unwrap_or(degree);
        let ex = exact_case(params, m)?;
        let readings = ExactReadings {
            m,
            printed_root: ex.printed_root.to_f64(),
            printed_energy: ex.printed_energy.to_f64(),
            stated_at_printed_root: ex.stated_energy.to_f64(),
        };
        let exact_root = ex.root.to_rational();
        let lvl = level(&pf, ex.root.to_f64(), exact_root, 1, ex.coeffs.to_f64(), Some(readings), grid)?;
        return Ok(Spectrum { params: pf, mode: T::MODE, critical: None, roots: None, levels: alloc::vec![lvl] });
    }
    let seq = build_sequence(&make_recurrence(params)?)?;
    let roots = spectrum_roots(&seq)?;
    let mut levels = Vec::with_capacity(roots.real_roots.len());
    for r in &roots.real_roots {
        let coeffs = match &r.exact {
            Some(q) => coeff_vector_from_ode(params, &T::from_rational(q))?.to_f64(),
            None => coeff_vector_from_ode(&pf, &r.value)?.c,
        };
        levels.push(level(&pf, r.value, r.exact.clone(), r.multiplicity, coeffs, None, grid)?);
    }
    levels.sort_by(|a, b| a.e_derived.total_cmp(&b.e_derived).then(a.root.total_cmp(&b.root)));
    Ok(Spectrum {
        params: pf,
        mode: T::MODE,
        critical: Some(seq.critical.to_float().coeffs().to_vec()),
        roots: Some(roots),
        levels,
    })
}
