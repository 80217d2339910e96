//! Serializable reports. Every type round-trips through the JSON encoding exactly.

use serde::{Deserialize, Serialize};

use qes_core::families::Family;
use qes_core::numkit::RootMethod;
use qes_core::oracle::{AuditReport, GridSpec, ParamValue, Verdict};
use qes_core::transforms::{ConvergenceRecord, MapVariant};

/// Provenance of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    /// Always `qes`.
    pub tool: String,
    /// Version of the tool.
    pub version: String,
    /// Subcommand that produced the report.
    pub command: String,
    /// Seconds since the Unix epoch; absent under `--reproducible`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

/// How the critical polynomial's roots were found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootDiagnostics {
    /// Algorithm.
    pub method: RootMethod,
    /// Degree of the critical polynomial.
    pub degree: usize,
    /// Real roots, with multiplicity.
    pub real_count: usize,
    /// Non-real roots, with multiplicity.
    pub complex_count: usize,
}

/// Closed forms of an exactly solvable level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    /// Polynomial degree.
    pub m: usize,
    /// Displayed closed-form spectral value.
    pub printed_root: f64,
    /// Displayed closed-form energy.
    pub printed_energy: f64,
    /// General energy formula at the displayed spectral value.
    pub stated_at_printed_root: f64,
}

/// One level of a spectrum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    /// Position in order of derived energy.
    pub index: usize,
    /// Spectral value.
    pub root: f64,
    /// Spectral value as an exact fraction, when known.
    pub root_exact: Option<String>,
    /// Multiplicity as a root of the critical polynomial.
    pub multiplicity: usize,
    /// Displayed energy formula at the root.
    pub e_stated: f64,
    /// Energy from the gauge identity in closed form.
    pub e_gauge: f64,
    /// Energy measured from `V − ψ''/ψ` on the grid.
    pub e_derived: f64,
    /// Standard deviation of `V − ψ''/ψ` on the grid.
    pub constancy: f64,
    /// Relative residual at the derived energy.
    pub residual: f64,
    /// Whether the eigenfunction is square integrable.
    pub normalizable: bool,
    /// Polynomial coefficients, constant term first.
    pub coefficients: Vec<f64>,
    /// Closed forms, for exactly solvable levels.
    pub exact: Option<ExactReport>,
    /// Grid of the checks.
    pub grid: GridSpec,
}

/// Aggregated verdict of one formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictEntry {
    /// Formula identifier.
    pub formula: String,
    /// Worst verdict over the levels.
    pub verdict: Verdict,
    /// Whether a sign flip here is a recorded one.
    pub documented: bool,
}

/// Verdicts attached to a spectrum report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    /// One entry per formula.
    pub formulas: Vec<VerdictEntry>,
    /// Formulas strict mode rejects.
    pub strict_failures: Vec<String>,
}

impl AuditSummary {
    /// Condenses a full audit.
    pub fn of(report: &AuditReport) -> Self {
        Self {
            formulas: report
                .formulas
                .iter()
                .map(|f| VerdictEntry { formula: f.formula.clone(), verdict: f.verdict, documented: f.documented })
                .collect(),
            strict_failures: report.strict_failures().iter().map(|f| f.formula.clone()).collect(),
        }
    }
}

/// Output of `spectrum` at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Provenance.
    pub meta: Meta,
    /// Family.
    pub family: Family,
    /// `rational` or `float`.
    pub precision: String,
    /// `j` as typed in fractions (`1/2`, `1`).
    pub j: String,
    /// Parameter values.
    pub params: Vec<ParamValue>,
    /// Critical polynomial coefficients, constant term first (absent for exactly solvable levels).
    pub critical_polynomial: Option<Vec<f64>>,
    /// Root-finder diagnostics (absent for exactly solvable levels).
    pub root_finder: Option<RootDiagnostics>,
    /// Levels in order of derived energy.
    pub levels: Vec<LevelReport>,
    /// Audit verdicts, when requested.
    pub audit: Option<AuditSummary>,
}

/// Output of `audit` at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditOutput {
    /// Provenance.
    pub meta: Meta,
    /// The audit.
    pub report: AuditReport,
}

/// Probe points of a limit scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeInfo {
    /// First point.
    pub x_min: f64,
    /// Last point.
    pub x_max: f64,
    /// Number of evenly spaced points.
    pub points: usize,
}

/// Output of `limit`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    /// Provenance.
    pub meta: Meta,
    /// Target family.
    pub target: Family,
    /// Substitution used.
    pub variant: MapVariant,
    /// `j`.
    pub j: String,
    /// Target parameters.
    pub params: Vec<ParamValue>,
    /// Target spectral value.
    pub eps: f64,
    /// Probe points.
    pub probe: ProbeInfo,
    /// Deviations and order estimates.
    pub record: ConvergenceRecord,
}

/// Where the oracle's potential came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OracleSource {
    /// A level of a family.
    Family {
        /// Family.
        family: Family,
        /// `j`.
        j: String,
        /// Parameter values.
        params: Vec<ParamValue>,
        /// Level index.
        level: usize,
        /// Spectral value of that level.
        root: f64,
        /// Its derived energy.
        e_derived: f64,
    },
    /// A tabulated potential.
    File {
        /// Path as given.
        path: String,
    },
}

/// Output of `oracle`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    /// Provenance.
    pub meta: Meta,
    /// Potential source.
    pub source: OracleSource,
    /// Dirichlet grid.
    pub grid: GridSpec,
    /// Grid spacing.
    pub h: f64,
    /// Lowest eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
}

/// Samples of one level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSet {
    /// Level index.
    pub index: usize,
    /// Spectral value.
    pub root: f64,
    /// Derived energy.
    pub e_derived: f64,
    /// Abscissae.
    pub x: Vec<f64>,
    /// Potential (`null` where it is not finite).
    pub v: Vec<Option<f64>>,
    /// Eigenfunction scaled to a largest magnitude of 1.
    pub psi: Vec<f64>,
}

/// Output of `curves`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvesReport {
    /// Provenance.
    pub meta: Meta,
    /// Family.
    pub family: Family,
    /// `j`.
    pub j: String,
    /// Parameter values.
    pub params: Vec<ParamValue>,
    /// One sample set per level.
    pub levels: Vec<CurveSet>,
}

/// Reports of a parameter sweep, in sweep order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport<T> {
    /// Provenance.
    pub meta: Meta,
    /// Swept parameter.
    pub parameter: String,
    /// Its values as exact fractions.
    pub values: Vec<String>,
    /// One report per value.
    pub reports: Vec<T>,
}
