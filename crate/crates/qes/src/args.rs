//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qes_core::families::Family;
use qes_core::transforms::MapVariant;

/// Top-level parser.
#[derive(Debug, Parser)]
#[command(
    name = "qes",
    version,
    about = "Quasi-exactly solvable spectra, formula audits, limit scans and finite-difference oracles"
)]
pub struct Cli {
    /// Subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// The five subcommands; they share one flag set.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solvable levels of one family at one parameter point.
    Spectrum(RunArgs),
    /// Every displayed formula compared with the numerical oracles.
    Audit(RunArgs),
    /// Convergence of a limit map as alpha decreases.
    Limit(RunArgs),
    /// Finite-difference eigenvalues of a family level's potential or of a tabulated potential.
    Oracle(RunArgs),
    /// Samples of the potential and the eigenfunction of every level.
    Curves(RunArgs),
}

impl Command {
    /// Subcommand name and its flags.
    pub fn split(&self) -> (CommandKind, &RunArgs) {
        match self {
            Command::Spectrum(a) => (CommandKind::Spectrum, a),
            Command::Audit(a) => (CommandKind::Audit, a),
            Command::Limit(a) => (CommandKind::Limit, a),
            Command::Oracle(a) => (CommandKind::Oracle, a),
            Command::Curves(a) => (CommandKind::Curves, a),
        }
    }
}

/// Subcommand tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    /// `spectrum`
    Spectrum,
    /// `audit`
    Audit,
    /// `limit`
    Limit,
    /// `oracle`
    Oracle,
    /// `curves`
    Curves,
}

impl CommandKind {
    /// Name as typed on the command line.
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Audit => "audit",
            CommandKind::Limit => "limit",
            CommandKind::Oracle => "oracle",
            CommandKind::Curves => "curves",
        }
    }
}

/// Potential family selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// csch² plus coth well on x > 0.
    Eckart,
    /// Eckart with the coordinate halved.
    Hulthen,
    /// Eckart continued to the whole line.
    RosenMorse,
    /// Coulomb plus linear and harmonic terms.
    Coulomb,
    /// Two charges in a harmonic trap (the Coulomb family at eps = -a).
    CoulombEps,
    /// Quartic oscillator on the whole line.
    Oscillator,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Eckart => Family::Eckart,
            FamilyArg::Hulthen => Family::Hulthen,
            FamilyArg::RosenMorse => Family::RosenMorse,
            FamilyArg::Coulomb => Family::Coulomb,
            FamilyArg::CoulombEps => Family::CoulombEps,
            FamilyArg::Oscillator => Family::Oscillator,
        }
    }
}

/// Arithmetic of the recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum PrecisionArg {
    /// IEEE doubles with companion-matrix roots.
    Float,
    /// Exact rationals with Sturm isolation.
    #[default]
    Rational,
}

/// Output encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Full nested report.
    #[default]
    Json,
    /// Flat table.
    Csv,
}

/// Parameter substitution of a limit scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    /// The substitution under which V - E converges.
    Consistent,
    /// The substitution exactly as displayed.
    AsPrinted,
    /// The consistent substitution without its q² term (a negative control).
    DropQSquared,
}

impl From<MapArg> for MapVariant {
    fn from(m: MapArg) -> Self {
        match m {
            MapArg::Consistent => MapVariant::Consistent,
            MapArg::AsPrinted => MapVariant::AsPrinted,
            MapArg::DropQSquared => MapVariant::DropQSquared,
        }
    }
}

/// Flags shared by every subcommand. Numbers accept decimals (`0.5`), fractions (`1/2`)
/// and exponents (`1e-3`); the parameters are kept as exact rationals.
#[derive(Clone, Debug, Default, Args)]
pub struct RunArgs {
    /// Potential family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Angular parameter L of the hyperbolic families.
    #[arg(long = "L", value_name = "L", allow_hyphen_values = true)]
    pub l: Option<String>,
    /// Strength A of the hyperbolic families.
    #[arg(long = "A", value_name = "A", allow_hyphen_values = true)]
    pub big_a: Option<String>,
    /// Deformation strength q.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Inverse range alpha of the hyperbolic families.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Half-integer j (2j + 1 solvable levels); defaults to 0.
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Angular parameter ell of the Coulomb and oscillator families.
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<String>,
    /// Coupling a of the Coulomb and oscillator families.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Target spectral value of a limit scan.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Degree of an exactly solvable level (q = 0 only).
    #[arg(long)]
    pub m: Option<usize>,
    /// Arithmetic of the recurrence.
    #[arg(long, value_enum, default_value_t = PrecisionArg::Rational)]
    pub precision: PrecisionArg,
    /// Left end of the grid.
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    /// Right end of the grid.
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    /// Number of interior grid points (at least 64).
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated, strictly decreasing alpha values of a limit scan.
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: Option<String>,
    /// Parameter substitution of a limit scan.
    #[arg(long, value_enum)]
    pub map: Option<MapArg>,
    /// Tabulated potential (CSV with header `x,V`) for the oracle.
    #[arg(long)]
    pub potential: Option<PathBuf>,
    /// Level index (in order of energy) whose potential the oracle discretizes.
    #[arg(long)]
    pub level: Option<usize>,
    /// Number of finite-difference eigenvalues to report.
    #[arg(long)]
    pub count: Option<usize>,
    /// Sweep one parameter: `NAME=START:STOP:COUNT`, evaluated in parallel.
    #[arg(long, allow_hyphen_values = true)]
    pub sweep: Option<String>,
    /// Attach the audit verdicts to a spectrum report.
    #[arg(long)]
    pub with_audit: bool,
    /// Output file (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Exit with status 3 when a formula is inconsistent or has an undocumented sign flip.
    #[arg(long)]
    pub strict: bool,
    /// Leave the timestamp out so that repeated runs are byte-identical.
    #[arg(long)]
    pub reproducible: bool,
    /// Also write `<stem>.curves.csv` with potential and eigenfunction samples.
    #[arg(long)]
    pub emit_curves: bool,
}
