//! Validated run configuration: every flag is checked here, before any computation starts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qes_core::families::{
    CoulombParams, Family, FamilyParams, HyperbolicParams, OscillatorParams, PairParams, TwoJ,
};
use qes_core::numkit::{parse_rational, Coeff, Mode, Rational};
use qes_core::oracle::{GridSpec, MIN_POINTS};
use qes_core::transforms::{MapVariant, DEFAULT_ALPHAS};

use crate::args::{CommandKind, Format, PrecisionArg, RunArgs};
use crate::error::CliError;

/// Largest number of points a sweep may expand to.
pub const MAX_SWEEP_POINTS: usize = 10_000;

/// Parameters each family takes, in report order.
pub fn family_parameters(family: Family) -> &'static [&'static str] {
    match family {
        Family::Eckart | Family::Hulthen | Family::RosenMorse => &["L", "A", "q", "alpha"],
        Family::Coulomb | Family::Oscillator => &["ell", "a", "q"],
        Family::CoulombEps => &["ell", "q"],
    }
}

/// Explicit grid settings; absent fields fall back to a per-command default.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GridOverride {
    /// Left end.
    pub x_min: Option<f64>,
    /// Right end.
    pub x_max: Option<f64>,
    /// Interior points.
    pub n: Option<usize>,
}

impl GridOverride {
    /// Whether no field is set.
    pub fn is_empty(&self) -> bool {
        self.x_min.is_none() && self.x_max.is_none() && self.n.is_none()
    }

    /// Fills the unset fields from `default` and checks the result.
    pub fn resolve(&self, default: (f64, f64, usize)) -> Result<GridSpec, CliError> {
        let g = GridSpec::new(
            self.x_min.unwrap_or(default.0),
            self.x_max.unwrap_or(default.1),
            self.n.unwrap_or(default.2),
        );
        g.map_err(|e| CliError::usage(format!("grid: {e}")))
    }
}

/// One parameter varied over evenly spaced exact values.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    /// Swept parameter (`j` or one of the family's parameters).
    pub name: &'static str,
    /// Values, in order.
    pub values: Vec<Rational>,
}

/// One parameter point: the swept value, if any, and the family it selects.
pub type Point = (Option<Rational>, FamilyParams<Rational>);

/// Everything a run needs, already checked.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Subcommand.
    pub command: CommandKind,
    /// Family (absent only for an oracle run on a tabulated potential).
    pub family: Option<Family>,
    /// Family parameters by name.
    pub values: BTreeMap<&'static str, Rational>,
    /// `j`.
    pub j: Rational,
    /// Target spectral value of a limit scan.
    pub eps: Option<Rational>,
    /// Degree of an exactly solvable level.
    pub m: Option<usize>,
    /// Arithmetic of the recurrence.
    pub precision: Mode,
    /// Grid settings.
    pub grid: GridOverride,
    /// α sequence of a limit scan.
    pub alphas: Vec<f64>,
    /// Substitution of a limit scan.
    pub map: MapVariant,
    /// Tabulated potential for the oracle.
    pub potential: Option<PathBuf>,
    /// Oracle level index.
    pub level: usize,
    /// Oracle eigenvalue count.
    pub count: usize,
    /// Parameter sweep.
    pub sweep: Option<Sweep>,
    /// Attach audit verdicts to a spectrum.
    pub with_audit: bool,
    /// Output file.
    pub out: Option<PathBuf>,
    /// Output encoding.
    pub format: Format,
    /// Strict audit mode.
    pub strict: bool,
    /// Omit the timestamp.
    pub reproducible: bool,
    /// Write the curves file next to the output.
    pub emit_curves: bool,
}

fn number(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|_| CliError::usage(format!("--{flag}: `{text}` is not a number")))
}

fn only_for(given: bool, flag: &str, kind: CommandKind, allowed: &[CommandKind]) -> Result<(), CliError> {
    if given && !allowed.contains(&kind) {
        return Err(CliError::usage(format!("--{flag} does not apply to `{}`", kind.name())));
    }
    Ok(())
}

fn parse_alphas(text: &str) -> Result<Vec<f64>, CliError> {
    let alphas = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| CliError::usage(format!("--alphas: `{s}` is not a number"))))
        .collect::<Result<Vec<_>, _>>()?;
    if alphas.is_empty() {
        return Err(CliError::usage("--alphas: the list is empty"));
    }
    if !alphas.iter().all(|a| a.is_finite() && *a > 0.0) || !alphas.windows(2).all(|w| w[1] < w[0]) {
        return Err(CliError::usage("--alphas: values must be positive and strictly decreasing"));
    }
    Ok(alphas)
}

fn parse_sweep(text: &str, family: Family) -> Result<Sweep, CliError> {
    let bad = || CliError::usage(format!("--sweep: expected NAME=START:STOP:COUNT, got `{text}`"));
    let (name, range) = text.split_once('=').ok_or_else(bad)?;
    let name = name.trim();
    let name: &'static str = match family_parameters(family).iter().chain(&["j"]).find(|p| **p == name) {
        Some(p) => p,
        None => return Err(CliError::usage(format!("--sweep: `{name}` is not a parameter of {family}"))),
    };
    let parts: Vec<&str> = range.split(':').collect();
    let [start, stop, count] = parts[..] else { return Err(bad()) };
    let (start, stop) = (number("sweep", start)?, number("sweep", stop)?);
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if !(2..=MAX_SWEEP_POINTS).contains(&count) {
        return Err(CliError::usage(format!("--sweep: COUNT must be between 2 and {MAX_SWEEP_POINTS}")));
    }
    let step = (stop - start.clone()) / Rational::from_i64(count as i64 - 1);
    let values = (0..count).map(|i| start.clone() + step.clone() * Rational::from_i64(i as i64)).collect();
    Ok(Sweep { name, values })
}

impl RunConfig {
    /// Checks the flags of one subcommand and resolves defaults.
    pub fn from_args(command: CommandKind, a: &RunArgs) -> Result<Self, CliError> {
        use CommandKind::*;
        only_for(a.eps.is_some(), "eps", command, &[Limit])?;
        only_for(a.alphas.is_some(), "alphas", command, &[Limit])?;
        only_for(a.map.is_some(), "map", command, &[Limit])?;
        only_for(a.m.is_some(), "m", command, &[Spectrum, Audit, Oracle, Curves])?;
        only_for(a.potential.is_some(), "potential", command, &[Oracle])?;
        only_for(a.level.is_some(), "level", command, &[Oracle])?;
        only_for(a.count.is_some(), "count", command, &[Oracle])?;
        only_for(a.sweep.is_some(), "sweep", command, &[Spectrum, Audit])?;
        only_for(a.with_audit, "with-audit", command, &[Spectrum])?;
        only_for(a.strict, "strict", command, &[Spectrum, Audit])?;
        only_for(a.emit_curves, "emit-curves", command, &[Spectrum, Audit])?;

        let family = a.family.map(Family::from);
        match (command, family, &a.potential) {
            (Oracle, Some(_), Some(_)) => return Err(CliError::usage("give either --family or --potential, not both")),
            (Oracle, None, None) => return Err(CliError::usage("oracle needs --family or --potential")),
            (Oracle, None, Some(_)) => {}
            (_, None, _) => return Err(CliError::usage("--family is required")),
            _ => {}
        }
        let given: [(&'static str, &Option<String>); 6] =
            [("L", &a.l), ("A", &a.big_a), ("q", &a.q), ("alpha", &a.alpha), ("ell", &a.ell), ("a", &a.a)];
        // a swept parameter takes its values from the sweep alone
        let swept = a.sweep.as_deref().and_then(|t| t.split_once('=')).map(|(n, _)| n.trim());
        let mut values = BTreeMap::new();
        match family {
            Some(f) => {
                let wanted = family_parameters(f);
                for (name, text) in given {
                    match (text, wanted.contains(&name)) {
                        (Some(t), true) => {
                            values.insert(name, number(name, t)?);
                        }
                        (Some(_), false) => return Err(CliError::usage(format!("--{name} does not apply to {f}"))),
                        (None, true) if swept != Some(name) => return Err(CliError::usage(format!("{f} needs --{name}"))),
                        (None, _) => {}
                    }
                }
            }
            None => {
                if let Some((name, _)) = given.iter().find(|(_, t)| t.is_some()) {
                    return Err(CliError::usage(format!("--{name} needs --family")));
                }
                if a.j.is_some() || a.m.is_some() {
                    return Err(CliError::usage("--j and --m need --family"));
                }
            }
        }
        let j = match &a.j {
            Some(t) => number("j", t)?,
            None => Rational::from_i64(0),
        };

        let eps = match (&a.eps, command) {
            (Some(t), _) => Some(number("eps", t)?),
            (None, Limit) => return Err(CliError::usage("limit needs --eps (the target spectral value)")),
            (None, _) => None,
        };
        if command == Limit && !matches!(family, Some(Family::Coulomb | Family::Oscillator)) {
            return Err(CliError::usage("limit scans take --family coulomb or --family oscillator"));
        }
        let alphas = match &a.alphas {
            Some(t) => parse_alphas(t)?,
            None => DEFAULT_ALPHAS.to_vec(),
        };

        let grid = GridOverride { x_min: a.xmin, x_max: a.xmax, n: a.n };
        if let Some(n) = grid.n {
            if n < MIN_POINTS {
                return Err(CliError::usage(format!("--n: grid too coarse, need at least {MIN_POINTS} points")));
            }
        }
        if let (Some(lo), Some(hi)) = (grid.x_min, grid.x_max) {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(CliError::usage("--xmin must be below --xmax"));
            }
        }
        let full = grid.x_min.is_some() && grid.x_max.is_some() && grid.n.is_some();
        if matches!(command, Spectrum | Audit) && !grid.is_empty() && !full {
            return Err(CliError::usage("spectrum and audit take --xmin, --xmax and --n together"));
        }

        let sweep = match (&a.sweep, family) {
            (Some(t), Some(f)) => Some(parse_sweep(t, f)?),
            _ => None,
        };
        if a.emit_curves && a.out.is_none() {
            return Err(CliError::usage("--emit-curves needs --out to name the curves file"));
        }
        if let Some(out) = &a.out {
            let parent = out.parent().filter(|p| !p.as_os_str().is_empty());
            if parent.is_some_and(|p| !p.is_dir()) {
                return Err(CliError::usage(format!("--out: directory of {} does not exist", out.display())));
            }
        }

        let cfg = RunConfig {
            command,
            family,
            values,
            j,
            eps,
            m: a.m,
            precision: match a.precision {
                PrecisionArg::Float => Mode::Float,
                PrecisionArg::Rational => Mode::Exact,
            },
            grid,
            alphas,
            map: a.map.map(MapVariant::from).unwrap_or(MapVariant::Consistent),
            potential: a.potential.clone(),
            level: a.level.unwrap_or(0),
            count: a.count.unwrap_or(3),
            sweep,
            with_audit: a.with_audit || (command == Spectrum && a.strict),
            out: a.out.clone(),
            format: a.format,
            strict: a.strict,
            reproducible: a.reproducible,
            emit_curves: a.emit_curves,
        };
        if cfg.count == 0 {
            return Err(CliError::usage("--count must be positive"));
        }
        // every parameter point of the run must be valid before anything is computed
        if cfg.family.is_some() {
            for p in cfg.points()? {
                p.1.validate().map_err(|e| CliError::usage(format!("parameters: {e}")))?;
            }
        }
        Ok(cfg)
    }

    /// Family parameters with `sweep` (if any) substituted.
    pub fn params_with(&self, swept: Option<(&str, &Rational)>) -> Result<FamilyParams<Rational>, CliError> {
        let family = self.family.ok_or_else(|| CliError::usage("--family is required"))?;
        let pick = |name: &str| -> Rational {
            match swept {
                Some((n, v)) if n == name => v.clone(),
                _ => self.values.get(name).cloned().unwrap_or_else(|| Rational::from_i64(0)),
            }
        };
        let two_j = TwoJ::from_j(&self.j_at(swept))
            .map_err(|_| CliError::usage("--j must be a nonnegative multiple of 1/2 (at most 32)"))?;
        let hyp = || HyperbolicParams { l: pick("L"), a: pick("A"), q: pick("q"), alpha: pick("alpha"), two_j };
        Ok(match family {
            Family::Eckart => FamilyParams::Eckart(hyp()),
            Family::Hulthen => FamilyParams::Hulthen(hyp()),
            Family::RosenMorse => FamilyParams::RosenMorse(hyp()),
            Family::Coulomb => FamilyParams::Coulomb(CoulombParams { ell: pick("ell"), a: pick("a"), q: pick("q"), two_j }),
            Family::CoulombEps => FamilyParams::CoulombEps(PairParams { ell: pick("ell"), q: pick("q"), two_j }),
            Family::Oscillator => {
                FamilyParams::Oscillator(OscillatorParams { ell: pick("ell"), a: pick("a"), q: pick("q"), two_j })
            }
        })
    }

    fn j_at(&self, swept: Option<(&str, &Rational)>) -> Rational {
        match swept {
            Some(("j", v)) => v.clone(),
            _ => self.j.clone(),
        }
    }

    /// Every parameter point of the run: the sweep values in order, or the single point.
    pub fn points(&self) -> Result<Vec<Point>, CliError> {
        match &self.sweep {
            Some(s) => s
                .values
                .iter()
                .map(|v| Ok((Some(v.clone()), self.params_with(Some((s.name, v)))?)))
                .collect(),
            None => Ok(vec![(None, self.params_with(None)?)]),
        }
    }

    /// Fixed grid for spectrum and audit runs, when one was given.
    pub fn level_grid(&self) -> Result<Option<GridSpec>, CliError> {
        if self.grid.is_empty() {
            Ok(None)
        } else {
            self.grid.resolve((0.0, 1.0, MIN_POINTS)).map(Some)
        }
    }

    /// Path of the curves file written next to `--out`.
    pub fn curves_path(&self) -> Option<PathBuf> {
        let out = self.out.as_deref()?;
        let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "qes".into());
        Some(out.with_file_name(format!("{stem}.curves.csv")))
    }
}

/// Display form of a path.
pub fn shown(p: &Path) -> String {
    p.display().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> RunArgs {
        RunArgs { family: Some(crate::args::FamilyArg::CoulombEps), ell: Some("0".into()), q: Some("1".into()), j: Some("1/2".into()), ..RunArgs::default() }
    }

    #[test]
    fn accepts_a_complete_point() {
        let cfg = RunConfig::from_args(CommandKind::Spectrum, &args()).unwrap();
        let p = cfg.params_with(None).unwrap();
        assert_eq!(p.two_j(), TwoJ(1));
    }

    #[test]
    fn rejects_missing_and_foreign_parameters() {
        let mut a = args();
        a.q = None;
        assert!(RunConfig::from_args(CommandKind::Spectrum, &a).is_err());
        let mut a = args();
        a.big_a = Some("3".into());
        assert!(RunConfig::from_args(CommandKind::Spectrum, &a).is_err());
        let mut a = args();
        a.j = Some("1/3".into());
        assert!(RunConfig::from_args(CommandKind::Spectrum, &a).is_err());
    }

    #[test]
    fn sweep_values_are_exact() {
        let mut a = args();
        a.sweep = Some("q=1/2:2:4".into());
        let cfg = RunConfig::from_args(CommandKind::Spectrum, &a).unwrap();
        let s = cfg.sweep.unwrap();
        assert_eq!(s.values, vec![Rational::from_ratio(1, 2), Rational::from_i64(1), Rational::from_ratio(3, 2), Rational::from_i64(2)]);
    }

    #[test]
    fn swept_parameter_needs_no_base_value() {
        let mut a = args();
        a.q = None;
        assert!(RunConfig::from_args(CommandKind::Spectrum, &a).is_err());
        a.sweep = Some("q=1:3:3".into());
        let cfg = RunConfig::from_args(CommandKind::Spectrum, &a).unwrap();
        assert_eq!(cfg.points().unwrap().len(), 3);
    }

    #[test]
    fn alpha_lists_are_checked() {
        assert!(parse_alphas("").is_err());
        assert!(parse_alphas("0.01,0.02").is_err());
        assert!(parse_alphas("0.04,-1").is_err());
        assert_eq!(parse_alphas("0.04, 0.02").unwrap(), vec![0.04, 0.02]);
    }

    #[test]
    fn grid_flags_are_checked() {
        let mut a = args();
        a.n = Some(10);
        assert!(RunConfig::from_args(CommandKind::Oracle, &a).is_err());
        let mut a = args();
        a.xmin = Some(0.1);
        assert!(RunConfig::from_args(CommandKind::Spectrum, &a).is_err());
    }
}
