//! The five subcommands. Each returns its rendered output; nothing is written here.

use rayon::prelude::*;
use serde::Serialize;

use qes_core::families::{default_domain, CoulombParams, Family, FamilyParams, OscillatorParams};
use qes_core::numkit::{Coeff, Mode, Rational};
use qes_core::oracle::{audit_family, fd_domain, fd_spectrum, AuditReport, GridSpec, ParamValue};
use qes_core::pipeline::{solve_spectrum, QesError, Spectrum};
use qes_core::transforms::{limit_convergence_scan, LimitMap};

use crate::args::{CommandKind, Format};
use crate::config::{shown, RunConfig};
use crate::error::CliError;
use crate::json::{cell, opt_cell, to_csv, to_json};
use crate::potfile::Tabulated;
use crate::report::*;

/// Interior points of the finite-difference grid for a family level.
pub const ORACLE_POINTS: usize = 12_000;
/// Interior points of the finite-difference grid for a tabulated potential.
pub const TABLE_POINTS: usize = 4_000;
/// Interior sample points of a curve.
pub const CURVE_POINTS: usize = 401;

/// Rendered result of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    /// Main report (JSON or CSV).
    pub text: String,
    /// Contents of the curves file, when requested.
    pub curves: Option<String>,
    /// Formulas rejected by strict mode, over all parameter points.
    pub strict_failures: Vec<String>,
}

fn meta(cfg: &RunConfig) -> Meta {
    let generated_unix = (!cfg.reproducible).then(|| {
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
    });
    Meta {
        tool: "qes".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cfg.command.name().into(),
        generated_unix,
    }
}

fn param_echo(p: &FamilyParams<Rational>) -> Vec<ParamValue> {
    p.named_values().into_iter().map(|(name, v)| ParamValue { name: name.into(), value: v.to_f64() }).collect()
}

fn solve(cfg: &RunConfig, p: &FamilyParams<Rational>, grid: Option<GridSpec>) -> Result<Spectrum, QesError> {
    match cfg.precision {
        Mode::Exact => solve_spectrum(p, cfg.m, grid),
        Mode::Float => solve_spectrum(&p.to_float(), cfg.m, grid),
    }
}

fn audit(cfg: &RunConfig, p: &FamilyParams<Rational>) -> Result<AuditReport, CliError> {
    let grid = cfg.level_grid()?;
    Ok(match cfg.precision {
        Mode::Exact => audit_family(p, cfg.m, grid)?,
        Mode::Float => audit_family(&p.to_float(), cfg.m, grid)?,
    })
}

fn spectrum_report(cfg: &RunConfig, p: &FamilyParams<Rational>, s: &Spectrum, audit: Option<AuditSummary>) -> SpectrumReport {
    let levels = s
        .levels
        .iter()
        .enumerate()
        .map(|(index, l)| LevelReport {
            index,
            root: l.root,
            root_exact: l.exact_root.as_ref().map(ToString::to_string),
            multiplicity: l.multiplicity,
            e_stated: l.e_stated,
            e_gauge: l.e_gauge,
            e_derived: l.e_derived,
            constancy: l.constancy,
            residual: l.residual,
            normalizable: l.normalizable,
            coefficients: l.coeffs.clone(),
            exact: l.exact.as_ref().map(|e| ExactReport {
                m: e.m,
                printed_root: e.printed_root,
                printed_energy: e.printed_energy,
                stated_at_printed_root: e.stated_at_printed_root,
            }),
            grid: l.grid,
        })
        .collect();
    SpectrumReport {
        meta: meta(cfg),
        family: p.family(),
        precision: cfg.precision.to_string(),
        j: p.two_j().to_string(),
        params: param_echo(p),
        critical_polynomial: s.critical.clone(),
        root_finder: s.roots.as_ref().map(|r| RootDiagnostics {
            method: r.method,
            degree: r.degree,
            real_count: r.real_count(),
            complex_count: r.complex_count,
        }),
        levels,
        audit,
    }
}

/// Potential and scaled eigenfunction of every level on its display grid.
fn curve_sets(cfg: &RunConfig, s: &Spectrum) -> Result<Vec<CurveSet>, CliError> {
    s.levels
        .iter()
        .enumerate()
        .map(|(index, l)| {
            let (lo, hi) = default_domain(&l.spec);
            let grid = cfg.grid.resolve((lo, hi, CURVE_POINTS))?;
            let x = grid.points();
            let (mut psi, _) = l.spec.scaled_values(&x).map_err(QesError::from)?;
            let peak = psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if peak > 0.0 && peak.is_finite() {
                psi.iter_mut().for_each(|v| *v /= peak);
            }
            let v = x.iter().map(|&t| l.spec.potential(t).ok().filter(|v| v.is_finite())).collect();
            Ok(CurveSet { index, root: l.root, e_derived: l.e_derived, x, v, psi })
        })
        .collect()
}

fn curves_csv(points: &[(Option<String>, Vec<CurveSet>)], sweep: Option<&str>) -> String {
    let mut header = Vec::new();
    header.extend(sweep);
    header.extend(["level", "x", "V", "psi"]);
    let rows = points.iter().flat_map(|(value, sets)| {
        sets.iter().flat_map(move |c| {
            (0..c.x.len()).map(move |i| {
                let mut row: Vec<String> = value.iter().cloned().collect();
                row.extend([c.index.to_string(), cell(c.x[i]), opt_cell(c.v[i]), cell(c.psi[i])]);
                row
            })
        })
    });
    to_csv(&header, rows)
}

/// Evaluates `f` at every parameter point (concurrently when sweeping), keeping sweep order.
fn per_point<T: Send>(
    cfg: &RunConfig,
    f: impl Fn(&FamilyParams<Rational>) -> Result<T, CliError> + Sync,
) -> Result<Vec<(Option<String>, T)>, CliError> {
    let points = cfg.points()?;
    points
        .par_iter()
        .map(|(value, p)| Ok((value.as_ref().map(ToString::to_string), f(p)?)))
        .collect()
}

fn render<T: Serialize>(cfg: &RunConfig, results: Vec<(Option<String>, T)>) -> String {
    match &cfg.sweep {
        Some(s) => {
            let values = results.iter().map(|r| r.0.clone().unwrap_or_default()).collect();
            let reports = results.into_iter().map(|r| r.1).collect();
            to_json(&SweepReport { meta: meta(cfg), parameter: s.name.into(), values, reports })
        }
        None => to_json(&results.into_iter().next().expect("one parameter point").1),
    }
}

fn level_rows<'a>(
    value: &'a Option<String>,
    levels: impl Iterator<Item = [String; 9]> + 'a,
) -> impl Iterator<Item = Vec<String>> + 'a {
    levels.map(move |cols| value.iter().cloned().chain(cols).collect())
}

const LEVEL_HEADER: [&str; 9] =
    ["index", "root", "multiplicity", "e_stated", "e_gauge", "e_derived", "residual", "constancy", "normalizable"];

fn level_cells(l: &LevelReport) -> [String; 9] {
    [
        l.index.to_string(),
        cell(l.root),
        l.multiplicity.to_string(),
        cell(l.e_stated),
        cell(l.e_gauge),
        cell(l.e_derived),
        cell(l.residual),
        cell(l.constancy),
        l.normalizable.to_string(),
    ]
}

fn with_sweep_column<'a>(cfg: &'a RunConfig, header: &[&'a str]) -> Vec<&'a str> {
    cfg.sweep.iter().map(|s| s.name).chain(header.iter().copied()).collect()
}

fn spectrum(cfg: &RunConfig) -> Result<Output, CliError> {
    let grid = cfg.level_grid()?;
    let results = per_point(cfg, |p| {
        let s = solve(cfg, p, grid)?;
        let summary = if cfg.with_audit { Some(AuditSummary::of(&audit(cfg, p)?)) } else { None };
        let curves = if cfg.emit_curves { Some(curve_sets(cfg, &s)?) } else { None };
        Ok((spectrum_report(cfg, p, &s, summary), curves))
    })?;
    let strict_failures = if cfg.strict {
        results.iter().flat_map(|r| r.1 .0.audit.iter().flat_map(|a| a.strict_failures.clone())).collect()
    } else {
        Vec::new()
    };
    let curves = cfg.emit_curves.then(|| {
        let sets: Vec<_> = results.iter().map(|r| (r.0.clone(), r.1 .1.clone().unwrap_or_default())).collect();
        curves_csv(&sets, cfg.sweep.as_ref().map(|s| s.name))
    });
    let text = match cfg.format {
        Format::Json => render(cfg, results.into_iter().map(|(v, (r, _))| (v, r)).collect()),
        Format::Csv => {
            let header = with_sweep_column(cfg, &LEVEL_HEADER);
            let rows = results.iter().flat_map(|(v, (r, _))| level_rows(v, r.levels.iter().map(level_cells)));
            to_csv(&header, rows)
        }
    };
    Ok(Output { text, curves, strict_failures })
}

fn audit_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let grid = cfg.level_grid()?;
    let results = per_point(cfg, |p| {
        let report = audit(cfg, p)?;
        let curves = if cfg.emit_curves { Some(curve_sets(cfg, &solve(cfg, p, grid)?)?) } else { None };
        Ok((AuditOutput { meta: meta(cfg), report }, curves))
    })?;
    let strict_failures = if cfg.strict {
        results.iter().flat_map(|r| r.1 .0.report.strict_failures().into_iter().map(|f| f.formula.clone())).collect()
    } else {
        Vec::new()
    };
    let curves = cfg.emit_curves.then(|| {
        let sets: Vec<_> = results.iter().map(|r| (r.0.clone(), r.1 .1.clone().unwrap_or_default())).collect();
        curves_csv(&sets, cfg.sweep.as_ref().map(|s| s.name))
    });
    let text = match cfg.format {
        Format::Json => render(cfg, results.into_iter().map(|(v, (r, _))| (v, r)).collect()),
        Format::Csv => {
            let header = with_sweep_column(cfg, &["index", "root", "e_stated", "e_derived", "residual", "normalizable"]);
            let rows = results.iter().flat_map(|(v, (r, _))| {
                r.report.levels.iter().enumerate().map(move |(i, l)| {
                    v.iter()
                        .cloned()
                        .chain([
                            i.to_string(),
                            cell(l.root),
                            cell(l.e_stated),
                            cell(l.e_derived),
                            cell(l.residual),
                            l.normalizable.to_string(),
                        ])
                        .collect::<Vec<_>>()
                })
            });
            to_csv(&header, rows)
        }
    };
    Ok(Output { text, curves, strict_failures })
}

fn limit(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = cfg.params_with(None)?;
    let eps = cfg.eps.as_ref().expect("checked by the configuration").to_f64();
    let variant = cfg.map;
    let map = match p.to_float() {
        FamilyParams::Coulomb(t) => LimitMap::Coulomb { target: CoulombParams { ..t }, eps, variant },
        FamilyParams::Oscillator(t) => LimitMap::Oscillator { target: OscillatorParams { ..t }, eps, variant },
        _ => return Err(CliError::usage("limit scans take --family coulomb or --family oscillator")),
    };
    let default = map.default_probe();
    let probe = if cfg.grid.is_empty() {
        default
    } else {
        let (lo, hi) = (cfg.grid.x_min.unwrap_or(default[0]), cfg.grid.x_max.unwrap_or(default[default.len() - 1]));
        let n = cfg.grid.n.unwrap_or(default.len());
        if lo.partial_cmp(&hi) != Some(core::cmp::Ordering::Less) {
            return Err(CliError::usage("--xmin must be below --xmax"));
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    };
    let record = limit_convergence_scan(&map, &probe, &cfg.alphas).map_err(QesError::from)?;
    let report = LimitReport {
        meta: meta(cfg),
        target: p.family(),
        variant,
        j: p.two_j().to_string(),
        params: param_echo(&p),
        eps,
        probe: ProbeInfo { x_min: probe[0], x_max: probe[probe.len() - 1], points: probe.len() },
        record,
    };
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let r = &report.record;
            let rows = (0..r.alphas.len()).map(|i| vec![cell(r.alphas[i]), cell(r.deviations[i]), opt_cell(r.orders[i])]);
            to_csv(&["alpha", "deviation", "order_est"], rows)
        }
    };
    Ok(Output { text, curves: None, strict_failures: Vec::new() })
}

fn oracle(cfg: &RunConfig) -> Result<Output, CliError> {
    let (source, grid, eigenvalues) = match &cfg.potential {
        Some(path) => {
            let table = Tabulated::read(path)?;
            let (lo, hi) = table.range();
            let grid = cfg.grid.resolve((lo, hi, TABLE_POINTS))?;
            if grid.x_min < lo || grid.x_max > hi {
                return Err(CliError::usage(format!("grid [{}, {}] leaves the tabulated range [{lo}, {hi}]", grid.x_min, grid.x_max)));
            }
            let e = fd_spectrum(&|x| table.value(x), &grid, cfg.count).map_err(QesError::from)?;
            (OracleSource::File { path: shown(path) }, grid, e)
        }
        None => {
            let p = cfg.params_with(None)?;
            let s = solve(cfg, &p, None)?;
            let level = s.levels.get(cfg.level).ok_or_else(|| {
                CliError::usage(format!("--level {}: the spectrum has {} level(s)", cfg.level, s.levels.len()))
            })?;
            let (lo, hi) = fd_domain(&level.spec);
            let grid = cfg.grid.resolve((lo, hi, ORACLE_POINTS))?;
            let v = |x: f64| level.spec.potential(x).unwrap_or(f64::NAN);
            let e = fd_spectrum(&v, &grid, cfg.count).map_err(QesError::from)?;
            let source = OracleSource::Family {
                family: p.family(),
                j: p.two_j().to_string(),
                params: param_echo(&p),
                level: cfg.level,
                root: level.root,
                e_derived: level.e_derived,
            };
            (source, grid, e)
        }
    };
    let report = OracleReport { meta: meta(cfg), source, grid, h: grid.h(), eigenvalues };
    let text = match cfg.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let rows = report.eigenvalues.iter().enumerate().map(|(i, e)| vec![i.to_string(), cell(*e)]);
            to_csv(&["index", "E"], rows)
        }
    };
    Ok(Output { text, curves: None, strict_failures: Vec::new() })
}

fn curves(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = cfg.params_with(None)?;
    let s = solve(cfg, &p, None)?;
    let levels = curve_sets(cfg, &s)?;
    let text = match cfg.format {
        Format::Json => {
            let family: Family = p.family();
            to_json(&CurvesReport { meta: meta(cfg), family, j: p.two_j().to_string(), params: param_echo(&p), levels })
        }
        Format::Csv => curves_csv(&[(None, levels)], None),
    };
    Ok(Output { text, curves: None, strict_failures: Vec::new() })
}

/// Runs the configured subcommand.
pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg.command {
        CommandKind::Spectrum => spectrum(cfg),
        CommandKind::Audit => audit_cmd(cfg),
        CommandKind::Limit => limit(cfg),
        CommandKind::Oracle => oracle(cfg),
        CommandKind::Curves => curves(cfg),
    }
}
