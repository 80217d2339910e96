//! Formula audit: every displayed energy, root and potential compared with the oracles.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::{fd_domain, oracle_potential, FdOperator, GridSpec};
use super::printed::{displayed_pair_polynomial, displayed_pair_roots};
use crate::bd_recurrence::{build_sequence, make_recurrence, make_recurrence_with, monic_normal_form, spectrum_roots, CoulombDiagonal};
use crate::families::{
    default_domain, eckart_potential_complex, hulthen_printed, hulthen_terms_canonical, hulthen_terms_printed,
    potential_value, rosen_morse_printed, rosen_morse_terms_canonical, rosen_morse_terms_printed, EigenfunctionSpec,
    Family, FamilyParams, HyperbolicParams,
};
use crate::numkit::{Coeff, Mode};
use crate::pipeline::{check_level, solve_spectrum, QesError, QesLevel};

/// Outcome of one comparison, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Verdict {
    /// The formula does not apply at this parameter point.
    NotApplicable,
    /// Displayed and oracle values agree.
    Consistent,
    /// The displayed value is the negative of the oracle value.
    SignFlip,
    /// Neither agreement nor a pure sign flip.
    Inconsistent,
}

/// Audited formulas, in report order.
pub const FORMULA_IDS: [&str; 33] = [
    "eckart-energy",
    "eckart-exact-root",
    "eckart-exact-energy",
    "hulthen-energy",
    "hulthen-exact-energy",
    "rosen-morse-energy",
    "coulomb-energy",
    "coulomb-exact-root",
    "coulomb-exact-energy",
    "coulomb-recurrence",
    "pair-energy",
    "pair-polynomial-1",
    "pair-polynomial-2",
    "pair-polynomial-3",
    "pair-polynomial-4",
    "pair-root-table",
    "oscillator-energy",
    "eckart-potential",
    "hulthen-potential",
    "hulthen-potential-term2",
    "hulthen-potential-qterm",
    "rosen-morse-potential",
    "rosen-morse-potential-bracket",
    "rosen-morse-potential-qterm",
    "rosen-morse-shift",
    "rosen-morse-mirror",
    "coulomb-potential",
    "oscillator-potential",
    "quantization-consistency",
    "fd-membership",
    "hyperbolic-recurrence-shared",
    "rosen-morse-energy-shared",
    "hulthen-coordinate-halving",
];

/// Sign flips that are known and recorded; strict mode tolerates them.
const DOCUMENTED_SIGN_FLIPS: [&str; 4] =
    ["eckart-exact-energy", "hulthen-exact-energy", "coulomb-exact-energy", "oscillator-energy"];

/// Relative tolerance for energies and roots.
const VALUE_TOL: f64 = 1e-6;
/// Relative tolerance for potentials rebuilt from `ψ″/ψ`.
const POTENTIAL_TOL: f64 = 1e-5;
/// Relative tolerance for identities evaluated in closed form.
const IDENTITY_TOL: f64 = 1e-10;
/// Residual below which a level counts as a genuine eigenpair.
const RESIDUAL_TOL: f64 = 1e-6;
/// Points used to compare potentials.
const POTENTIAL_PROBES: usize = 64;
/// Eigenfunction cutoff for rebuilt potentials.
const POTENTIAL_CUTOFF: f64 = 1e-3;
/// Grid points of the finite-difference membership check (and twice that for extrapolation).
const FD_POINTS: usize = 12_000;

/// One comparison.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Finding {
    /// Formula identifier (one of [`FORMULA_IDS`]).
    pub formula: String,
    /// Level index (in the spectrum's order) the comparison belongs to.
    pub level: Option<usize>,
    /// Displayed value.
    pub stated: Option<f64>,
    /// Oracle value.
    pub oracle: Option<f64>,
    /// Absolute discrepancy.
    pub abs_diff: Option<f64>,
    /// Discrepancy relative to `1 + |oracle|`.
    pub rel_diff: Option<f64>,
    /// Outcome.
    pub verdict: Verdict,
    /// Whether a sign flip here is a known, recorded one.
    pub documented: bool,
    /// How the comparison was made.
    pub note: String,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl Finding {
    fn new(formula: &str, level: Option<usize>, note: impl Into<String>) -> Self {
        Self {
            formula: formula.to_string(),
            level,
            stated: None,
            oracle: None,
            abs_diff: None,
            rel_diff: None,
            verdict: Verdict::NotApplicable,
            documented: DOCUMENTED_SIGN_FLIPS.contains(&formula),
            note: note.into(),
        }
    }

    /// Compares two values: consistent within `tol·(1+|oracle|)`, sign flip if `stated ≈ −oracle`.
    fn compare(formula: &str, level: Option<usize>, stated: f64, oracle: f64, tol: f64, note: impl Into<String>) -> Self {
        let mut f = Self::new(formula, level, note);
        let scale = 1.0 + libm::fabs(oracle);
        let diff = libm::fabs(stated - oracle);
        f.verdict = if diff <= tol * scale {
            Verdict::Consistent
        } else if libm::fabs(stated + oracle) <= tol * scale {
            Verdict::SignFlip
        } else {
            Verdict::Inconsistent
        };
        f.stated = finite(stated);
        f.oracle = finite(oracle);
        f.abs_diff = finite(diff);
        f.rel_diff = finite(diff / scale);
        f
    }

    /// Records a discrepancy measure that should vanish.
    fn deviation(formula: &str, level: Option<usize>, dev: f64, tol: f64, note: impl Into<String>) -> Self {
        let mut f = Self::new(formula, level, note);
        f.verdict = if dev <= tol { Verdict::Consistent } else { Verdict::Inconsistent };
        f.abs_diff = finite(dev);
        f.rel_diff = finite(dev);
        f
    }

    /// Whether strict mode accepts this finding.
    pub fn strict_ok(&self) -> bool {
        match self.verdict {
            Verdict::Inconsistent => false,
            Verdict::SignFlip => self.documented,
            _ => true,
        }
    }
}

/// A named parameter value.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParamValue {
    /// Parameter name.
    pub name: String,
    /// Value.
    pub value: f64,
}

/// Short per-level record inside an audit.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LevelSummary {
    /// Spectral value.
    pub root: f64,
    /// Displayed energy formula at the root.
    pub e_stated: f64,
    /// Energy from the gauge identity on the grid.
    pub e_derived: f64,
    /// Residual at the derived energy.
    pub residual: f64,
    /// Normalizability flag.
    pub normalizable: bool,
}

/// Audit of one parameter point.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditReport {
    /// Audited family.
    pub family: Family,
    /// Polynomial degree `2j`.
    pub two_j: u32,
    /// Arithmetic used for the recurrence.
    pub precision: String,
    /// Parameter values.
    pub params: Vec<ParamValue>,
    /// Levels that were audited.
    pub levels: Vec<LevelSummary>,
    /// Exactly one finding per formula id, the most severe over all levels.
    pub formulas: Vec<Finding>,
    /// Every individual comparison.
    pub details: Vec<Finding>,
    /// Substitutions and conventions used by the checks.
    pub notes: Vec<String>,
}

impl AuditReport {
    /// Aggregated verdict of a formula id.
    pub fn verdict(&self, formula: &str) -> Option<Verdict> {
        self.formulas.iter().find(|f| f.formula == formula).map(|f| f.verdict)
    }

    /// Aggregated findings that strict mode rejects.
    pub fn strict_failures(&self) -> Vec<&Finding> {
        self.formulas.iter().filter(|f| !f.strict_ok()).collect()
    }
}

fn tagged(formula: &'static str) -> impl Fn(QesError) -> QesError {
    move |e| QesError::Audit { formula, source: Box::new(e) }
}

/// Largest discrepancy between a displayed potential and the rebuilt one.
fn potential_finding(
    formula: &'static str,
    index: usize,
    samples: &[(f64, f64)],
    displayed: impl Fn(f64) -> f64,
    note: &str,
) -> Finding {
    // each point is judged against the local size of the rebuilt potential
    let (mut worst, mut worst_abs, mut at) = (0.0f64, 0.0f64, samples[0]);
    let mut flipped = true;
    for &(x, v) in samples {
        let d = displayed(x);
        let diff = if d.is_finite() { libm::fabs(d - v) } else { f64::INFINITY };
        let rel = diff / (1.0 + libm::fabs(v));
        if rel > worst || !rel.is_finite() {
            (worst, worst_abs, at) = (rel, diff, (x, v));
        }
        flipped &= d.is_finite() && libm::fabs(d + v) <= POTENTIAL_TOL * (1.0 + libm::fabs(v));
    }
    let mut f = Finding::new(formula, Some(index), note);
    f.verdict = if worst <= POTENTIAL_TOL {
        Verdict::Consistent
    } else if flipped {
        Verdict::SignFlip
    } else {
        Verdict::Inconsistent
    };
    f.stated = finite(displayed(at.0));
    f.oracle = finite(at.1);
    f.abs_diff = finite(worst_abs);
    f.rel_diff = finite(worst);
    f
}

/// Largest relative discrepancy between a displayed term and its canonical counterpart.
fn term_finding(
    formula: &'static str,
    index: usize,
    xs: &[f64],
    printed: impl Fn(f64) -> f64,
    canonical: impl Fn(f64) -> f64,
    note: &str,
) -> Finding {
    // worst point by deviation relative to the local size of the term
    let mut worst = (0.0f64, 0.0f64, xs[0]);
    for &x in xs {
        let (p, c) = (printed(x), canonical(x));
        let diff = if p.is_finite() { libm::fabs(p - c) } else { f64::INFINITY };
        let rel = diff / (1.0 + libm::fabs(c));
        if rel > worst.0 || !rel.is_finite() {
            worst = (rel, diff, x);
        }
    }
    let mut f = Finding::new(formula, Some(index), note);
    f.verdict = if worst.0 <= IDENTITY_TOL { Verdict::Consistent } else { Verdict::Inconsistent };
    f.stated = finite(printed(worst.2));
    f.oracle = finite(canonical(worst.2));
    f.abs_diff = finite(worst.1);
    f.rel_diff = finite(worst.0);
    f
}

/// Nearest finite-difference eigenvalue to `target`, Richardson-extrapolated from two grids.
fn fd_nearest(spec: &EigenfunctionSpec, target: f64) -> Result<(f64, f64), QesError> {
    let (lo, hi) = fd_domain(spec);
    let v = |x: f64| spec.potential(x).unwrap_or(f64::NAN);
    let coarse = GridSpec::new(lo, hi, FD_POINTS)?;
    let fine = GridSpec::new(lo, hi, 2 * FD_POINTS + 1)?;
    let e1 = FdOperator::new(&v, &coarse)?.nearest(target);
    let e2 = FdOperator::new(&v, &fine)?.nearest(target);
    Ok(((4.0 * e2 - e1) / 3.0, coarse.h()))
}

fn energy_id(family: Family) -> &'static str {
    match family {
        Family::Eckart => "eckart-energy",
        Family::Hulthen => "hulthen-energy",
        Family::RosenMorse => "rosen-morse-energy",
        Family::Coulomb => "coulomb-energy",
        Family::CoulombEps => "pair-energy",
        Family::Oscillator => "oscillator-energy",
    }
}

fn hyperbolic_twin(params: &FamilyParams<f64>, family: Family) -> FamilyParams<f64> {
    params.with_hyperbolic_family(family).unwrap_or_else(|| params.clone())
}

fn level_findings(params: &FamilyParams<f64>, index: usize, lvl: &QesLevel, out: &mut Vec<Finding>) -> Result<(), QesError> {
    let family = params.family();
    let id = energy_id(family);
    let i = Some(index);
    // stated energy against the measured one
    if let (Family::Hulthen, Some(h)) = (family, params.hyperbolic()) {
        let eck = hyperbolic_twin(params, Family::Eckart);
        let twin = check_level(&eck, lvl.root, lvl.coeffs.clone(), None).map_err(tagged("hulthen-energy"))?;
        let stated = 0.25 * (twin.e_derived + h.a * h.alpha * h.alpha);
        out.push(Finding::compare(id, i, stated, lvl.e_derived, VALUE_TOL, "quarter rule applied to the measured Eckart energy, against the measured energy of the halved-coordinate potential"));
    } else {
        out.push(Finding::compare(id, i, lvl.e_stated, lvl.e_derived, VALUE_TOL, "displayed energy formula at the root, against the energy measured from V - psi''/psi"));
    }
    if family == Family::RosenMorse {
        let eck = hyperbolic_twin(params, Family::Eckart);
        let twin = check_level(&eck, lvl.root, lvl.coeffs.clone(), None).map_err(tagged("rosen-morse-energy-shared"))?;
        out.push(Finding::compare("rosen-morse-energy-shared", i, twin.e_derived, lvl.e_derived, 1e-8, "measured Eckart energy against the measured energy of the continued potential"));
    }
    if family == Family::Hulthen {
        let eck = hyperbolic_twin(params, Family::Eckart);
        let twin = EigenfunctionSpec::new(&eck, lvl.root, lvl.coeffs.clone())?;
        let mut worst = 0.0f64;
        for k in 1..=16 {
            let x = lvl.grid.x_min + (lvl.grid.x_max - lvl.grid.x_min) * k as f64 / 17.0;
            let (a, b) = (lvl.spec.log_abs(x)?, twin.log_abs(x / 2.0)?);
            if a.is_finite() && b.is_finite() {
                worst = worst.max(libm::fabs(a - b));
            }
        }
        out.push(Finding::deviation("hulthen-coordinate-halving", i, worst, IDENTITY_TOL, "max |ln|psi_H(x)| - ln|psi_E(x/2)|| over the grid"));
    }
    // closed forms of exactly solvable levels
    if let Some(ex) = &lvl.exact {
        match family {
            Family::Eckart | Family::Hulthen | Family::RosenMorse => {
                out.push(Finding::compare("eckart-exact-root", i, ex.printed_root, lvl.root, VALUE_TOL, "closed-form spectral value against the value solving the coefficient system"));
                let id = if family == Family::Hulthen { "hulthen-exact-energy" } else { "eckart-exact-energy" };
                out.push(Finding::compare(id, i, ex.printed_energy, lvl.e_derived, VALUE_TOL, "closed-form energy against the measured energy"));
            }
            Family::Coulomb => {
                let mut f = Finding::compare("coulomb-exact-root", i, ex.printed_root, lvl.root, VALUE_TOL, "closed-form spectral value against the value solving the coefficient system");
                if let FamilyParams::Coulomb(p) = params {
                    if libm::fabs(-2.0 * p.a - ex.printed_root - lvl.root) <= VALUE_TOL * (1.0 + libm::fabs(lvl.root)) {
                        f.note.push_str("; the closed form is the reflection eps -> -2a - eps of the consistent value and gives the same energy");
                    }
                }
                out.push(f);
                out.push(Finding::compare("coulomb-exact-energy", i, ex.printed_energy, lvl.e_derived, VALUE_TOL, "closed-form energy against the measured energy"));
            }
            _ => {}
        }
    }
    // displayed potentials against the potential rebuilt from the eigenfunction
    let samples = oracle_potential(&lvl.spec, lvl.e_derived, &lvl.grid, POTENTIAL_CUTOFF, POTENTIAL_PROBES)?;
    // term-by-term comparisons need no eigenfunction, so they span the whole natural domain
    let (lo, hi) = default_domain(&lvl.spec);
    let xs: Vec<f64> = (1..=POTENTIAL_PROBES).map(|k| lo + (hi - lo) * k as f64 / (POTENTIAL_PROBES + 1) as f64).collect();
    let canonical = |x: f64| potential_value(params, lvl.root, x).unwrap_or(f64::NAN);
    let rebuilt = "displayed potential against psi''/psi + E_derived";
    match params {
        FamilyParams::Eckart(_) => out.push(potential_finding("eckart-potential", index, &samples, canonical, rebuilt)),
        FamilyParams::Hulthen(h) => {
            let printed = |x: f64| hulthen_printed(h, lvl.root, x).unwrap_or(f64::NAN);
            out.push(potential_finding("hulthen-potential", index, &samples, printed, rebuilt));
            let term = |k: usize, printed: bool| {
                move |x: f64| {
                    let t = if printed { hulthen_terms_printed(h, lvl.root, x) } else { hulthen_terms_canonical(h, lvl.root, x) };
                    t.map(|t| t[k]).unwrap_or(f64::NAN)
                }
            };
            out.push(term_finding("hulthen-potential-term2", index, &xs, term(1, true), term(1, false), "displayed second term against the quarter-scaled halved Eckart potential"));
            out.push(term_finding("hulthen-potential-qterm", index, &xs, term(2, true), term(2, false), "displayed correction term against the quarter-scaled halved Eckart potential"));
        }
        FamilyParams::RosenMorse(h) => {
            let printed = |x: f64| rosen_morse_printed(h, lvl.root, x);
            out.push(potential_finding("rosen-morse-potential", index, &samples, printed, rebuilt));
            let term = |k: usize, printed: bool| {
                move |x: f64| {
                    if printed {
                        rosen_morse_terms_printed(h, lvl.root, x)[k]
                    } else {
                        rosen_morse_terms_canonical(h, lvl.root, x).map(|t| t[k]).unwrap_or(f64::NAN)
                    }
                }
            };
            out.push(term_finding("rosen-morse-potential-bracket", index, &xs, term(0, true), term(0, false), "displayed bracket (tan) against the continued bracket (tanh)"));
            out.push(term_finding("rosen-morse-potential-qterm", index, &xs, term(1, true), term(1, false), "displayed correction term against the continued correction term"));
            out.push(mirror_finding(params, h, index, lvl)?);
        }
        FamilyParams::Coulomb(_) | FamilyParams::CoulombEps(_) => {
            out.push(potential_finding("coulomb-potential", index, &samples, canonical, rebuilt))
        }
        FamilyParams::Oscillator(_) => {
            out.push(potential_finding("oscillator-potential", index, &samples, canonical, rebuilt))
        }
    }
    // the level is a genuine eigenpair
    out.push(Finding::deviation(
        "quantization-consistency",
        i,
        lvl.residual,
        RESIDUAL_TOL,
        format!("residual at the measured energy; constancy deviation {:e}", lvl.constancy),
    ));
    if lvl.normalizable {
        let (fd, h) = fd_nearest(&lvl.spec, lvl.e_derived).map_err(tagged("fd-membership"))?;
        let tol = (1e-3f64).max(5.0 * h * h * (1.0 + libm::fabs(lvl.e_derived)));
        let mut f = Finding::compare("fd-membership", i, lvl.e_derived, fd, 0.0, "measured energy against the nearest finite-difference eigenvalue (Richardson extrapolated)");
        f.verdict = if libm::fabs(lvl.e_derived - fd) <= tol { Verdict::Consistent } else { Verdict::Inconsistent };
        out.push(f);
    } else {
        out.push(Finding::new("fd-membership", i, "level is not normalizable"));
    }
    Ok(())
}

/// Checks the displayed relation `ψ_RM(x) = ψ(−x)` on the negative half-line:
/// the ratio of the two functions must be constant.
fn mirror_finding(params: &FamilyParams<f64>, h: &HyperbolicParams<f64>, index: usize, lvl: &QesLevel) -> Result<Finding, QesError> {
    let eck = EigenfunctionSpec::new(&hyperbolic_twin(params, Family::Eckart), lvl.root, lvl.coeffs.clone())?;
    let mut logs = Vec::new();
    for k in 1..=24 {
        let x = -(0.1 + 3.9 * k as f64 / 24.0) / h.alpha;
        let (a, b) = (lvl.spec.log_abs(x)?, eck.log_abs(-x)?);
        if a.is_finite() && b.is_finite() {
            logs.push(a - b);
        }
    }
    let spread = if logs.is_empty() {
        f64::INFINITY
    } else {
        logs.iter().copied().fold(f64::NEG_INFINITY, f64::max) - logs.iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok(Finding::deviation("rosen-morse-mirror", Some(index), spread, VALUE_TOL, "spread of ln|psi_RM(x)/psi_E(-x)| over x < 0"))
}

fn family_findings<T: Coeff>(params: &FamilyParams<T>, levels: &[QesLevel], out: &mut Vec<Finding>) -> Result<(), QesError> {
    let pf = params.to_float();
    let q_zero = params.q().is_zero();
    match &pf {
        FamilyParams::Eckart(_) | FamilyParams::Hulthen(_) | FamilyParams::RosenMorse(_) if !q_zero => {
            let own = make_recurrence(params)?;
            let same = [Family::Eckart, Family::Hulthen, Family::RosenMorse].iter().all(|&f| {
                params
                    .with_hyperbolic_family(f)
                    .and_then(|p| make_recurrence(&p).ok())
                    .is_some_and(|spec| spec == own)
            });
            let mut f = Finding::new("hyperbolic-recurrence-shared", None, "Eckart, Hulten and Rosen-Morse recurrences built from the same parameters are identical");
            f.verdict = if same { Verdict::Consistent } else { Verdict::Inconsistent };
            out.push(f);
        }
        _ => {}
    }
    if let FamilyParams::RosenMorse(h) = &pf {
        let lambda = levels.first().map_or(0.0, |l| l.root);
        let (mut printed, mut used) = (0.0f64, 0.0f64);
        for k in 0..=40 {
            let x = (-3.0 + 6.0 * k as f64 / 40.0) / h.alpha;
            let quarter = eckart_potential_complex(h, lambda, Complex64::new(x, PI / (4.0 * h.alpha)));
            let half = eckart_potential_complex(h, lambda, Complex64::new(x, PI / (2.0 * h.alpha)));
            printed = printed.max(libm::fabs(quarter.im) / (1.0 + quarter.norm()));
            used = used.max(libm::fabs(half.im) / (1.0 + half.norm()));
        }
        let mut f = Finding::deviation("rosen-morse-shift", None, printed, 1e-12, "relative imaginary part of the Eckart potential under the displayed shift i*pi/(4 alpha)");
        f.stated = finite(printed);
        f.oracle = finite(used);
        f.note.push_str(&format!("; the continuation uses i*pi/(2 alpha), imaginary part {used:e}"));
        out.push(f);
    }
    if let FamilyParams::Coulomb(p) = &pf {
        if !q_zero {
            let consistent = spectrum_roots(&build_sequence(&make_recurrence(params)?)?)?.values_with_multiplicity();
            let reflected =
                spectrum_roots(&build_sequence(&make_recurrence_with(params, CoulombDiagonal::Reflected)?)?)?
                    .values_with_multiplicity();
            let dev = if consistent.len() == reflected.len() {
                consistent.iter().zip(&reflected).map(|(a, b)| libm::fabs(a - b)).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            let mut mirrored: Vec<f64> = reflected.iter().map(|r| -2.0 * p.a - r).collect();
            mirrored.sort_by(f64::total_cmp);
            let is_reflection = mirrored.len() == consistent.len()
                && mirrored.iter().zip(&consistent).all(|(a, b)| libm::fabs(a - b) <= VALUE_TOL * (1.0 + libm::fabs(*b)));
            let mut f = Finding::deviation("coulomb-recurrence", None, dev, VALUE_TOL, "critical roots of the displayed diagonal against those of the consistent diagonal");
            if is_reflection {
                f.note.push_str("; the displayed roots are the reflection eps -> -2a - eps of the consistent roots");
            }
            out.push(f);
        }
    }
    if let FamilyParams::CoulombEps(_) = params {
        if !q_zero {
            let seq = build_sequence(&make_recurrence(params)?)?;
            let top = params.two_j().degree();
            for m in 1..=4usize {
                let id = ["pair-polynomial-1", "pair-polynomial-2", "pair-polynomial-3", "pair-polynomial-4"][m - 1];
                let computed = if m <= top {
                    Some(monic_normal_form(&seq, m)?)
                } else if m == top + 1 && !seq.critical.is_zero() {
                    Some(seq.critical.monic())
                } else {
                    None
                };
                let (Some(computed), FamilyParams::CoulombEps(pp)) = (computed, params) else {
                    out.push(Finding::new(id, None, "polynomial index beyond 2j + 1"));
                    continue;
                };
                let displayed = displayed_pair_polynomial(pp, m).expect("index 1..=4");
                let len = computed.coeffs().len().max(displayed.coeffs().len());
                let (mut equal, mut dev) = (true, 0.0f64);
                for k in 0..len {
                    let (a, b) = (computed.coeff(k), displayed.coeff(k));
                    equal &= a == b;
                    dev = dev.max(libm::fabs(a.to_f64() - b.to_f64()));
                }
                let exact = T::MODE == Mode::Exact;
                let mut f = Finding::new(id, None, if exact { "exact coefficient comparison of monic polynomials" } else { "coefficient comparison of monic polynomials" });
                let ok = if exact { equal } else { dev <= IDENTITY_TOL * (1.0 + displayed.max_abs_coeff()) };
                f.verdict = if ok { Verdict::Consistent } else { Verdict::Inconsistent };
                f.abs_diff = finite(dev);
                out.push(f);
            }
            let table = match &pf {
                FamilyParams::CoulombEps(pp) => displayed_pair_roots(pp),
                _ => None,
            };
            if let Some(table) = table {
                let computed = spectrum_roots(&seq)?.values_with_multiplicity();
                let dev = if computed.len() == table.len() {
                    computed.iter().zip(&table).map(|(a, b)| libm::fabs(a - b) / (1.0 + libm::fabs(*b))).fold(0.0, f64::max)
                } else {
                    f64::INFINITY
                };
                out.push(Finding::deviation("pair-root-table", None, dev, 1e-9, "tabulated closed-form roots against the critical roots"));
            }
        }
    }
    Ok(())
}

fn applicability_note(id: &str, family: Family) -> String {
    format!("{id} does not apply to the {family} family at this parameter point")
}

/// Audits every displayed formula that applies to a parameter point.
///
/// `m` selects an exactly solvable level (requires `q = 0`); `grid` overrides the
/// per-level audit grid. Sub-operation failures are tagged with the formula under test.
pub fn audit_family<T: Coeff>(
    params: &FamilyParams<T>,
    m: Option<usize>,
    grid: Option<GridSpec>,
) -> Result<AuditReport, QesError> {
    let spectrum = solve_spectrum(params, m, grid)?;
    let pf = &spectrum.params;
    let family = pf.family();
    let mut details = Vec::new();
    for (i, lvl) in spectrum.levels.iter().enumerate() {
        level_findings(pf, i, lvl, &mut details)?;
    }
    family_findings(params, &spectrum.levels, &mut details)?;
    let formulas = FORMULA_IDS
        .iter()
        .map(|id| {
            details
                .iter()
                .filter(|f| f.formula == *id)
                .fold(None::<&Finding>, |best, f| match best {
                    Some(b) if b.verdict >= f.verdict => Some(b),
                    _ => Some(f),
                })
                .cloned()
                .unwrap_or_else(|| Finding::new(id, None, applicability_note(id, family)))
        })
        .collect();
    let mut notes = Vec::new();
    if family == Family::RosenMorse {
        notes.push("Rosen-Morse potential obtained from the Eckart one by the shift x -> x + i*pi/(2 alpha)".to_string());
    }
    if family == Family::Hulthen {
        notes.push("Hulten potential defined as (V_E(x/2) - A alpha^2)/4".to_string());
    }
    if family == Family::Coulomb {
        notes.push("Coulomb recurrence uses the diagonal a - (eps + a)(l + m + 1)".to_string());
    }
    notes.push(format!("energies and roots compared with relative tolerance {VALUE_TOL:e}, potentials with {POTENTIAL_TOL:e}"));
    Ok(AuditReport {
        family,
        two_j: pf.two_j().0,
        precision: spectrum.mode.to_string(),
        params: pf.named_values().into_iter().map(|(name, value)| ParamValue { name: name.to_string(), value }).collect(),
        levels: spectrum
            .levels
            .iter()
            .map(|l| LevelSummary { root: l.root, e_stated: l.e_stated, e_derived: l.e_derived, residual: l.residual, normalizable: l.normalizable })
            .collect(),
        formulas,
        details,
        notes,
    })
}
