//! Recurrence polynomials `P_0 … P_{2j}`, the critical polynomial and eigenfunction coefficients.
//!
//! Every family comes with a recurrence
//! `A_m P_{m+1} + B_m P_m + C_m P_{m-1} (+ D_m P_{m-2}) = 0` whose shift coefficient
//! `A_m` vanishes at `m = 2j`. The `m = 2j` row, with its vanished `P_{2j+1}` term
//! dropped, is the critical polynomial; its roots are the quantized spectral values.
//!
//! Independently, [`coeff_vector_from_ode`] substitutes the polynomial ansatz into the
//! governing differential equation and solves the resulting banded linear system, so
//! the two routes to quantization can be cross-checked.

use alloc::vec;
use alloc::vec::Vec;

use crate::families::{Family, FamilyError, FamilyParams, TwoJ};
use crate::numkit::{Coeff, NumError, RootSet, UniPoly, Var};

/// Failure while building or using a recurrence.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RecurrenceError {
    /// Parameters were rejected.
    #[error(transparent)]
    Family(#[from] FamilyError),
    /// Polynomial arithmetic failed.
    #[error(transparent)]
    Num(#[from] NumError),
    /// `q = 0` with `j > 0`: every shift coefficient vanishes.
    #[error("q = 0 makes the recurrence degenerate; use the exactly solvable case instead")]
    ExactlySolvable,
    /// The requested index lies outside `0..=2j`.
    #[error("index {m} outside 0..={max}")]
    OutOfRange {
        /// Requested index.
        m: usize,
        /// Largest valid index.
        max: usize,
    },
    /// The coefficient system is inconsistent: the value is not a quantized root.
    #[error("spectral value is not an eigenvalue (consistency residual {residual:e})")]
    NotAnEigenvalue {
        /// Relative residual of the unused equation.
        residual: f64,
    },
}

/// Which recurrence shape a family uses; Eckart, Hultén and Rosen-Morse share one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RecurrenceKind {
    /// Three-term recurrence in `λ` shared by the hyperbolic families.
    Hyperbolic,
    /// Three-term recurrence in `ε` of the perturbed Coulomb family.
    Coulomb,
    /// Three-term recurrence of the Coulomb family on the line `ε = −a`.
    CoulombPair,
    /// Four-term recurrence in `ε` of the oscillator family.
    Oscillator,
}

impl RecurrenceKind {
    /// Recurrence shape used by a family.
    pub fn of(family: Family) -> Self {
        match family {
            Family::Eckart | Family::Hulthen | Family::RosenMorse => RecurrenceKind::Hyperbolic,
            Family::Coulomb => RecurrenceKind::Coulomb,
            Family::CoulombEps => RecurrenceKind::CoulombPair,
            Family::Oscillator => RecurrenceKind::Oscillator,
        }
    }
}

/// Which diagonal to use for the perturbed Coulomb family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoulombDiagonal {
    /// `a − (ε+a)(ℓ+m+1)`: the diagonal obtained by substituting the eigenfunction
    /// into the Schrödinger equation.
    Consistent,
    /// `(ε+a)(ℓ+m+1) + a`: the reflected reading, whose roots are mapped by
    /// `ε ↦ −2a − ε` and which reproduces the same energies.
    Reflected,
}

/// Row `m` of a recurrence: `shift·P_{m+1} + diag·P_m + sub·P_{m-1} + subsub·P_{m-2} = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceRow<T> {
    /// Shift coefficient `A_m`; zero exactly at `m = 2j`.
    pub shift: T,
    /// Diagonal coefficient `B_m`.
    pub diag: UniPoly<T>,
    /// Sub-diagonal coefficient `C_m`.
    pub sub: UniPoly<T>,
    /// Sub-sub-diagonal coefficient `D_m` (oscillator only).
    pub subsub: Option<T>,
}

/// A family's recurrence, tabulated for `m = 0 … 2j`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceSpec<T> {
    /// Recurrence shape.
    pub kind: RecurrenceKind,
    /// Cutoff degree `2j`.
    pub two_j: TwoJ,
    /// Spectral variable.
    pub var: Var,
    /// Rows `0..=2j`.
    pub rows: Vec<RecurrenceRow<T>>,
}

fn int<T: Coeff>(v: i64) -> T {
    T::from_i64(v)
}

/// Builds the recurrence of a family; the Coulomb family uses the consistent diagonal.
pub fn make_recurrence<T: Coeff>(params: &FamilyParams<T>) -> Result<RecurrenceSpec<T>, RecurrenceError> {
    make_recurrence_with(params, CoulombDiagonal::Consistent)
}

/// Builds the recurrence of a family with an explicit choice of Coulomb diagonal.
///
/// The choice only matters for [`Family::Coulomb`].
pub fn make_recurrence_with<T: Coeff>(
    params: &FamilyParams<T>,
    diagonal: CoulombDiagonal,
) -> Result<RecurrenceSpec<T>, RecurrenceError> {
    params.validate()?;
    let two_j = params.two_j();
    let n = two_j.degree() as i64;
    let j: T = two_j.j();
    let var = params.family().var();
    let x = UniPoly::<T>::x(var);
    let c = |v: T| UniPoly::constant(v, var);
    let mut rows = Vec::with_capacity(two_j.degree() + 1);
    for m in 0..=n {
        let mt: T = int(m);
        let row = match params {
            FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => {
                // −((λ + 2(L+2j−m+2))(L+m+1) − A) and m(4L+4j−2m+6+λ)
                let lm1 = p.l.clone() + mt.clone() + T::one();
                let k = int::<T>(2) * (p.l.clone() + int::<T>(2) * j.clone() - mt.clone() + int(2));
                let diag = UniPoly::linear(p.a.clone() - k * lm1.clone(), -lm1, var);
                let sub0 = mt.clone()
                    * (int::<T>(4) * p.l.clone() + int::<T>(4) * j.clone() - int::<T>(2) * mt.clone() + int(6));
                RecurrenceRow {
                    shift: int::<T>(2) * p.q.clone() * (int::<T>(n) - mt.clone()),
                    diag,
                    sub: UniPoly::linear(sub0, mt.clone(), var),
                    subsub: None,
                }
            }
            FamilyParams::Coulomb(p) => {
                let lm1 = p.ell.clone() + mt.clone() + T::one();
                let diag = match diagonal {
                    CoulombDiagonal::Consistent => {
                        UniPoly::linear(p.a.clone() - p.a.clone() * lm1.clone(), -lm1, var)
                    }
                    CoulombDiagonal::Reflected => {
                        UniPoly::linear(p.a.clone() * lm1.clone() + p.a.clone(), lm1, var)
                    }
                };
                RecurrenceRow {
                    shift: int::<T>(2) * p.q.clone() * (int::<T>(n) - mt.clone()),
                    diag,
                    sub: c(mt.clone() * (int::<T>(2) * p.ell.clone() + mt.clone() + T::one())),
                    subsub: None,
                }
            }
            FamilyParams::CoulombEps(p) => RecurrenceRow {
                shift: int::<T>(2) * p.q.clone() * (int::<T>(n) - mt.clone()),
                diag: -&x,
                sub: c(mt.clone() * (int::<T>(2) * p.ell.clone() + mt.clone() + T::one())),
                subsub: None,
            },
            FamilyParams::Oscillator(p) => {
                // ¼(2a(ε+4j−2m+4) − ℓ²)
                let half_a = p.a.clone() / int(2);
                let c0 = half_a.clone() * (int::<T>(4) * j.clone() - int::<T>(2) * mt.clone() + int(4))
                    - p.ell.clone() * p.ell.clone() / int(4);
                RecurrenceRow {
                    shift: int::<T>(2) * p.q.clone() * (mt.clone() - int::<T>(n)),
                    diag: UniPoly::linear(c0, half_a, var),
                    sub: c(-(mt.clone() * p.ell.clone())),
                    subsub: Some(-(mt.clone() * (mt.clone() - T::one()))),
                }
            }
        };
        rows.push(row);
    }
    Ok(RecurrenceSpec { kind: RecurrenceKind::of(params.family()), two_j, var, rows })
}

/// The polynomials `P_0 … P_{2j}` of a recurrence and its critical polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct BdSequence<T> {
    /// `P_0 … P_{2j}` in the raw normalization produced by dividing by `A_m`.
    pub polys: Vec<UniPoly<T>>,
    /// Remainder of row `2j`; degree `2j + 1` generically.
    pub critical: UniPoly<T>,
    /// Recurrence the sequence was built from.
    pub spec: RecurrenceSpec<T>,
}

/// Runs the recurrence: each row `m < 2j` is solved for `P_{m+1}`; row `2j` gives the critical polynomial.
pub fn build_sequence<T: Coeff>(spec: &RecurrenceSpec<T>) -> Result<BdSequence<T>, RecurrenceError> {
    let var = spec.var;
    let n = spec.two_j.degree();
    let mut polys = vec![UniPoly::constant(T::one(), var)];
    let row_sum = |polys: &[UniPoly<T>], m: usize| -> UniPoly<T> {
        let row = &spec.rows[m];
        let mut acc = &row.diag * &polys[m];
        if m >= 1 {
            acc = &acc + &(&row.sub * &polys[m - 1]);
        }
        if let (Some(d), true) = (&row.subsub, m >= 2) {
            acc = &acc + &polys[m - 2].scale(d);
        }
        acc
    };
    for m in 0..n {
        let shift = &spec.rows[m].shift;
        if shift.is_zero() {
            return Err(RecurrenceError::ExactlySolvable);
        }
        let rest = row_sum(&polys, m);
        let next = rest.scale(&(-(T::one() / shift.clone())));
        polys.push(next);
    }
    let critical = row_sum(&polys, n);
    Ok(BdSequence { polys, critical, spec: spec.clone() })
}

/// `P_m` rescaled to leading coefficient 1.
pub fn monic_normal_form<T: Coeff>(seq: &BdSequence<T>, m: usize) -> Result<UniPoly<T>, RecurrenceError> {
    seq.polys
        .get(m)
        .map(UniPoly::monic)
        .ok_or(RecurrenceError::OutOfRange { m, max: seq.polys.len() - 1 })
}

/// All roots of the critical polynomial (exact isolation for rationals, companion matrix for floats).
pub fn spectrum_roots<T: Coeff>(seq: &BdSequence<T>) -> Result<RootSet, RecurrenceError> {
    Ok(T::find_roots(&seq.critical)?)
}

/// Coefficients `c_0 … c_d` of the polynomial part of an eigenfunction, normalized to `c_0 = 1`
/// (to a lowest nonzero coefficient of 1 when the constant term vanishes exactly).
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector<T> {
    /// Ascending coefficients in the family's polynomial variable.
    pub c: Vec<T>,
}

impl<T: Coeff> CoeffVector<T> {
    /// Coefficients as doubles.
    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(Coeff::to_f64).collect()
    }
}

/// One row of the linear system obtained by inserting `Σ a_k t^k` into the differential equation:
/// `up2·a_{m+2} + up·a_{m+1} + diag·a_m + down·a_{m-1} = 0`.
#[derive(Clone, Debug)]
pub(crate) struct OdeRow<T> {
    pub up2: T,
    pub up: T,
    pub diag: T,
    pub down: T,
}

/// Row `m` of the coefficient system at spectral value `root` (for Coulomb-pair, `a = −root`).
pub(crate) fn ode_row<T: Coeff>(params: &FamilyParams<T>, root: &T, m: i64) -> OdeRow<T> {
    let mt: T = int(m);
    let j: T = params.two_j().j();
    let two = || int::<T>(2);
    let coulomb = |ell: &T, a: &T, q: &T| OdeRow {
        up2: T::zero(),
        up: (mt.clone() + T::one()) * (mt.clone() + two() * ell.clone() + two()),
        diag: (root.clone() + a.clone()) * (ell.clone() + mt.clone() + T::one()) - a.clone(),
        down: two() * q.clone() * (two() * j.clone() - mt.clone() + T::one()),
    };
    match params {
        FamilyParams::Eckart(p) | FamilyParams::Hulthen(p) | FamilyParams::RosenMorse(p) => {
            let four = int::<T>(4);
            OdeRow {
                up2: T::zero(),
                up: (mt.clone() + T::one())
                    * (two() * mt.clone() - four.clone() * p.l.clone() - four * j.clone() - int(4) - root.clone()),
                diag: (root.clone() + two() * (p.l.clone() + two() * j.clone() - mt.clone() + two()))
                    * (p.l.clone() + mt.clone() + T::one())
                    - p.a.clone(),
                down: two() * p.q.clone() * (mt.clone() - T::one() - two() * j),
            }
        }
        FamilyParams::Coulomb(p) => coulomb(&p.ell, &p.a, &p.q),
        FamilyParams::CoulombEps(p) => coulomb(&p.ell, &(-root.clone()), &p.q),
        FamilyParams::Oscillator(p) => OdeRow {
            up2: (mt.clone() + T::one()) * (mt.clone() + two()),
            up: p.ell.clone() * (mt.clone() + T::one()),
            diag: p.a.clone() * mt.clone() + p.ell.clone() * p.ell.clone() / int(4)
                - p.a.clone() / two() * (root.clone() + int::<T>(4) * j.clone() + int(4)),
            down: two() * p.q.clone() * (two() * j - mt + T::one()),
        },
    }
}

/// Relative tolerance on the consistency equation in float mode.
const FLOAT_CONSISTENCY_TOL: f64 = 1e-7;

/// Eigenfunction coefficients at a spectral root, from the differential equation directly.
///
/// The system has `2j + 1` unknowns and `2j + 1` equations; rows `2j … 1` fix the
/// coefficients from `a_{2j} = 1` downwards and row 0 is the consistency condition,
/// which holds exactly when `root` is a root of the critical polynomial.
pub fn coeff_vector_from_ode<T: Coeff>(
    params: &FamilyParams<T>,
    root: &T,
) -> Result<CoeffVector<T>, RecurrenceError> {
    params.validate()?;
    let n = params.two_j().degree();
    if n > 0 && params.q().is_zero() {
        return Err(RecurrenceError::ExactlySolvable);
    }
    let mut a = vec![T::zero(); n + 3];
    a[n] = T::one();
    for m in (1..=n).rev() {
        let row = ode_row(params, root, m as i64);
        let rhs = row.up2 * a[m + 2].clone() + row.up * a[m + 1].clone() + row.diag * a[m].clone();
        a[m - 1] = -rhs / row.down;
    }
    let row = ode_row(params, root, 0);
    let terms = [row.up2 * a[2].clone(), row.up * a[1].clone(), row.diag * a[0].clone()];
    let residual = terms.iter().cloned().fold(T::zero(), |s, t| s + t);
    check_consistency(&residual, &terms)?;
    Ok(normalize(a, n))
}

fn check_consistency<T: Coeff>(residual: &T, terms: &[T]) -> Result<(), RecurrenceError> {
    let scale: f64 = terms.iter().map(|t| t.to_f64().abs()).sum();
    let rel = residual.to_f64().abs() / scale.max(f64::MIN_POSITIVE);
    let ok = match T::MODE {
        crate::numkit::Mode::Exact => residual.is_zero(),
        crate::numkit::Mode::Float => rel <= FLOAT_CONSISTENCY_TOL || residual.to_f64() == 0.0,
    };
    if ok {
        Ok(())
    } else {
        Err(RecurrenceError::NotAnEigenvalue { residual: rel })
    }
}

fn normalize<T: Coeff>(mut a: Vec<T>, degree: usize) -> CoeffVector<T> {
    a.truncate(degree + 1);
    // the top coefficient is 1, so the search always succeeds
    let lead = a.iter().find(|v| !v.is_zero()).cloned().unwrap_or_else(T::one);
    CoeffVector { c: a.into_iter().map(|v| v / lead.clone()).collect() }
}

/// Eigenfunction coefficients of an exactly solvable (`q = 0`) level of polynomial degree `m`.
///
/// With `q = 0` the coefficient system is upper triangular, so row `m` must have a
/// vanishing diagonal (that fixes the spectral value) and rows `m−1 … 0` fix the rest.
pub fn exact_coeff_vector<T: Coeff>(
    params: &FamilyParams<T>,
    root: &T,
    m: usize,
) -> Result<CoeffVector<T>, RecurrenceError> {
    let mut a = vec![T::zero(); m + 3];
    a[m] = T::one();
    let top = ode_row(params, root, m as i64);
    check_consistency(&top.diag, &[top.diag.clone(), T::one()])?;
    for k in (0..m).rev() {
        let row = ode_row(params, root, k as i64);
        if row.diag.is_zero() {
            return Err(RecurrenceError::NotAnEigenvalue { residual: 0.0 });
        }
        let rhs = row.up2 * a[k + 2].clone() + row.up * a[k + 1].clone();
        a[k] = -rhs / row.diag;
    }
    Ok(normalize(a, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::families::{CoulombParams, HyperbolicParams, OscillatorParams, PairParams};
    use crate::numkit::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn eckart(two_j: u32) -> FamilyParams<Rational> {
        FamilyParams::Eckart(HyperbolicParams { l: q(0, 1), a: q(12, 1), q: q(1, 1), alpha: q(1, 1), two_j: TwoJ(two_j) })
    }

    fn pair(two_j: u32) -> FamilyParams<Rational> {
        FamilyParams::CoulombEps(PairParams { ell: q(0, 1), q: q(1, 1), two_j: TwoJ(two_j) })
    }

    #[test]
    fn eckart_first_row() {
        let spec = make_recurrence(&eckart(1)).unwrap();
        let row = &spec.rows[0];
        assert_eq!(row.shift, q(2, 1));
        // −((λ + 6)·1 − 12) = 6 − λ
        assert_eq!(row.diag, UniPoly::linear(q(6, 1), q(-1, 1), Var::Lambda));
        assert!(spec.rows[1].shift.is_zero());
        let seq = build_sequence(&spec).unwrap();
        assert_eq!(seq.polys[1], UniPoly::linear(q(-3, 1), q(1, 2), Var::Lambda));
    }

    #[test]
    fn pair_first_row_and_sequence() {
        let spec = make_recurrence(&pair(2)).unwrap();
        assert_eq!(spec.rows[0].shift, q(4, 1));
        assert_eq!(spec.rows[0].diag, -&UniPoly::x(Var::Epsilon));
        let seq = build_sequence(&spec).unwrap();
        assert_eq!(seq.polys[0], UniPoly::constant(q(1, 1), Var::Epsilon));
        assert_eq!(seq.polys[1], UniPoly::linear(q(0, 1), q(1, 4), Var::Epsilon));
        assert_eq!(monic_normal_form(&seq, 1).unwrap(), UniPoly::x(Var::Epsilon));
        assert!(monic_normal_form(&seq, 3).is_err());
    }

    #[test]
    fn oscillator_ground_row() {
        let p = FamilyParams::Oscillator(OscillatorParams { ell: q(2, 1), a: q(2, 1), q: q(1, 1), two_j: TwoJ(0) });
        let spec = make_recurrence(&p).unwrap();
        assert_eq!(spec.rows.len(), 1);
        assert!(spec.rows[0].shift.is_zero());
        assert!(spec.rows[0].subsub.is_some());
        let seq = build_sequence(&spec).unwrap();
        let roots = spectrum_roots(&seq).unwrap();
        // ε = ℓ²/(2a) − 4 = −3
        assert_eq!(roots.real_roots[0].exact, Some(q(-3, 1)));
    }

    #[test]
    fn degenerate_q_is_signalled() {
        let p = FamilyParams::Coulomb(CoulombParams { ell: q(0, 1), a: q(1, 1), q: q(0, 1), two_j: TwoJ(2) });
        let spec = make_recurrence(&p).unwrap();
        assert_eq!(build_sequence(&spec), Err(RecurrenceError::ExactlySolvable));
    }

    #[test]
    fn two_electron_coefficients() {
        let c = coeff_vector_from_ode(&pair(1), &q(-2, 1)).unwrap();
        assert_eq!(c.c, vec![q(1, 1), q(1, 1)]);
        assert!(matches!(
            coeff_vector_from_ode(&pair(1), &q(1, 1)),
            Err(RecurrenceError::NotAnEigenvalue { .. })
        ));
        assert_eq!(coeff_vector_from_ode(&pair(0), &q(0, 1)).unwrap().c, vec![q(1, 1)]);
    }
}
