//! Real-root isolation: Sturm chains in exact arithmetic, balanced companion matrices in floats.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::error::NumError;
use super::poly::UniPoly;
use super::scalar::{rational_to_f64, sign_of, Coeff, Rational};

/// Imaginary-part cutoff (relative to `1 + |re|`) below which a companion eigenvalue is real.
pub const IMAG_CUTOFF: f64 = 1e-9;

/// Distance (relative to `max(1, |z|)`) below which companion eigenvalues are merged.
pub const MERGE_RADIUS: f64 = 1e-7;

/// Algorithm that produced a [`RootSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RootMethod {
    /// Sturm-chain isolation plus bisection on an exact rational polynomial.
    Sturm,
    /// Eigenvalues of the balanced companion matrix.
    Companion,
}

/// One distinct real root.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    /// Root location (midpoint of the final isolating interval for Sturm roots).
    pub value: f64,
    /// Multiplicity as a root of the source polynomial.
    pub multiplicity: usize,
    /// Exact value when the root was recognised as rational.
    pub exact: Option<Rational>,
}

/// All real roots of a polynomial plus the number of non-real ones.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Distinct real roots, ascending.
    pub real_roots: Vec<RealRoot>,
    /// Number of non-real roots counted with multiplicity (always even for real input).
    pub complex_count: usize,
    /// Producing algorithm.
    pub method: RootMethod,
    /// Degree of the source polynomial.
    pub degree: usize,
}

impl RootSet {
    /// Real roots repeated according to multiplicity, ascending.
    pub fn values_with_multiplicity(&self) -> Vec<f64> {
        self.real_roots
            .iter()
            .flat_map(|r| core::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    /// Number of real roots counted with multiplicity.
    pub fn real_count(&self) -> usize {
        self.real_roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Isolates every real root of an exact polynomial and refines it to width `< tol`.
///
/// Multiplicities come from a square-free factorisation; roots that are rational with
/// a small enough description are reported exactly.
pub fn sturm_real_roots(p: &UniPoly<Rational>, tol: f64) -> Result<RootSet, NumError> {
    let degree = match p.degree() {
        None => return Err(NumError::DegreeTooLow("zero polynomial")),
        Some(0) => return Err(NumError::DegreeTooLow("constant polynomial")),
        Some(d) => d,
    };
    let tol = Rational::from_float(tol.max(1e-300)).ok_or(NumError::NonFinite)?;
    let mut real_roots = Vec::new();
    for (factor, multiplicity) in square_free_factors(p)? {
        for (value, exact) in isolate_square_free(&factor, &tol)? {
            real_roots.push(RealRoot { value, multiplicity, exact });
        }
    }
    real_roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    let real: usize = real_roots.iter().map(|r| r.multiplicity).sum();
    Ok(RootSet { real_roots, complex_count: degree - real, method: RootMethod::Sturm, degree })
}

/// Yun's square-free decomposition: pairs `(g_i, i)` with `p = c · Π g_i^i`.
fn square_free_factors(p: &UniPoly<Rational>) -> Result<Vec<(UniPoly<Rational>, usize)>, NumError> {
    let dp = p.derivative();
    let a0 = p.gcd(&dp)?;
    let mut b = p.div_rem(&a0)?.0;
    let c = dp.div_rem(&a0)?.0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().is_some_and(|deg| deg > 0) {
        let a = b.gcd(&d)?;
        if a.degree().is_some_and(|deg| deg > 0) {
            out.push((a.clone(), i));
        }
        let next_b = b.div_rem(&a)?.0;
        let next_c = d.div_rem(&a)?.0;
        d = &next_c - &next_b.derivative();
        b = next_b;
        i += 1;
    }
    Ok(out)
}

/// Sturm chain of a square-free polynomial, each member scaled to a unit-magnitude leading term.
fn sturm_chain(f: &UniPoly<Rational>) -> Result<Vec<UniPoly<Rational>>, NumError> {
    let normalise = |p: UniPoly<Rational>| match p.leading() {
        Some(lead) => {
            let s = Rational::one() / lead.abs();
            p.scale(&s)
        }
        None => p,
    };
    let mut chain = vec![normalise(f.clone()), normalise(f.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].degree().is_none_or(|d| d == 0) {
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(normalise(-&r));
    }
    Ok(chain)
}

fn sign_changes(chain: &[UniPoly<Rational>], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let s = sign_of(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Strict bound on root magnitudes: `1 + max |a_i / a_n|`.
fn cauchy_bound(f: &UniPoly<Rational>) -> Rational {
    let lead = f.leading().expect("nonzero polynomial").abs();
    let max = f.coeffs().iter().map(|c| c.abs() / lead.clone()).fold(Rational::zero(), |m, v| {
        if v > m {
            v
        } else {
            m
        }
    });
    max + Rational::one()
}

/// A point of `(a, b)` that is not a root of `f`, close to the midpoint.
fn split_point(f: &UniPoly<Rational>, a: &Rational, b: &Rational) -> Rational {
    let width = b.clone() - a.clone();
    for (num, den) in [(1i64, 2i64), (3, 7), (4, 7), (2, 5), (3, 5), (1, 3), (2, 3)] {
        let m = a.clone() + width.clone() * Rational::from_ratio(num, den);
        if !f.eval(&m).is_zero() {
            return m;
        }
    }
    // `f` has at most deg roots, so one of the candidates above always succeeds for deg < 7;
    // larger degrees fall back to scanning a finer ladder.
    let mut k = 8i64;
    loop {
        let m = a.clone() + width.clone() * Rational::from_ratio(1, k);
        if !f.eval(&m).is_zero() {
            return m;
        }
        k += 1;
    }
}

fn isolate_square_free(
    f: &UniPoly<Rational>,
    tol: &Rational,
) -> Result<Vec<(f64, Option<Rational>)>, NumError> {
    if f.degree() == Some(1) {
        let root = -f.coeff(0) / f.coeff(1);
        return Ok(vec![(rational_to_f64(&root), Some(root))]);
    }
    let chain = sturm_chain(f)?;
    let bound = cauchy_bound(f);
    let mut stack = vec![(-bound.clone(), bound)];
    let mut found = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&chain, &a) - sign_changes(&chain, &b);
        match count {
            0 => {}
            1 => found.push(refine(f, a, b, tol)),
            _ => {
                let m = split_point(f, &a, &b);
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    Ok(found)
}

/// Bisects `(a, b)`, which brackets exactly one simple root of `f`, down to width `tol`.
fn refine(f: &UniPoly<Rational>, mut a: Rational, mut b: Rational, tol: &Rational) -> (f64, Option<Rational>) {
    let two = Rational::from_integer(2.into());
    let sa = sign_of(&f.eval(&a));
    for _ in 0..400 {
        if (b.clone() - a.clone()) < *tol {
            break;
        }
        let m = (a.clone() + b.clone()) / two.clone();
        let sm = sign_of(&f.eval(&m));
        if sm == 0 {
            return (rational_to_f64(&m), Some(m));
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    let candidate = simplest_between(&a, &b);
    if f.eval(&candidate).is_zero() {
        return (rational_to_f64(&candidate), Some(candidate));
    }
    let mid = (a + b) / two;
    (rational_to_f64(&mid), None)
}

/// The rational of smallest denominator in the closed interval `[lo, hi]`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi.clone(), &-lo.clone())
    } else {
        Rational::zero()
    }
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let ceil = lo.ceil();
    if ceil <= *hi {
        return ceil;
    }
    let n = lo.floor();
    let inner = simplest_positive(
        &(Rational::one() / (hi.clone() - n.clone())),
        &(Rational::one() / (lo.clone() - n.clone())),
    );
    n + Rational::one() / inner
}

/// All roots of a floating-point polynomial from the eigenvalues of its balanced companion matrix.
///
/// Eigenvalues within [`MERGE_RADIUS`] are merged into one root with multiplicity;
/// merged clusters whose mean has `|im| < IMAG_CUTOFF·(1+|re|)` are reported as real.
pub fn companion_all_roots<T: Coeff>(p: &UniPoly<T>) -> Result<RootSet, NumError> {
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(NumError::NonFinite);
    }
    let degree = match p.degree() {
        None => return Err(NumError::DegreeTooLow("zero polynomial")),
        Some(0) => return Err(NumError::DegreeTooLow("constant polynomial")),
        Some(d) => d,
    };
    let zeros = coeffs.iter().take_while(|c| **c == 0.0).count();
    let reduced = &coeffs[zeros..];
    let mut eigen: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); zeros];
    if reduced.len() > 1 {
        eigen.extend(reduced_roots(reduced)?);
    }

    let mut real_roots = Vec::new();
    let mut complex_count = 0;
    for group in cluster_roots(&coeffs, &eigen) {
        let mean = group.iter().map(|&i| eigen[i]).sum::<Complex64>() / group.len() as f64;
        let exact_zero = group.iter().all(|&i| i < zeros);
        if mean.im.abs() < IMAG_CUTOFF * (1.0 + mean.re.abs()) {
            let value = if exact_zero { 0.0 } else { mean.re };
            real_roots.push(RealRoot { value, multiplicity: group.len(), exact: None });
        } else {
            complex_count += group.len();
        }
    }
    real_roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(RootSet { real_roots, complex_count, method: RootMethod::Companion, degree })
}

/// Radius (relative) of the candidate clusters that are tested as multiple roots.
const CLUSTER_RADIUS: f64 = 1e-4;

/// Groups eigenvalue indices into roots.
///
/// Eigenvalues within [`MERGE_RADIUS`] are always merged. A wider single-linkage cluster
/// (radius [`CLUSTER_RADIUS`]) is merged as a whole when the polynomial's Taylor
/// coefficients of order `1..m` vanish at the cluster mean, which is how an `m`-fold root
/// shows up after rounding splits it by roughly `eps^(1/m)`.
fn cluster_roots(coeffs: &[f64], eigen: &[Complex64]) -> Vec<Vec<usize>> {
    let close = |i: usize, k: usize, radius: f64| {
        let scale = eigen[i].norm().max(eigen[k].norm()).max(1.0);
        (eigen[i] - eigen[k]).norm() < radius * scale
    };
    let mut out = Vec::new();
    for wide in linkage(eigen.len(), |i, k| close(i, k, CLUSTER_RADIUS)) {
        let mean = wide.iter().map(|&i| eigen[i]).sum::<Complex64>() / wide.len() as f64;
        if wide.len() > 1 && is_multiple_root(coeffs, mean, wide.len()) {
            out.push(wide);
            continue;
        }
        let members = wide.clone();
        for tight in linkage(members.len(), |a, b| close(members[a], members[b], MERGE_RADIUS)) {
            out.push(tight.into_iter().map(|a| members[a]).collect());
        }
    }
    out
}

/// Connected components of the relation `linked` on `0..n`, each sorted, in order of first member.
fn linkage(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if label[start].is_some() {
            continue;
        }
        let id = groups.len();
        let mut group = vec![start];
        label[start] = Some(id);
        let mut cursor = 0;
        while cursor < group.len() {
            let i = group[cursor];
            for (k, slot) in label.iter_mut().enumerate() {
                if slot.is_none() && linked(i, k) {
                    *slot = Some(id);
                    group.push(k);
                }
            }
            cursor += 1;
        }
        group.sort_unstable();
        groups.push(group);
    }
    groups
}

/// Whether `c` is (numerically) a root of multiplicity at least `m` of `Σ coeffs[i] x^i`.
fn is_multiple_root(coeffs: &[f64], c: Complex64, m: usize) -> bool {
    let n = coeffs.len();
    // Taylor coefficients at `c` by repeated synthetic division, and their natural magnitudes.
    let mut work: Vec<Complex64> = coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut scale: Vec<f64> = coeffs.iter().map(|v| v.abs()).collect();
    let r = c.norm();
    for k in 0..m {
        for i in (k..n - 1).rev() {
            let carry = work[i + 1];
            work[i] += carry * c;
            let carried = scale[i + 1];
            scale[i] += carried * r;
        }
        let t = work[k].norm();
        if t > 1e-6 * scale[k].max(f64::MIN_POSITIVE) {
            return false;
        }
    }
    true
}

/// Roots of a polynomial with nonzero constant term, via the balanced companion matrix.
fn reduced_roots(c: &[f64]) -> Result<Vec<Complex64>, NumError> {
    let m = c.len() - 1;
    let lead = c[m];
    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        if i > 0 {
            a[(i, i - 1)] = 1.0;
        }
        a[(i, m - 1)] = -c[i] / lead;
    }
    balance(&mut a)?;
    let eig = a.complex_eigenvalues();
    let mut out: Vec<Complex64> = eig.iter().copied().collect();
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(NumError::Numerical("companion eigenvalues did not converge"));
    }
    for z in out.iter_mut() {
        *z = polish(c, *z);
    }
    Ok(out)
}

/// Parlett-Reinsch diagonal similarity scaling with radix 2.
fn balance(a: &mut DMatrix<f64>) -> Result<(), NumError> {
    let n = a.nrows();
    for _sweep in 0..200 {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for k in 0..n {
                if k != i {
                    c += a[(k, i)].abs();
                    r += a[(i, k)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut cc, mut rr) = (c, r);
            while cc < rr / 2.0 {
                cc *= 2.0;
                rr /= 2.0;
                f *= 2.0;
            }
            while cc >= rr * 2.0 {
                cc /= 2.0;
                rr *= 2.0;
                f /= 2.0;
            }
            if cc + rr < 0.95 * s {
                converged = false;
                for k in 0..n {
                    a[(i, k)] /= f;
                    a[(k, i)] *= f;
                }
            }
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(NumError::Numerical("overflow while balancing companion matrix"));
        }
        if converged {
            return Ok(());
        }
    }
    Ok(())
}

/// A few guarded Newton steps on the original coefficients; a step is kept only if it lowers |p|.
fn polish(c: &[f64], mut z: Complex64) -> Complex64 {
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ck in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + ck;
        }
        (p, dp)
    };
    for _ in 0..3 {
        let (p, dp) = eval(z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        if eval(next).0.norm() < p.norm() {
            z = next;
        } else {
            break;
        }
    }
    z
}
