//! Membership queries for the archimedean amoeba of a hypersurface over Q.
//!
//! A point `v` of `R^n` belongs to the amoeba of `f = sum a_i x^{u_i}` when
//! some complex `x` with `-log|x_k| = v_k` solves `f(x) = 0`. The moduli of
//! the terms there are `r_i = |a_i| e^{-<u_i, v>}`.

pub mod expsum;

use std::cmp::Ordering;
use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polyhedral::lattice;
use crate::polyhedral::linalg::{self, qint, to_q, QVec};
use crate::scalars::{self, Field, Place, Rational};
use expsum::sign_of_exp_sum;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_TRIALS: usize = 200;

fn require_rationals(f: &LaurentPoly) -> Result<()> {
    if f.field() != Field::Rationals {
        return Err(Error::PlaceFieldMismatch {
            place: Place::Archimedean.to_string(),
            field: f.field().to_string(),
        });
    }
    Ok(())
}

fn check_point(f: &LaurentPoly, v: &[Rational]) -> Result<()> {
    if v.len() != f.rank() {
        return Err(Error::DimensionMismatch { expected: f.rank(), found: v.len() });
    }
    Ok(())
}

/// `(|a_i|, -<u_i, v>)`, so that `r_i = |a_i| e^{x_i}`.
fn moduli_data(f: &LaurentPoly, v: &[Rational]) -> Vec<(Rational, Rational)> {
    f.terms()
        .iter()
        .map(|t| {
            let a = t.coeff.as_rational().expect("coefficients over Q").abs();
            let x = -t
                .exponent
                .iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (&k, y)| if k == 0 { acc } else { acc + y * qint(k) });
            (a, x)
        })
        .collect()
}

/// Sign of `r_k - sum_{j != k} r_j`, or `None` at the precision cap.
fn dominance_sign(data: &[(Rational, Rational)], k: usize) -> Option<Ordering> {
    let terms: Vec<(Rational, Rational)> = data
        .iter()
        .enumerate()
        .map(|(j, (a, x))| (if j == k { a.clone() } else { -a.clone() }, x.clone()))
        .collect();
    sign_of_exp_sum(&terms)
}

/// Natural logarithms of the moduli `r_i`.
pub fn log_moduli(f: &LaurentPoly, v: &[Rational]) -> Vec<f64> {
    f.terms()
        .iter()
        .map(|t| {
            let a = t.coeff.as_rational().expect("coefficients over Q");
            let ln_a = scalars::integer::ln_abs(a.numer()) - scalars::integer::ln_abs(a.denom());
            let dot: f64 = t.exponent.iter().zip(v).map(|(&k, y)| k as f64 * scalars::to_f64(y)).sum();
            ln_a - dot
        })
        .collect()
}

/// Index of a term whose modulus exceeds the sum of all others at `v`;
/// such a term certifies `v` is outside the amoeba.
pub fn lopsided_index(f: &LaurentPoly, v: &[Rational]) -> Result<Option<usize>> {
    require_rationals(f)?;
    check_point(f, v)?;
    if f.is_monomial() {
        return Ok(Some(0));
    }
    let data = moduli_data(f, v);
    // only the largest modulus can dominate; try candidates by float size
    let logs = log_moduli(f, v);
    let mut order: Vec<usize> = (0..logs.len()).collect();
    order.sort_by(|&a, &b| logs[b].total_cmp(&logs[a]));
    for &k in order.iter().take(2) {
        if dominance_sign(&data, k) == Some(Ordering::Greater) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// True when some term is lopsided at `v`; false is inconclusive.
pub fn lopsided_outside(f: &LaurentPoly, v: &[Rational]) -> Result<bool> {
    Ok(lopsided_index(f, v)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "snake_case")]
pub enum TriangleVerdict {
    /// Every modulus is at most the sum of the other two.
    Inside,
    /// The term `dominant` exceeds the sum of the other two.
    Outside { dominant: usize },
    NotApplicable { reason: String },
}

/// Whether the exponent differences of a trinomial extend to a lattice
/// basis, making the triangle inequality on moduli an exact membership
/// test.
pub fn triangle_applicable(f: &LaurentPoly) -> bool {
    if f.len() != 3 {
        return false;
    }
    let u = f.exponents();
    let rows: Vec<Vec<BigInt>> = [0, 1]
        .iter()
        .map(|&i| u[i].iter().zip(&u[2]).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    let n = f.rank();
    let qrows: Vec<QVec> = rows.iter().map(|r| to_q(r)).collect();
    linalg::rank(&qrows, n) == 2 && lattice::smith_invariants(&rows, n).iter().all(One::is_one)
}

/// Exact archimedean membership for trinomials with unimodular exponent
/// differences: inside iff the closed triangle inequality holds on the
/// moduli.
pub fn triangle_exact_membership(f: &LaurentPoly, v: &[Rational]) -> Result<TriangleVerdict> {
    require_rationals(f)?;
    if f.len() != 3 {
        return Err(Error::TermCountMismatch { expected: 3, found: f.len() });
    }
    check_point(f, v)?;
    if !triangle_applicable(f) {
        return Ok(TriangleVerdict::NotApplicable {
            reason: "exponent differences do not extend to a lattice basis".into(),
        });
    }
    Ok(triangle_verdict(f, v))
}

/// Whether the exponent differences of a trinomial have rank 2. The
/// phases of the three terms then range over all of `T^2` on each fiber of
/// the moduli map, so the triangle inequality decides membership exactly.
pub fn triangle_decides(f: &LaurentPoly) -> bool {
    if f.len() != 3 {
        return false;
    }
    let u = f.exponents();
    let rows: Vec<QVec> = [0, 1].iter().map(|&i| u[i].iter().zip(&u[2]).map(|(a, b)| qint(a - b)).collect()).collect();
    linalg::rank(&rows, f.rank()) == 2
}

/// The triangle test for every trinomial with `triangle_decides`.
pub fn triangle_membership(f: &LaurentPoly, v: &[Rational]) -> Result<TriangleVerdict> {
    require_rationals(f)?;
    if f.len() != 3 {
        return Err(Error::TermCountMismatch { expected: 3, found: f.len() });
    }
    check_point(f, v)?;
    if !triangle_decides(f) {
        return Ok(TriangleVerdict::NotApplicable { reason: "exponent differences are dependent".into() });
    }
    Ok(triangle_verdict(f, v))
}

fn triangle_verdict(f: &LaurentPoly, v: &[Rational]) -> TriangleVerdict {
    let data = moduli_data(f, v);
    for k in 0..3 {
        match dominance_sign(&data, k) {
            Some(Ordering::Greater) => return TriangleVerdict::Outside { dominant: k },
            Some(_) => {}
            None => {
                return TriangleVerdict::NotApplicable { reason: "comparison undecided at the precision cap".into() }
            }
        }
    }
    TriangleVerdict::Inside
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleOptions {
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { trials: DEFAULT_TRIALS, tol: DEFAULT_TOL, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "snake_case")]
pub enum Sampled {
    /// A numerical zero of `f` with the prescribed moduli.
    Inside { witness: Vec<(f64, f64)>, residual: f64, trial: usize },
    Unknown { trials: usize },
}

impl Sampled {
    pub fn is_inside(&self) -> bool {
        matches!(self, Sampled::Inside { .. })
    }
}

type C64 = Complex<f64>;

/// Term data normalized so the largest modulus is 1: `c_i = a_i r_i / |a_i| / max r`.
struct PhaseProblem {
    coeffs: Vec<C64>,
    exps: Vec<Vec<i64>>,
    n: usize,
}

impl PhaseProblem {
    fn new(f: &LaurentPoly, v: &[Rational]) -> Self {
        let logs = log_moduli(f, v);
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let coeffs = f
            .terms()
            .iter()
            .zip(&logs)
            .map(|(t, l)| {
                let sign = if t.coeff.as_rational().unwrap().is_negative() { -1.0 } else { 1.0 };
                C64::new(sign * (l - top).exp(), 0.0)
            })
            .collect();
        PhaseProblem { coeffs, exps: f.exponents(), n: f.rank() }
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    fn term(&self, i: usize, theta: &[f64]) -> C64 {
        let phase: f64 = self.exps[i].iter().zip(theta).map(|(&k, t)| k as f64 * t).sum();
        self.coeffs[i] * C64::from_polar(1.0, phase)
    }

    fn value(&self, theta: &[f64]) -> C64 {
        (0..self.coeffs.len()).map(|i| self.term(i, theta)).sum()
    }

    fn jacobian(&self, theta: &[f64]) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(2, self.n);
        for i in 0..self.coeffs.len() {
            let t = self.term(i, theta) * C64::new(0.0, 1.0);
            for k in 0..self.n {
                let u = self.exps[i][k] as f64;
                j[(0, k)] += u * t.re;
                j[(1, k)] += u * t.im;
            }
        }
        j
    }

    /// Gauss-Newton on the phases with minimum-norm steps.
    fn refine(&self, mut theta: Vec<f64>, tol: f64) -> (Vec<f64>, f64) {
        let scale = self.scale();
        let mut best = (theta.clone(), self.value(&theta).norm() / scale);
        for _ in 0..80 {
            let fval = self.value(&theta);
            let res = fval.norm() / scale;
            if res < best.1 {
                best = (theta.clone(), res);
            }
            if res < tol * 1e-3 {
                break;
            }
            let jac = self.jacobian(&theta);
            let Ok(pinv) = jac.pseudo_inverse(1e-13) else { break };
            let step = pinv * DVector::from_vec(vec![fval.re, fval.im]);
            if step.norm() < 1e-16 {
                break;
            }
            for (t, s) in theta.iter_mut().zip(step.iter()) {
                *t -= s;
            }
        }
        let res = self.value(&theta).norm() / scale;
        if res < best.1 {
            best = (theta, res);
        }
        best
    }
}

/// Roots of `sum_e b_e y^e` (coefficients low to high), via the complex
/// Schur form of the companion matrix.
fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let mut m = DMatrix::<C64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -c[i] / lead;
    }
    // the unbounded Schur iteration can cycle on sparse companion matrices
    let eig: Vec<C64> = match m.try_schur(1e-14, 2000).and_then(|s| s.eigenvalues()) {
        Some(e) => e.iter().cloned().collect(),
        None => durand_kerner(&c),
    };
    // polish with Newton steps on the original polynomial
    let eval = |y: C64| -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for a in c.iter().rev() {
            dp = dp * y + p;
            p = p * y + a;
        }
        (p, dp)
    };
    eig.into_iter()
        .map(|mut y: C64| {
            for _ in 0..3 {
                let (p, dp) = eval(y);
                if dp.norm() == 0.0 {
                    break;
                }
                y -= p / dp;
            }
            y
        })
        .collect()
}

/// Simultaneous root iteration; only a fallback for `poly_roots`.
fn durand_kerner(c: &[C64]) -> Vec<C64> {
    let deg = c.len() - 1;
    let lead = c[deg];
    let monic: Vec<C64> = c.iter().map(|a| a / lead).collect();
    let radius = 1.0 + monic[..deg].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> =
        (0..deg).map(|k| C64::from_polar(radius, 0.4 + TAU * k as f64 / deg as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let p = monic.iter().rev().fold(C64::new(0.0, 0.0), |acc, a| acc * z[i] + a);
            let denom = (0..deg).filter(|&j| j != i).fold(C64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                continue;
            }
            let step = p / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

/// Solved coordinate: largest exponent span, smallest index on ties.
fn solved_coordinate(exps: &[Vec<i64>], n: usize) -> usize {
    let span = |k: usize| {
        let (lo, hi) = exps.iter().fold((i64::MAX, i64::MIN), |(lo, hi), u| (lo.min(u[k]), hi.max(u[k])));
        hi - lo
    };
    (0..n).fold(0, |best, k| if span(k) > span(best) { k } else { best })
}

/// Searches for a zero of `f` on the torus `{-log|x| = v}`: random phases
/// for all coordinates but one, an exact-degree univariate solve in the
/// remaining one, then Gauss-Newton refinement of all phases. A witness is
/// returned only if `|f(x)| < tol * sum r_i`.
pub fn sampled_inside(f: &LaurentPoly, v: &[Rational], opts: &SampleOptions) -> Result<Sampled> {
    require_rationals(f)?;
    check_point(f, v)?;
    if opts.trials == 0 || opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument("trials must be positive and tol > 0".into()));
    }
    if f.is_monomial() {
        return Ok(Sampled::Unknown { trials: 0 });
    }
    let prob = PhaseProblem::new(f, v);
    let n = prob.n;
    let j = solved_coordinate(&prob.exps, n);
    let min_e = prob.exps.iter().map(|u| u[j]).min().unwrap();
    let max_e = prob.exps.iter().map(|u| u[j]).max().unwrap();
    let deg = (max_e - min_e) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut degenerate = 0;
    for trial in 0..opts.trials {
        let mut theta: Vec<f64> = if trial == 0 {
            vec![0.0; n]
        } else {
            (0..n).map(|_| rng.gen_range(0.0..TAU)).collect()
        };
        theta[j] = 0.0;
        // slice polynomial in y = e^{i theta_j}, already scaled by the moduli
        let mut slice = vec![C64::new(0.0, 0.0); deg + 1];
        for i in 0..prob.coeffs.len() {
            slice[(prob.exps[i][j] - min_e) as usize] += prob.term(i, &theta);
        }
        let roots = poly_roots(&slice);
        if roots.is_empty() {
            degenerate += 1;
            continue;
        }
        // the modulus of y must be 1 in the scaled coordinates
        let Some(best) = roots.iter().min_by(|a, b| (a.norm().ln().abs()).total_cmp(&b.norm().ln().abs()))
        else {
            continue;
        };
        theta[j] = best.arg();
        let (theta, residual) = prob.refine(theta, opts.tol);
        if residual < opts.tol {
            let witness = theta
                .iter()
                .zip(v)
                .map(|(t, vk)| {
                    let z = C64::from_polar((-scalars::to_f64(vk)).exp(), *t);
                    (z.re, z.im)
                })
                .collect();
            return Ok(Sampled::Inside { witness, residual, trial });
        }
    }
    if degenerate == opts.trials {
        return Err(Error::DegenerateSlice);
    }
    Ok(Sampled::Unknown { trials: opts.trials })
}

/// Combined verdict at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "certificate", rename_all = "snake_case")]
pub enum PointVerdict {
    /// Certified outside: by the exact trinomial test or by a lopsided term.
    Outside { method: String, term: usize },
    /// Certified inside by the exact trinomial test.
    Inside { method: String },
    /// A numerical witness was found.
    NumericInside { witness: Vec<(f64, f64)>, residual: f64 },
    Unknown,
}

impl PointVerdict {
    pub fn is_outside(&self) -> bool {
        matches!(self, PointVerdict::Outside { .. })
    }

    pub fn is_inside(&self) -> bool {
        matches!(self, PointVerdict::Inside { .. } | PointVerdict::NumericInside { .. })
    }
}

/// Runs the exact trinomial test when applicable, then lopsidedness, then
/// sampling.
pub fn membership(f: &LaurentPoly, v: &[Rational], opts: &SampleOptions) -> Result<PointVerdict> {
    require_rationals(f)?;
    check_point(f, v)?;
    if triangle_decides(f) {
        match triangle_membership(f, v)? {
            TriangleVerdict::Inside => return Ok(PointVerdict::Inside { method: "triangle".into() }),
            TriangleVerdict::Outside { dominant } => {
                return Ok(PointVerdict::Outside { method: "triangle".into(), term: dominant })
            }
            TriangleVerdict::NotApplicable { .. } => {}
        }
    }
    if let Some(k) = lopsided_index(f, v)? {
        return Ok(PointVerdict::Outside { method: "lopsided".into(), term: k });
    }
    match sampled_inside(f, v, opts) {
        Ok(Sampled::Inside { witness, residual, .. }) => Ok(PointVerdict::NumericInside { witness, residual }),
        Ok(Sampled::Unknown { .. }) | Err(Error::DegenerateSlice) => Ok(PointVerdict::Unknown),
        Err(e) => Err(e),
    }
}

/// For `dir` with `<u_i, dir> < <u_j, dir>` for all `j != i`, a bound `c*`
/// such that term `i` is lopsided at `c * dir` for every `c > c*`.
pub fn escape_bound(f: &LaurentPoly, dir: &[Rational]) -> Result<Option<(usize, f64)>> {
    require_rationals(f)?;
    check_point(f, dir)?;
    let exps = f.exponents();
    let vals: Vec<Rational> = exps.iter().map(|u| linalg::dot(&u.iter().map(|&k| qint(k)).collect::<Vec<_>>(), dir)).collect();
    let min = vals.iter().min().unwrap();
    let winners: Vec<usize> = (0..vals.len()).filter(|&k| &vals[k] == min).collect();
    let [i] = winners.as_slice() else {
        return Ok(None);
    };
    let i = *i;
    let s = f.len() as f64;
    let a = |k: usize| scalars::abs_f64(&f.terms()[k].coeff.as_rational().unwrap());
    let mut bound = 0.0f64;
    for j in 0..f.len() {
        if j == i {
            continue;
        }
        let delta = scalars::to_f64(&(&vals[j] - &vals[i]));
        let need = ((s - 1.0) * a(j) / a(i)).ln() / delta;
        bound = bound.max(need);
    }
    Ok(Some((i, bound)))
}

/// When all exponents lie on one line, `(w, k)` with `w` primitive and
/// `u_i = u_0 + k_i w`.
fn collinear_exponents(exps: &[Vec<i64>]) -> Option<(Vec<i64>, Vec<i64>)> {
    let diffs: Vec<Vec<i64>> = exps.iter().map(|u| u.iter().zip(&exps[0]).map(|(a, b)| a - b).collect()).collect();
    let first = diffs.iter().find(|d| d.iter().any(|&x| x != 0))?;
    let g = first.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    let w: Vec<i64> = first.iter().map(|x| x / g).collect();
    let pivot = w.iter().position(|&x| x != 0)?;
    let mut ks = Vec::with_capacity(diffs.len());
    for d in &diffs {
        let k = d[pivot] / w[pivot];
        if d.iter().zip(&w).any(|(x, y)| *x != k * y) {
            return None;
        }
        ks.push(k);
    }
    Some((w, ks))
}

/// Parameters `t > 0` where the ray `t * dir` is likeliest to meet the
/// amoeba: where two term moduli are equal, and, when every exponent lies
/// on one line `u_0 + k w`, where `|x^w|` equals the modulus of a root of
/// the univariate polynomial in `x^w`. Sorted and deduplicated.
pub fn ray_candidates(f: &LaurentPoly, dir: &[Rational]) -> Result<Vec<f64>> {
    require_rationals(f)?;
    check_point(f, dir)?;
    let exps = f.exponents();
    let d: Vec<f64> = dir.iter().map(scalars::to_f64).collect();
    let dot = |u: &[i64]| u.iter().zip(&d).map(|(&k, x)| k as f64 * x).sum::<f64>();
    let ln_a: Vec<f64> = f
        .terms()
        .iter()
        .map(|t| scalars::abs_f64(&t.coeff.as_rational().expect("coefficients over Q")).ln())
        .collect();
    let mut out = Vec::new();
    // ln r_i(t) = ln|a_i| - t <u_i, dir>
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            let slope = dot(&exps[i]) - dot(&exps[j]);
            if slope != 0.0 {
                out.push((ln_a[i] - ln_a[j]) / slope);
            }
        }
    }
    if let Some((w, ks)) = collinear_exponents(&exps) {
        let a = dot(&w);
        let kmin = *ks.iter().min().expect("nonempty");
        let deg = (ks.iter().max().expect("nonempty") - kmin) as usize;
        if a != 0.0 && deg > 0 {
            let mut coeffs = vec![C64::new(0.0, 0.0); deg + 1];
            for (t, k) in f.terms().iter().zip(&ks) {
                coeffs[(k - kmin) as usize] += C64::new(scalars::to_f64(&t.coeff.as_rational().unwrap()), 0.0);
            }
            // |x^w| = e^{-t a}
            out.extend(poly_roots(&coeffs).into_iter().filter(|r| r.norm() > 0.0).map(|r| -r.norm().ln() / a));
        }
    }
    out.retain(|t| t.is_finite() && *t > 0.0);
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    Ok(out)
}

/// A dyadic rational within `2^-40` of `t`.
pub fn dyadic_near(t: f64) -> Rational {
    let scale = (1u64 << 40) as f64;
    let n = num_bigint::BigInt::from((t * scale).round() as i128);
    Rational::new(n, num_bigint::BigInt::from(1u64 << 40))
}

/// Evaluates `f` at a complex point.
pub fn evaluate(f: &LaurentPoly, x: &[(f64, f64)]) -> (f64, f64) {
    let mut acc = C64::new(0.0, 0.0);
    for t in f.terms() {
        let a = scalars::to_f64(&t.coeff.as_rational().expect("coefficients over Q"));
        let mut m = C64::new(a, 0.0);
        for (&k, &(re, im)) in t.exponent.iter().zip(x) {
            m *= C64::new(re, im).powi(k as i32);
        }
        acc += m;
    }
    (acc.re, acc.im)
}

/// A rational strictly above the float `x` (for integer-friendly scans).
pub fn rational_above(x: f64) -> Rational {
    let k = if x.is_finite() { x.max(0.0).floor() as i64 + 1 } else { 1 };
    qint(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::linalg::ints_to_q;

    fn q(text: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(text, n, Field::Rationals).unwrap()
    }

    #[test]
    fn triangle_boundary_and_outside() {
        let f = q("x1 + x2 - 2", 2);
        assert_eq!(triangle_exact_membership(&f, &ints_to_q(&[0, 0])).unwrap(), TriangleVerdict::Inside);
        let g = q("x1 - x2 - 2", 2);
        assert!(matches!(
            triangle_exact_membership(&g, &ints_to_q(&[1, 1])).unwrap(),
            TriangleVerdict::Outside { dominant: 0 }
        ));
        assert!(matches!(
            triangle_exact_membership(&q("x1^2 + x1 + 1", 1), &ints_to_q(&[0])).unwrap(),
            TriangleVerdict::NotApplicable { .. }
        ));
        assert!(matches!(
            triangle_exact_membership(&q("x1 + 1", 1), &ints_to_q(&[0])),
            Err(Error::TermCountMismatch { .. })
        ));
    }

    #[test]
    fn sparse_slices_have_roots() {
        let c = [C64::new(0.004, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        for roots in [poly_roots(&c), durand_kerner(&c)] {
            assert_eq!(roots.len(), 4);
            for y in roots {
                assert!((y.norm() - 0.004f64.powf(0.25)).abs() < 1e-9);
            }
        }
        let f = q("4*x1^-2*x2^-1 + 9*x1^2", 2);
        let v = [Rational::new((-5).into(), 3.into()), qint(2)];
        assert!(!sampled_inside(&f, &v, &SampleOptions::default()).unwrap().is_inside());
    }

    #[test]
    fn rank_two_trinomials_are_decided() {
        let f = q("x1^2 + x2^2 - 3", 2);
        assert!(!triangle_applicable(&f));
        assert!(triangle_decides(&f));
        // moduli (1, 1, 3) at the origin and (e, e, 3) at (-1/2, -1/2)
        assert!(matches!(triangle_membership(&f, &ints_to_q(&[0, 0])).unwrap(), TriangleVerdict::Outside { .. }));
        let v = [Rational::new((-1).into(), 2.into()), Rational::new((-1).into(), 2.into())];
        assert_eq!(triangle_membership(&f, &v).unwrap(), TriangleVerdict::Inside);
        assert!(!triangle_decides(&q("x1^2*x2^2 + 3*x1*x2 + 2", 2)));
    }

    #[test]
    fn ray_candidates_find_thin_crossings() {
        // roots -1 and -2 of y^2 + 3y + 2 in y = x1 x2; along (-1, 0), |y| = e^t
        let f = q("x1^2*x2^2 + 3*x1*x2 + 2", 2);
        let ts = ray_candidates(&f, &ints_to_q(&[-1, 0])).unwrap();
        assert!(ts.iter().any(|t| (t - 2f64.ln()).abs() < 1e-9), "{ts:?}");
        let v: QVec = ints_to_q(&[-1, 0]).iter().map(|x| x * dyadic_near(2f64.ln())).collect();
        assert!(membership(&f, &v, &SampleOptions::default()).unwrap().is_inside());
        // a band of width ~3e-4 around the balance of the first two terms
        let g = q("x1^-2*x2 + 10*x2^2 + x1^2", 2);
        let d = ints_to_q(&[2, -1]);
        let hit = ray_candidates(&g, &d).unwrap().into_iter().any(|t| {
            let v: QVec = d.iter().map(|x| x * dyadic_near(t)).collect();
            triangle_membership(&g, &v).unwrap() == TriangleVerdict::Inside
        });
        assert!(hit);
    }

    #[test]
    fn lopsided_examples() {
        let f = q("x1 + x2 + 1", 2);
        assert!(lopsided_outside(&f, &ints_to_q(&[10, 10])).unwrap());
        assert!(!lopsided_outside(&f, &ints_to_q(&[0, 0])).unwrap());
        let g = q("x1*x2 - 2*x1 - 2*x2 + 1", 2);
        assert!(!lopsided_outside(&g, &ints_to_q(&[0, 0])).unwrap());
        assert!(lopsided_outside(&q("x1 + x2 - 2", 2), &ints_to_q(&[1, 1])).unwrap());
        let over_qz = LaurentPoly::parse("z*x1 + 1", 1, Field::FunctionField).unwrap();
        assert!(matches!(lopsided_outside(&over_qz, &ints_to_q(&[0])), Err(Error::PlaceFieldMismatch { .. })));
    }

    #[test]
    fn sampling_finds_witnesses() {
        let opts = SampleOptions::default();
        let f = q("x1 + x2 - 2", 2);
        match sampled_inside(&f, &ints_to_q(&[0, 0]), &opts).unwrap() {
            Sampled::Inside { witness, residual, .. } => {
                assert!(residual < 1e-9);
                assert!((witness[0].0 - 1.0).abs() < 1e-9 && witness[0].1.abs() < 1e-9);
                assert!((witness[1].0 - 1.0).abs() < 1e-9 && witness[1].1.abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
        let few = SampleOptions { trials: 20, ..opts };
        assert_eq!(sampled_inside(&f, &ints_to_q(&[1, 1]), &few).unwrap(), Sampled::Unknown { trials: 20 });
        let g = q("x1 - 1", 1);
        assert!(sampled_inside(&g, &ints_to_q(&[0]), &opts).unwrap().is_inside());
        // an interior point of the line amoeba needs genuine phases
        let h = q("x1 + x2 + 1", 2);
        let v = vec![Rational::new(1.into(), 5.into()), Rational::new((-1).into(), 7.into())];
        match sampled_inside(&h, &v, &opts).unwrap() {
            Sampled::Inside { witness, .. } => {
                let (re, im) = evaluate(&h, &witness);
                assert!(re.hypot(im) < 1e-8);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn escape_bounds() {
        let f = q("3*x1 + 5*x2 + 1", 2);
        // constant term wins along (1, 1)
        let (i, c) = escape_bound(&f, &ints_to_q(&[1, 1])).unwrap().unwrap();
        assert_eq!(i, 0);
        for k in 1..5 {
            let t = rational_above(c) * qint(k);
            let v = vec![t.clone(), t];
            assert_eq!(lopsided_index(&f, &v).unwrap(), Some(0));
        }
        assert_eq!(escape_bound(&f, &ints_to_q(&[0, 1])).unwrap(), None);
    }
}
