//! Disjointness of rational open halfspaces from adelic amoebas, and the
//! structural tests that explain it: constant coefficients over the
//! function field, torsion cosets over the rationals, and codimension of
//! the projected image.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::archimedean::{self, PointVerdict, SampleOptions, TriangleVerdict};
use crate::error::{Error, Result};
use crate::laurent::{vertex_direction, LaurentPoly};
use crate::polyhedral::lattice::{self, IntRows};
use crate::polyhedral::linalg::{self, ints_to_q, qint, zeros, QVec};
use crate::polyhedral::lp::{self, LinearSystem, LpOutcome, Sense};
use crate::polyhedral::PolyhedralComplex;
use crate::scalars::{Field, Place, Rational, Scalar};
use crate::tropical::{psi_with, tropical_data, AdelicAmoeba, ConstraintSystem};

/// The open halfspace `span(boundary) + R_{>0} direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    pub boundary: Vec<Vec<i64>>,
    pub direction: Vec<i64>,
}

impl Halfspace {
    pub fn new(boundary: Vec<Vec<i64>>, direction: Vec<i64>) -> Result<Self> {
        let n = direction.len();
        if let Some(g) = boundary.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
        let rows: Vec<QVec> = boundary.iter().map(|g| ints_to_q(g)).collect();
        let mut with_dir = rows.clone();
        with_dir.push(ints_to_q(&direction));
        if linalg::rank(&with_dir, n) == linalg::rank(&rows, n) {
            return Err(Error::DependentDirection);
        }
        Ok(Halfspace { boundary, direction })
    }

    /// The open half line `R_{>0} direction`.
    pub fn half_line(direction: Vec<i64>) -> Result<Self> {
        Self::new(Vec::new(), direction)
    }

    pub fn rank(&self) -> usize {
        self.direction.len()
    }

    /// Dimension of the boundary subspace.
    pub fn boundary_dim(&self) -> usize {
        let rows: Vec<QVec> = self.boundary.iter().map(|g| ints_to_q(g)).collect();
        linalg::rank(&rows, self.rank())
    }

    /// `t * direction + sum_a lambda_a g_a`.
    pub fn point(&self, t: &Rational, lambda: &[Rational]) -> QVec {
        let mut x = linalg::scale(&ints_to_q(&self.direction), t);
        for (g, l) in self.boundary.iter().zip(lambda) {
            x = linalg::add(&x, &linalg::scale(&ints_to_q(g), l));
        }
        x
    }

    /// Whether `x` lies in the open halfspace.
    pub fn contains(&self, x: &[Rational]) -> bool {
        let n = self.rank();
        if x.len() != n {
            return false;
        }
        let d = self.boundary.len();
        // x = sum lambda_a g_a + t v; t is unique because v is independent
        let mut sys = LinearSystem::new(d + 1);
        for (k, xk) in x.iter().enumerate() {
            let mut row: QVec = self.boundary.iter().map(|g| qint(g[k])).collect();
            row.push(qint(self.direction[k]));
            sys.eq(row, xk.clone());
        }
        lp::feasible_point(&sys).is_some_and(|p| p[d].is_positive())
    }
}

/// A surjection `phi: Z^n -> Z^{n - dim dH}` whose kernel is the saturated
/// lattice of the boundary, with an integer right inverse as certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMap {
    #[serde(serialize_with = "crate::json::int_rows")]
    pub phi: IntRows,
    #[serde(serialize_with = "crate::json::int_rows")]
    pub right_inverse: IntRows,
}

impl QuotientMap {
    pub fn apply(&self, v: &[Rational]) -> QVec {
        self.phi.iter().map(|r| linalg::int_dot(r, v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.phi.len();
        self.phi.iter().enumerate().all(|(i, r)| {
            r.len() == n && r.iter().enumerate().all(|(j, x)| *x == num_bigint::BigInt::from((i == j) as i64))
        })
    }

    /// Integer entries of `phi`, when they fit.
    pub fn phi_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.phi.iter().map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect()).collect()
    }
}

pub fn quotient_map(h: &Halfspace) -> Result<QuotientMap> {
    let n = h.rank();
    let h = Halfspace::new(h.boundary.clone(), h.direction.clone())?;
    let gens = lattice::from_i64(&h.boundary);
    let kernel = lattice::integer_kernel(&gens, n);
    let phi = lattice::hermite_normal_form(&kernel, n);
    let right_inverse = lattice::right_inverse(&phi, n)
        .ok_or_else(|| Error::Internal("quotient map has no integer right inverse".into()))?;
    Ok(QuotientMap { phi, right_inverse })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HalflineVerdict {
    Disjoint,
    /// `t * v` lies on the tropical hypersurface.
    Meets {
        #[serde(serialize_with = "crate::json::rational")]
        t: Rational,
        #[serde(serialize_with = "crate::json::rationals")]
        witness: QVec,
    },
    /// `v` does not single out one term; use the LP path.
    NotRelint,
}

/// Decides whether the open half line through `v` misses the tropical
/// hypersurface of `f` at a nonarchimedean place, assuming one term
/// `i` uniquely minimizes `<u_i, v>`. Then the half line is disjoint iff
/// `c_i <= c_j` for all `j`; otherwise the last crossing is returned.
pub fn halfline_disjoint_fast(f: &LaurentPoly, place: &Place, v: &[Rational]) -> Result<HalflineVerdict> {
    f.require_hypersurface()?;
    if v.len() != f.rank() {
        return Err(Error::DimensionMismatch { expected: f.rank(), found: v.len() });
    }
    let exps = f.exponents();
    let (_, argmin) = psi_with(&exps, &vec![Rational::zero(); exps.len()], v);
    let [i] = argmin.as_slice() else {
        return Ok(HalflineVerdict::NotRelint);
    };
    let i = *i;
    let c = tropical_data(f, place)?;
    let slope = |k: usize| linalg::dot(&ints_to_q(&exps[k]), v);
    let mut last: Option<Rational> = None;
    for j in 0..exps.len() {
        if c[j] < c[i] {
            // <u_i, t v> + c_i = <u_j, t v> + c_j
            let t = (&c[i] - &c[j]) / (slope(j) - slope(i));
            if last.as_ref().is_none_or(|l| t > *l) {
                last = Some(t);
            }
        }
    }
    Ok(match last {
        None => HalflineVerdict::Disjoint,
        Some(t) => HalflineVerdict::Meets { witness: linalg::scale(v, &t), t },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HalfspaceVerdict {
    Disjoint,
    Meets {
        cell: usize,
        #[serde(serialize_with = "crate::json::rationals")]
        witness: QVec,
    },
}

impl HalfspaceVerdict {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, HalfspaceVerdict::Disjoint)
    }
}

/// Exact test of `H ∩ C`: per cell, maximize `t >= 0` over
/// `x = sum lambda_a g_a + t v` with `x` in the cell; the open halfspace
/// meets the cell iff the optimum is positive or unbounded.
pub fn halfspace_meets_complex(h: &Halfspace, c: &PolyhedralComplex) -> Result<HalfspaceVerdict> {
    let n = h.rank();
    if c.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, found: c.rank() });
    }
    let d = h.boundary.len();
    // columns of x in terms of (lambda, t)
    let basis: Vec<QVec> = h.boundary.iter().chain(std::iter::once(&h.direction)).map(|g| ints_to_q(g)).collect();
    let pull = |normal: &[num_bigint::BigInt]| -> QVec { basis.iter().map(|g| linalg::int_dot(normal, g)).collect() };
    let mut objective = zeros(d + 1);
    objective[d] = Rational::one();
    for (k, cell) in c.cells().iter().enumerate() {
        let p = &cell.polyhedron;
        let mut sys = LinearSystem::new(d + 1);
        for e in p.equalities() {
            sys.eq(pull(&e.normal), e.rhs.clone());
        }
        for e in p.inequalities() {
            sys.le(pull(&e.normal), e.rhs.clone());
        }
        let mut neg_t = zeros(d + 1);
        neg_t[d] = -Rational::one();
        sys.le(neg_t, Rational::zero());
        let found = match lp::solve(&objective, &sys, Sense::Maximize) {
            LpOutcome::Optimal { value, point } if value.is_positive() => Some(point),
            // t grows along the ray
            LpOutcome::Unbounded { point, ray } => Some(linalg::add(&point, &ray)),
            _ => None,
        };
        if let Some(point) = found {
            let witness = h.point(&point[d], &point[..d]);
            debug_assert!(p.contains(&witness) && point[d].is_positive());
            return Ok(HalfspaceVerdict::Meets { cell: k, witness });
        }
    }
    Ok(HalfspaceVerdict::Disjoint)
}

/// Grid and sampling parameters for the archimedean scan along `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanOptions {
    /// Values of `t` in `t v + sum lambda_a g_a`.
    pub steps: Vec<Rational>,
    /// Values of each `lambda_a`.
    pub offsets: Vec<Rational>,
    /// Extra points `t v` spread over `(0, c*]` for half lines, where `c*`
    /// is the escape bound.
    pub ray_samples: usize,
    pub sample: SampleOptions,
}

impl Default for ScanOptions {
    fn default() -> Self {
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        ScanOptions {
            steps: vec![q(1, 4), q(1, 2), q(1, 1), q(2, 1), q(4, 1)],
            offsets: vec![q(-3, 2), q(-1, 2), q(1, 2), q(3, 2)],
            ray_samples: 16,
            sample: SampleOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ScanVerdict {
    /// Constraint `constraint` (pulled back to the ambient torus) certifies
    /// the point is outside.
    CertifiedOutside { constraint: usize, method: String, term: usize },
    /// Only for hypersurfaces: the point is in the amoeba, exactly
    /// (`certified`) or by a numerical witness.
    Meets { certified: bool },
    EvidenceOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    #[serde(serialize_with = "crate::json::rationals")]
    pub point: QVec,
    #[serde(flatten)]
    pub verdict: ScanVerdict,
}

/// Exact comparison of a binomial constraint's amoeba, the hyperplane
/// `<u - w, v> = ln|b / a|`, with `H`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinomialCheck {
    pub constraint: usize,
    pub normal: Vec<i64>,
    pub meets: bool,
    /// A point of `H` on the hyperplane, in floating point.
    pub witness: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArchimedeanStatus {
    /// An exact argument covers all of `H`.
    Certified,
    /// Every scanned point was certified outside.
    SamplesCertified,
    /// Some scanned point was undecided.
    EvidenceOnly,
    Meets,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArchimedeanReport {
    pub status: ArchimedeanStatus,
    pub binomials: Vec<BinomialCheck>,
    /// For half lines in the relative interior of a vertex cone: term
    /// `.0` is lopsided at `t v` for every `t > .1`.
    pub escape: Option<(usize, f64)>,
    pub points: Vec<ScanPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentReport {
    pub place: Place,
    #[serde(flatten)]
    pub verdict: HalfspaceVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Disjoint,
    Meets,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdelicReport {
    pub verdict: Verdict,
    pub nonarchimedean: Vec<ComponentReport>,
    pub archimedean: Option<ArchimedeanReport>,
    /// Set when the verdict rests on archimedean evidence short of proof.
    pub caveat: Option<String>,
}

impl AdelicReport {
    pub fn is_disjoint(&self) -> bool {
        self.verdict == Verdict::Disjoint
    }

    pub fn nonarchimedean_disjoint(&self) -> bool {
        self.nonarchimedean.iter().all(|c| c.verdict.is_disjoint())
    }
}

/// Checks `H` against the generic and every special complex, and over Q
/// scans the archimedean amoeba along `H`.
pub fn adelic_disjoint(amoeba: &AdelicAmoeba, h: &Halfspace, opts: &ScanOptions) -> Result<AdelicReport> {
    if amoeba.rank() != h.rank() {
        return Err(Error::DimensionMismatch { expected: amoeba.rank(), found: h.rank() });
    }
    let nonarchimedean = amoeba
        .components()
        .into_iter()
        .map(|(place, c)| Ok(ComponentReport { place, verdict: halfspace_meets_complex(h, c)? }))
        .collect::<Result<Vec<_>>>()?;
    let archimedean = match amoeba.field() {
        Field::Rationals => Some(archimedean_scan(&amoeba.system, h, opts)?),
        Field::FunctionField => None,
    };
    let nonarch_ok = nonarchimedean.iter().all(|c| c.verdict.is_disjoint());
    let arch_status = archimedean.as_ref().map(|a| a.status);
    let verdict = if nonarch_ok && arch_status != Some(ArchimedeanStatus::Meets) {
        Verdict::Disjoint
    } else {
        Verdict::Meets
    };
    let caveat = (verdict == Verdict::Disjoint && arch_status == Some(ArchimedeanStatus::EvidenceOnly))
        .then(|| "archimedean disjointness rests on sampled evidence at some points".to_string());
    Ok(AdelicReport { verdict, nonarchimedean, archimedean, caveat })
}

fn grid_points(h: &Halfspace, opts: &ScanOptions) -> Vec<QVec> {
    let d = h.boundary.len();
    let mut combos: Vec<Vec<Rational>> = vec![Vec::new()];
    for _ in 0..d {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                opts.offsets.iter().map(move |o| {
                    let mut c = c.clone();
                    c.push(o.clone());
                    c
                })
            })
            .collect();
    }
    opts.steps.iter().flat_map(|t| combos.iter().map(move |l| h.point(t, l))).collect()
}

/// `t` rounded down to a multiple of 1/64, if positive.
fn dyadic_below(t: f64) -> Option<Rational> {
    let k = (t * 64.0).floor();
    (k >= 1.0 && k.is_finite()).then(|| Rational::new((k as i64).into(), 64.into()))
}

fn binomial_check(g: &LaurentPoly, k: usize, h: &Halfspace) -> Option<BinomialCheck> {
    if g.len() != 2 {
        return None;
    }
    let u = &g.terms()[0].exponent;
    let w = &g.terms()[1].exponent;
    let d: Vec<i64> = u.iter().zip(w).map(|(a, b)| a - b).collect();
    let a = g.terms()[0].coeff.as_rational()?.abs();
    let b = g.terms()[1].coeff.as_rational()?.abs();
    // |a| e^{-<u,v>} = |b| e^{-<w,v>}  iff  <d, v> = ln(a / b)
    let level = (crate::scalars::to_f64(&a) / crate::scalars::to_f64(&b)).ln();
    let dot = |x: &[i64]| x.iter().zip(&d).map(|(p, q)| p * q).sum::<i64>();
    let n = h.rank();
    let mut witness = None;
    let meets = if let Some(gen) = h.boundary.iter().find(|gen| dot(gen) != 0) {
        // move along a boundary generator from t = 1
        let s = (level - dot(&h.direction) as f64) / dot(gen) as f64;
        witness = Some((0..n).map(|i| h.direction[i] as f64 + s * gen[i] as f64).collect());
        true
    } else {
        let s = dot(&h.direction);
        let sign = a.cmp(&b) as i64;
        if s == 0 {
            sign == 0
        } else if sign != 0 && sign == s.signum() {
            let t = level / s as f64;
            witness = Some(h.direction.iter().map(|&x| t * x as f64).collect());
            true
        } else {
            false
        }
    };
    if meets && witness.is_none() {
        witness = Some(h.direction.iter().map(|&x| x as f64).collect());
    }
    Some(BinomialCheck { constraint: k, normal: d, meets, witness })
}

/// A certificate that `w` is outside the amoeba of `g`, by the exact
/// trinomial test or by a lopsided term.
fn certified_outside(g: &LaurentPoly, w: &[Rational]) -> Result<Option<(String, usize)>> {
    if archimedean::triangle_decides(g) {
        if let TriangleVerdict::Outside { dominant } = archimedean::triangle_membership(g, w)? {
            return Ok(Some(("triangle".into(), dominant)));
        }
    }
    Ok(archimedean::lopsided_index(g, w)?.map(|k| ("lopsided".into(), k)))
}

fn archimedean_scan(system: &ConstraintSystem, h: &Halfspace, opts: &ScanOptions) -> Result<ArchimedeanReport> {
    let polys = system.pulled_back_polys()?;
    let hypersurface = polys.len() == 1;
    let binomials: Vec<BinomialCheck> =
        polys.iter().enumerate().filter_map(|(k, g)| binomial_check(g, k, h)).collect();

    let mut points = grid_points(h, opts);
    let mut escape = None;
    let mut tail_certified = false;
    if hypersurface && h.boundary.is_empty() {
        let f = &polys[0];
        let v = ints_to_q(&h.direction);
        if let Some((i, bound)) = archimedean::escape_bound(f, &v)? {
            escape = Some((i, bound));
            // the bound is <= 0 exactly when (s - 1)|a_j| <= |a_i| for all j
            let s = Rational::from_integer((f.len() as i64 - 1).into());
            let ai = f.terms()[i].coeff.as_rational().expect("rational coefficients").abs();
            tail_certified = f
                .terms()
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .all(|(_, t)| &s * t.coeff.as_rational().expect("rational coefficients").abs() <= ai);
            let n = opts.ray_samples.max(1);
            for k in 1..=n {
                if let Some(t) = dyadic_below(bound * k as f64 / n as f64) {
                    points.push(linalg::scale(&v, &t));
                }
            }
        }
        // thin crossings the grid would step over
        for t in archimedean::ray_candidates(f, &v)? {
            let t = archimedean::dyadic_near(t);
            if t.is_positive() {
                points.push(linalg::scale(&v, &t));
            }
        }
        let mut seen = BTreeSet::new();
        points.retain(|p| seen.insert(p.clone()));
    }

    let mut scanned = Vec::with_capacity(points.len());
    for w in points {
        let mut verdict = ScanVerdict::EvidenceOnly;
        for (k, g) in polys.iter().enumerate() {
            if let Some((method, term)) = certified_outside(g, &w)? {
                verdict = ScanVerdict::CertifiedOutside { constraint: k, method, term };
                break;
            }
        }
        if hypersurface && verdict == ScanVerdict::EvidenceOnly {
            verdict = match archimedean::membership(&polys[0], &w, &opts.sample)? {
                PointVerdict::Inside { .. } => ScanVerdict::Meets { certified: true },
                PointVerdict::NumericInside { .. } => ScanVerdict::Meets { certified: false },
                _ => ScanVerdict::EvidenceOnly,
            };
        }
        scanned.push(ScanPoint { point: w, verdict });
    }

    let binomial_meets = hypersurface && binomials.iter().any(|b| b.meets);
    let binomial_misses = binomials.iter().any(|b| !b.meets);
    let status = if binomial_misses || tail_certified {
        ArchimedeanStatus::Certified
    } else if binomial_meets || scanned.iter().any(|p| matches!(p.verdict, ScanVerdict::Meets { .. })) {
        ArchimedeanStatus::Meets
    } else if scanned.iter().all(|p| matches!(p.verdict, ScanVerdict::CertifiedOutside { .. })) {
        ArchimedeanStatus::SamplesCertified
    } else {
        ArchimedeanStatus::EvidenceOnly
    };
    Ok(ArchimedeanReport { status, binomials, escape, points: scanned })
}

/// `Some(i)` when every ratio `a_j / a_i` is a constant, i.e. `f / a_i`
/// has coefficients in the scalar field. Such an `i` exists iff `i = 0`
/// works, so the minimal index is always 0.
pub fn defined_over_k_test(f: &LaurentPoly) -> Result<Option<usize>> {
    f.require_hypersurface()?;
    let a0 = &f.terms()[0].coeff;
    let constant = f.terms().iter().all(|t| t.coeff.div(a0).to_function().as_constant().is_some());
    Ok(constant.then_some(0))
}

/// Whether `x` is a torsion point of the rational torus, i.e. every
/// coordinate is `1` or `-1`.
pub fn torsion_point_test(x: &[Rational]) -> Result<bool> {
    if x.iter().any(Zero::is_zero) {
        return Err(Error::ZeroCoordinate);
    }
    Ok(x.iter().all(|c| c.abs().is_one()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCoset {
    pub is_torsion_coset: bool,
    /// Normal `u - w` of the hyperplane `{<u - w, v> = 0}`, the amoeba at
    /// every place when `f` defines a torsion coset.
    pub hyperplane: Option<Vec<i64>>,
}

/// Over Q, `f` defines a torsion coset iff it is a binomial
/// `a x^u + b x^w` with `-b / a = ±1`.
pub fn torsion_coset_test(f: &LaurentPoly) -> Result<TorsionCoset> {
    f.require_hypersurface()?;
    if f.field() != Field::Rationals {
        return Err(Error::FieldMismatch { expected: Field::Rationals.to_string(), found: f.field().to_string() });
    }
    let no = TorsionCoset { is_torsion_coset: false, hyperplane: None };
    if f.len() != 2 {
        return Ok(no);
    }
    let [s, t] = f.terms() else { unreachable!() };
    let ratio = t.coeff.div(&s.coeff).as_rational().expect("rational coefficients");
    if !ratio.abs().is_one() {
        return Ok(no);
    }
    let mut normal: Vec<i64> = s.exponent.iter().zip(&t.exponent).map(|(a, b)| a - b).collect();
    if normal.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        normal.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(TorsionCoset { is_torsion_coset: true, hyperplane: Some(normal) })
}

/// An open half line disjoint from every nonarchimedean component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointHalfline {
    pub term: usize,
    pub direction: Vec<i64>,
}

/// Primitive integer multiple of a rational direction.
fn integer_direction(v: &[Rational]) -> Vec<i64> {
    let (ints, _) = linalg::primitive(v);
    ints.iter().map(|x| i64::try_from(x).expect("direction entries fit in i64")).collect()
}

/// For each vertex `u_i` of the Newton polytope, a primitive direction
/// singling out `i`.
pub fn vertex_halflines(f: &LaurentPoly) -> Result<Vec<DisjointHalfline>> {
    f.require_hypersurface()?;
    let exps = f.exponents();
    Ok((0..exps.len())
        .filter_map(|i| vertex_direction(&exps, i).map(|v| DisjointHalfline { term: i, direction: integer_direction(&v) }))
        .collect())
}

/// Vertex terms whose valuation is minimal among all coefficients at every
/// bad place, each with a half line in its cone; by the fast criterion
/// these half lines miss every nonarchimedean component.
pub fn place_uniform_vertices(f: &LaurentPoly) -> Result<Vec<DisjointHalfline>> {
    let candidates = vertex_halflines(f)?;
    let data = f
        .bad_places()
        .iter()
        .map(|p| tropical_data(f, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(candidates.into_iter().filter(|c| data.iter().all(|d| d.iter().all(|x| d[c.term] <= *x))).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCheck {
    pub place: Place,
    pub contains_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EklReport {
    /// Half lines missing all nonarchimedean components.
    pub candidates: Vec<DisjointHalfline>,
    /// A candidate that also passes the archimedean scan (over Q).
    pub disjoint_halfline: Option<DisjointHalfline>,
    /// The full report for `disjoint_halfline`.
    pub halfline_report: Option<AdelicReport>,
    pub zero: Vec<ZeroCheck>,
    pub all_contain_zero: bool,
    /// Archimedean membership of the origin, over Q.
    pub archimedean_zero: Option<PointVerdict>,
    /// Either a disjoint half line exists or zero lies in every
    /// nonarchimedean component.
    pub consistent: bool,
}

pub fn ekl_consistency_check(f: &LaurentPoly, opts: &ScanOptions) -> Result<EklReport> {
    f.require_hypersurface()?;
    let amoeba = crate::tropical::adelic_amoeba(f)?;
    let candidates = place_uniform_vertices(f)?;
    let mut disjoint_halfline = None;
    let mut halfline_report = None;
    for c in &candidates {
        let report = adelic_disjoint(&amoeba, &Halfspace::half_line(c.direction.clone())?, opts)?;
        if report.is_disjoint() {
            disjoint_halfline = Some(c.clone());
            halfline_report = Some(report);
            break;
        }
    }
    let zero: Vec<ZeroCheck> = amoeba
        .components()
        .into_iter()
        .map(|(place, c)| ZeroCheck { place, contains_zero: c.contains_zero() })
        .collect();
    let all_contain_zero = zero.iter().all(|z| z.contains_zero);
    let archimedean_zero = match f.field() {
        Field::Rationals => Some(archimedean::membership(f, &zeros(f.rank()), &opts.sample)?),
        Field::FunctionField => None,
    };
    let consistent = disjoint_halfline.is_some() || all_contain_zero;
    Ok(EklReport {
        candidates,
        disjoint_halfline,
        halfline_report,
        zero,
        all_contain_zero,
        archimedean_zero,
        consistent,
    })
}

/// The closure `X'` of the image of `X` in the quotient torus, as supplied
/// by the caller.
#[derive(Clone, Debug, PartialEq)]
pub enum ImagePresentation {
    Hypersurface(LaurentPoly),
    CodimGreaterThanOne,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Conclusion {
    /// Case 1: the image has codimension greater than one (declared).
    CodimGreaterThanOne,
    /// Case 2: the image hypersurface divided by coefficient `term` has
    /// constant coefficients.
    DefinedOverScalars { term: usize, normalized: String },
    /// Case 3: the image is a torsion coset with this hyperplane amoeba.
    TorsionCoset { hyperplane: Vec<i64> },
}

impl Conclusion {
    pub fn case(&self) -> u8 {
        match self {
            Conclusion::CodimGreaterThanOne => 1,
            Conclusion::DefinedOverScalars { .. } => 2,
            Conclusion::TorsionCoset { .. } => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem1Status {
    /// `H` meets the adelic amoeba; nothing to conclude.
    HypothesisFails,
    Concluded,
    /// Disjointness holds but no conclusion checks out: an implementation
    /// defect.
    Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub hypothesis: AdelicReport,
    pub quotient: QuotientMap,
    /// The image half line `R_{>0} phi(v)` against the amoeba of the
    /// supplied image hypersurface.
    pub image_halfline: Option<AdelicReport>,
    pub conclusion_case: Option<u8>,
    pub status: Theorem1Status,
    pub certificates: Vec<Conclusion>,
}

/// Decides whether `H` misses the adelic amoeba of the system and, if so,
/// which structural conclusion explains it. A hypersurface with a half
/// line needs no image; otherwise the image hypersurface in the quotient
/// torus or a codimension declaration is required.
pub fn theorem1_report(
    system: &ConstraintSystem,
    image: Option<&ImagePresentation>,
    h: &Halfspace,
    opts: &ScanOptions,
) -> Result<Theorem1Report> {
    if system.rank != h.rank() {
        return Err(Error::DimensionMismatch { expected: system.rank, found: h.rank() });
    }
    let quotient = quotient_map(h)?;
    let image = match (image, system.as_hypersurface()) {
        (Some(img), _) => img.clone(),
        (None, Some(f)) if h.boundary.is_empty() => ImagePresentation::Hypersurface(f.clone()),
        _ => return Err(Error::MissingImagePresentation),
    };
    if let ImagePresentation::Hypersurface(g) = &image {
        g.require_hypersurface()?;
        if g.rank() != quotient.phi.len() {
            return Err(Error::DimensionMismatch { expected: quotient.phi.len(), found: g.rank() });
        }
        if g.field() != system.field() {
            return Err(Error::FieldMismatch { expected: system.field().to_string(), found: g.field().to_string() });
        }
    }

    let hypothesis = adelic_disjoint(&system.adelic_amoeba()?, h, opts)?;

    let mut certificates = Vec::new();
    let mut image_halfline = None;
    match &image {
        ImagePresentation::CodimGreaterThanOne => certificates.push(Conclusion::CodimGreaterThanOne),
        ImagePresentation::Hypersurface(g) => {
            let dir = quotient.apply(&ints_to_q(&h.direction));
            let line = Halfspace::half_line(integer_direction(&dir))?;
            image_halfline = Some(adelic_disjoint(&crate::tropical::adelic_amoeba(g)?, &line, opts)?);
            match g.field() {
                Field::FunctionField => {
                    if let Some(i) = defined_over_k_test(g)? {
                        let a = g.terms()[i].coeff.clone();
                        let normalized = g.scale(&Scalar::one_in(g.field()).div(&a))?.to_string();
                        certificates.push(Conclusion::DefinedOverScalars { term: i, normalized });
                    }
                }
                Field::Rationals => {
                    let t = torsion_coset_test(g)?;
                    if let Some(hyperplane) = t.hyperplane {
                        certificates.push(Conclusion::TorsionCoset { hyperplane });
                    }
                }
            }
        }
    }
    let (status, conclusion_case) = if !hypothesis.is_disjoint() {
        (Theorem1Status::HypothesisFails, None)
    } else if let Some(c) = certificates.first() {
        (Theorem1Status::Concluded, Some(c.case()))
    } else {
        (Theorem1Status::Violation, None)
    };
    Ok(Theorem1Report { hypothesis, quotient, image_halfline, conclusion_case, status, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{adelic_amoeba, generic_skeleton, trop_hypersurface, PulledBack};

    fn qz(text: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(text, n, Field::FunctionField).unwrap()
    }

    fn q(text: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(text, n, Field::Rationals).unwrap()
    }

    fn v(x: &[i64]) -> QVec {
        ints_to_q(x)
    }

    /// Polynomials in `x1, x2, x3` inside a torus of rank `n`.
    fn system(field: Field, polys: &[&str], n: usize) -> ConstraintSystem {
        let constraints = polys
            .iter()
            .map(|p| PulledBack::coordinates(LaurentPoly::parse(p, 3, field).unwrap(), n, &[0, 1, 2]))
            .collect();
        ConstraintSystem::new(n, constraints).unwrap()
    }

    #[test]
    fn quotient_maps() {
        let h = Halfspace::new(vec![vec![0, 0, 1]], vec![1, 1, 0]).unwrap();
        let phi = quotient_map(&h).unwrap();
        assert_eq!(phi.phi_i64().unwrap(), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let h = Halfspace::new(vec![vec![1, 1]], vec![1, 0]).unwrap();
        let phi = quotient_map(&h).unwrap().phi_i64().unwrap();
        assert_eq!(phi.len(), 1);
        assert_eq!(phi[0][0] + phi[0][1], 0);
        assert!(quotient_map(&Halfspace::half_line(vec![2, 3]).unwrap()).unwrap().is_identity());
        assert_eq!(Halfspace::new(vec![vec![1, 1]], vec![2, 2]), Err(Error::DependentDirection));
    }

    #[test]
    fn halfspace_membership() {
        let h = Halfspace::new(vec![vec![0, 0, 1]], vec![1, 1, 0]).unwrap();
        assert!(h.contains(&v(&[2, 2, -5])));
        assert!(!h.contains(&v(&[0, 0, 1])));
        assert!(!h.contains(&v(&[-1, -1, 0])));
        assert!(!h.contains(&v(&[1, 2, 0])));
    }

    #[test]
    fn fast_path_on_tripods() {
        let f = qz("z*x1 + (z-1)*x2 + (z-2)", 2);
        let at_z = halfline_disjoint_fast(&f, &"q:z".parse().unwrap(), &v(&[2, -1])).unwrap();
        assert_eq!(at_z, HalflineVerdict::Disjoint);
        let at_z1 = halfline_disjoint_fast(&f, &"q:z-1".parse().unwrap(), &v(&[2, -1])).unwrap();
        let HalflineVerdict::Meets { witness, t } = at_z1 else { panic!("expected a crossing") };
        assert!(t.is_positive());
        assert!(trop_hypersurface(&f, &"q:z-1".parse().unwrap()).unwrap().contains(&witness));
        let g = q("x1 + x2 + 1", 2);
        assert_eq!(halfline_disjoint_fast(&g, &Place::Generic, &v(&[0, 1])).unwrap(), HalflineVerdict::NotRelint);
    }

    #[test]
    fn lp_path_examples() {
        let sk = generic_skeleton(&q("x1 + x2 + 1", 2)).unwrap();
        let h = Halfspace::half_line(vec![1, 0]).unwrap();
        assert!(matches!(halfspace_meets_complex(&h, &sk).unwrap(), HalfspaceVerdict::Meets { .. }));
        let f = q("x1*x2 - 2*x1 - 2*x2 + 1", 2);
        let a2 = trop_hypersurface(&f, &Place::prime(2).unwrap()).unwrap();
        let diag = Halfspace::half_line(vec![1, 1]).unwrap();
        assert!(halfspace_meets_complex(&diag, &a2).unwrap().is_disjoint());
    }

    #[test]
    fn curve_in_three_space_is_disjoint() {
        let sys = system(
            Field::FunctionField,
            &["x1 - x2 - 1", "x1 - x3 - 1/z", "x2 - x3 - (1-z)/z"],
            3,
        );
        let h = Halfspace::new(vec![vec![0, 0, 1]], vec![1, 1, 0]).unwrap();
        let report = adelic_disjoint(&sys.adelic_amoeba().unwrap(), &h, &ScanOptions::default()).unwrap();
        assert!(report.is_disjoint());
        assert!(report.archimedean.is_none());
        assert_eq!(report.nonarchimedean.len(), 4);
    }

    #[test]
    fn tripod_meets_negative_diagonal() {
        let f = qz("z*x1 + (z-1)*x2 + (z-2)", 2);
        let h = Halfspace::half_line(vec![-1, -1]).unwrap();
        let report = adelic_disjoint(&adelic_amoeba(&f).unwrap(), &h, &ScanOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Meets);
        assert!(!report.nonarchimedean[0].verdict.is_disjoint());
    }

    #[test]
    fn defined_over_scalars() {
        assert_eq!(defined_over_k_test(&qz("z*x1 + 2*z*x2 + 3*z", 2)).unwrap(), Some(0));
        assert_eq!(defined_over_k_test(&qz("z*x1 + (z-1)*x2 + (z-2)", 2)).unwrap(), None);
        let f = qz("(z^2+1)*x1 + (z^2+1)*x2 - 5*(z^2+1)", 2);
        assert_eq!(defined_over_k_test(&f).unwrap(), Some(0));
        assert_eq!(defined_over_k_test(&qz("z*x1", 2)), Err(Error::MonomialInput));
    }

    #[test]
    fn torsion_points_and_cosets() {
        let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
        assert!(torsion_point_test(&[r(1, 1), r(-1, 1), r(1, 1)]).unwrap());
        assert!(!torsion_point_test(&[r(2, 1), r(1, 1)]).unwrap());
        assert!(torsion_point_test(&[r(-1, 1), r(3, 3)]).unwrap());
        assert_eq!(torsion_point_test(&[r(0, 1)]), Err(Error::ZeroCoordinate));

        let t = torsion_coset_test(&q("x1*x2^2 - 1", 2)).unwrap();
        assert_eq!(t.hyperplane, Some(vec![1, 2]));
        assert!(!torsion_coset_test(&q("x1 - 2", 1)).unwrap().is_torsion_coset);
        assert!(torsion_coset_test(&q("x1 + x2", 2)).unwrap().is_torsion_coset);
        assert!(!torsion_coset_test(&q("x1 + x2 + 1", 2)).unwrap().is_torsion_coset);
    }

    #[test]
    fn binomial_amoeba_against_rays() {
        let h = Halfspace::half_line(vec![1]).unwrap();
        // 1 + 2x vanishes at |x| = 1/2, i.e. v = ln 2 > 0
        let meets = binomial_check(&q("1 + 2*x1", 1), 0, &h).unwrap();
        assert!(meets.meets);
        assert!((meets.witness.unwrap()[0] - 2f64.ln()).abs() < 1e-12);
        let misses = binomial_check(&q("2 + x1", 1), 0, &h).unwrap();
        assert!(!misses.meets);
        let through_zero = binomial_check(&q("x1*x2 - 1", 2), 0, &Halfspace::half_line(vec![1, 1]).unwrap()).unwrap();
        assert!(!through_zero.meets);
    }

    #[test]
    fn rational_ray_meeting_archimedean_amoeba() {
        // nonarchimedean disjoint, but the archimedean amoeba of 1 + x1 + x2
        // meets the ray t(1, 1) for t <= ln 2
        let f = q("1 + x1 + x2", 2);
        let h = Halfspace::half_line(vec![1, 1]).unwrap();
        let report = adelic_disjoint(&adelic_amoeba(&f).unwrap(), &h, &ScanOptions::default()).unwrap();
        assert!(report.nonarchimedean_disjoint());
        assert_eq!(report.archimedean.unwrap().status, ArchimedeanStatus::Meets);
        assert_eq!(report.verdict, Verdict::Meets);
    }

    #[test]
    fn thin_archimedean_crossings_are_found() {
        // hyperplanes v1 + v2 = 0 and v1 + v2 = -ln 2, crossed at t = ln 2
        let f = q("x1^2*x2^2 + 3*x1*x2 + 2", 2);
        let h = Halfspace::half_line(vec![-1, 0]).unwrap();
        let report = adelic_disjoint(&adelic_amoeba(&f).unwrap(), &h, &ScanOptions::default()).unwrap();
        assert!(report.nonarchimedean_disjoint());
        assert_eq!(report.verdict, Verdict::Meets);
        // a band of width ~3e-4 where the first two moduli balance
        let g = q("x1^-2*x2 + 10*x2^2 + x1^2", 2);
        let h = Halfspace::half_line(vec![2, -1]).unwrap();
        let report = adelic_disjoint(&adelic_amoeba(&g).unwrap(), &h, &ScanOptions::default()).unwrap();
        assert!(report.nonarchimedean_disjoint());
        let arch = report.archimedean.unwrap();
        assert!(arch.points.iter().any(|p| p.verdict == ScanVerdict::Meets { certified: true }));
    }

    #[test]
    fn ekl_examples() {
        let opts = ScanOptions::default();
        let tripod = ekl_consistency_check(&qz("z*x1 + (z-1)*x2 + (z-2)", 2), &opts).unwrap();
        assert!(tripod.candidates.is_empty() && tripod.disjoint_halfline.is_none());
        assert!(tripod.all_contain_zero && tripod.consistent);
        // the x1*x2 vertex is minimal at 2, so only the archimedean amoeba
        // blocks the half line through (-1, -1)
        let pinch = ekl_consistency_check(&q("x1*x2 - 2*x1 - 2*x2 + 1", 2), &opts).unwrap();
        assert_eq!(pinch.candidates.len(), 2);
        assert!(pinch.disjoint_halfline.is_none() && pinch.all_contain_zero);
        let constant = ekl_consistency_check(&qz("x1 + 3*x2 - 1", 2), &opts).unwrap();
        assert!(constant.disjoint_halfline.is_some());
        assert!(constant.halfline_report.unwrap().is_disjoint());
    }

    #[test]
    fn theorem1_cases() {
        let sys = system(
            Field::FunctionField,
            &["x1 - x2 - 1", "x1 - x3 - 1/z", "x2 - x3 - (1-z)/z"],
            3,
        );
        let h = Halfspace::new(vec![vec![0, 0, 1]], vec![1, 1, 0]).unwrap();
        let image = ImagePresentation::Hypersurface(qz("x1 - x2 - 1", 2));
        let r = theorem1_report(&sys, Some(&image), &h, &ScanOptions::default()).unwrap();
        assert_eq!(r.status, Theorem1Status::Concluded);
        assert_eq!(r.conclusion_case, Some(2));
        assert!(r.image_halfline.unwrap().is_disjoint());
        assert_eq!(theorem1_report(&sys, None, &h, &ScanOptions::default()).unwrap_err(), Error::MissingImagePresentation);

        let f = q("x1*x2 - 1", 2);
        let diag = Halfspace::half_line(vec![1, 1]).unwrap();
        let r = theorem1_report(&ConstraintSystem::hypersurface(f).unwrap(), None, &diag, &ScanOptions::default()).unwrap();
        assert_eq!(r.conclusion_case, Some(3));
        assert_eq!(r.hypothesis.archimedean.unwrap().status, ArchimedeanStatus::Certified);
    }

    #[test]
    fn surface_in_four_space() {
        let sys = system(
            Field::Rationals,
            &["x1 - x2 - 1", "x1 - x3 - 2", "x2 - x3 - 1"],
            3,
        );
        let sys = ConstraintSystem::new(
            4,
            sys.constraints.into_iter().map(|k| PulledBack::coordinates(k.poly, 4, &[0, 1, 2])).collect(),
        )
        .unwrap();
        let h = Halfspace::new(vec![vec![0, 0, 0, 1]], vec![1, 1, 1, 0]).unwrap();
        let r = theorem1_report(&sys, Some(&ImagePresentation::CodimGreaterThanOne), &h, &ScanOptions::default()).unwrap();
        assert!(r.hypothesis.nonarchimedean_disjoint());
        let arch = r.hypothesis.archimedean.as_ref().unwrap();
        assert_eq!(arch.points.len(), 20);
        assert_eq!(arch.status, ArchimedeanStatus::SamplesCertified);
        assert_eq!(r.conclusion_case, Some(1));
    }
}
