//! Rational polyhedra in H-representation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{self, IntRows};
use super::linalg::{self, int_dot, qint, rref, to_q, zeros, QVec};
use super::lp::{self, LinearSystem, LpOutcome, Sense};
use crate::error::{Error, Result};
use crate::scalars::Rational;

/// `normal . v (= or <=) rhs` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub normal: Vec<BigInt>,
    pub rhs: Rational,
}

impl Constraint {
    /// Scales `row . v <= rhs` by a positive factor so the row is a
    /// primitive integer vector.
    pub fn new(row: &[Rational], rhs: Rational) -> Self {
        let (normal, s) = linalg::primitive(row);
        Constraint { normal, rhs: rhs * s }
    }

    pub fn from_ints(row: &[i64], rhs: Rational) -> Self {
        Self::new(&linalg::ints_to_q(row), rhs)
    }

    pub fn value(&self, v: &[Rational]) -> Rational {
        int_dot(&self.normal, v)
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    fn row(&self) -> QVec {
        to_q(&self.normal)
    }

    fn negated(&self) -> Constraint {
        Constraint { normal: self.normal.iter().map(|x| -x).collect(), rhs: -self.rhs.clone() }
    }

    /// Flips the sign so the first nonzero entry is positive; used for
    /// equalities, whose orientation is irrelevant.
    fn oriented(self) -> Constraint {
        if linalg::leading_sign(&self.normal) < 0 {
            self.negated()
        } else {
            self
        }
    }
}

/// `{v in Q^n : E v = e, G v <= g}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    rank: usize,
    equalities: Vec<Constraint>,
    inequalities: Vec<Constraint>,
}

impl Polyhedron {
    pub fn universe(rank: usize) -> Self {
        Polyhedron { rank, equalities: Vec::new(), inequalities: Vec::new() }
    }

    /// The canonical empty polyhedron `0 <= -1`.
    pub fn empty(rank: usize) -> Self {
        Polyhedron {
            rank,
            equalities: Vec::new(),
            inequalities: vec![Constraint { normal: vec![BigInt::zero(); rank], rhs: -qint(1) }],
        }
    }

    pub fn new(rank: usize, equalities: Vec<Constraint>, inequalities: Vec<Constraint>) -> Result<Self> {
        for c in equalities.iter().chain(&inequalities) {
            if c.normal.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: c.normal.len() });
            }
        }
        Ok(Polyhedron {
            rank,
            equalities: equalities.into_iter().map(Constraint::oriented).collect(),
            inequalities,
        })
    }

    /// A single point.
    pub fn point(p: &[Rational]) -> Self {
        let n = p.len();
        let eqs = (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                row[i] = BigInt::one();
                Constraint { normal: row, rhs: p[i].clone() }
            })
            .collect();
        Polyhedron { rank: n, equalities: eqs, inequalities: Vec::new() }
    }

    /// The closed ray `base + R_{>=0} dir`.
    pub fn ray(base: &[Rational], dir: &[Rational]) -> Self {
        let n = base.len();
        let mut p = Polyhedron::universe(n);
        // equations cutting out the line through base with direction dir
        let kernel = lattice::integer_kernel(&vec![linalg::primitive(dir).0], n);
        for k in kernel {
            let rhs = int_dot(&k, base);
            p.equalities.push(Constraint { normal: k, rhs }.oriented());
        }
        let neg: QVec = dir.iter().map(|x| -x).collect();
        let rhs = -linalg::dot(dir, base);
        p.inequalities.push(Constraint::new(&neg, rhs));
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn add_equality(&mut self, c: Constraint) {
        self.equalities.push(c.oriented());
    }

    pub fn add_inequality(&mut self, c: Constraint) {
        self.inequalities.push(c);
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.equalities.iter().all(|c| c.value(v) == c.rhs)
            && self.inequalities.iter().all(|c| c.value(v) <= c.rhs)
    }

    pub fn system(&self) -> LinearSystem {
        let mut s = LinearSystem::new(self.rank);
        for c in &self.equalities {
            s.eq(c.row(), c.rhs.clone());
        }
        for c in &self.inequalities {
            s.le(c.row(), c.rhs.clone());
        }
        s
    }

    pub fn lp_solve(&self, objective: &[Rational], sense: Sense) -> Result<LpOutcome> {
        if objective.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: objective.len() });
        }
        Ok(lp::solve(objective, &self.system(), sense))
    }

    pub fn feasible_point(&self) -> Option<QVec> {
        lp::feasible_point(&self.system())
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        debug_assert_eq!(self.rank, other.rank);
        let mut p = self.clone();
        p.equalities.extend(other.equalities.iter().cloned());
        p.inequalities.extend(other.inequalities.iter().cloned());
        p
    }

    /// Indices of inequalities that hold with equality on all of `self`,
    /// plus a point of `self`; `None` when empty.
    fn implicit_equalities(&self) -> Option<(Vec<usize>, QVec)> {
        let sys = self.system();
        let first = lp::feasible_point(&sys)?;
        let mut witnesses = vec![first.clone()];
        let mut implicit = Vec::new();
        for (i, c) in self.inequalities.iter().enumerate() {
            if witnesses.iter().any(|w| c.value(w) < c.rhs) {
                continue;
            }
            match lp::solve(&c.row(), &sys, Sense::Minimize) {
                LpOutcome::Optimal { value, point } => {
                    if value == c.rhs {
                        implicit.push(i);
                    } else {
                        witnesses.push(point);
                    }
                }
                LpOutcome::Unbounded { point, ray } => witnesses.push(linalg::add(&point, &ray)),
                LpOutcome::Infeasible(_) => return None,
            }
        }
        Some((implicit, first))
    }

    /// Equations of the affine hull in reduced echelon form (primitive
    /// integer rows, positive leading entry), or `None` when empty.
    pub fn affine_hull(&self) -> Option<Vec<Constraint>> {
        let (implicit, _) = self.implicit_equalities()?;
        let rows: Vec<QVec> = self
            .equalities
            .iter()
            .chain(implicit.iter().map(|&i| &self.inequalities[i]))
            .map(|c| {
                let mut r = c.row();
                r.push(c.rhs.clone());
                r
            })
            .collect();
        let (red, _) = rref(&rows, self.rank);
        Some(
            red.into_iter()
                .map(|mut r| {
                    let rhs = r.pop().unwrap();
                    Constraint::new(&r, rhs).oriented()
                })
                .collect(),
        )
    }

    /// Dimension of the affine hull; `-1` when empty.
    pub fn dimension(&self) -> i64 {
        match self.affine_hull() {
            None => -1,
            Some(h) => (self.rank - h.len()) as i64,
        }
    }

    /// A point in the relative interior.
    pub fn relint_point(&self) -> Option<QVec> {
        let (implicit, point) = self.implicit_equalities()?;
        let n = self.rank;
        let loose: Vec<&Constraint> = self
            .inequalities
            .iter()
            .enumerate()
            .filter(|(i, _)| !implicit.contains(i))
            .map(|(_, c)| c)
            .collect();
        if loose.is_empty() {
            return Some(point);
        }
        let mut sys = LinearSystem::new(n + 1);
        for c in self.equalities.iter().chain(implicit.iter().map(|&i| &self.inequalities[i])) {
            let mut r = c.row();
            r.push(Rational::zero());
            sys.eq(r, c.rhs.clone());
        }
        for c in loose {
            let mut r = c.row();
            r.push(Rational::one());
            sys.le(r, c.rhs.clone());
        }
        let mut obj = zeros(n + 1);
        obj[n] = Rational::one();
        sys.le(obj.clone(), Rational::one());
        match lp::solve(&obj, &sys, Sense::Maximize) {
            LpOutcome::Optimal { mut point, .. } => {
                point.truncate(n);
                Some(point)
            }
            _ => Some(point),
        }
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        let sys = self.system();
        if lp::feasible_point(&sys).is_none() {
            return true;
        }
        let bounded_by = |row: QVec, rhs: &Rational| match lp::solve(&row, &sys, Sense::Maximize) {
            LpOutcome::Optimal { value, .. } => &value <= rhs,
            LpOutcome::Unbounded { .. } => false,
            LpOutcome::Infeasible(_) => true,
        };
        other.equalities.iter().all(|c| {
            bounded_by(c.row(), &c.rhs) && bounded_by(c.negated().row(), &c.negated().rhs)
        }) && other.inequalities.iter().all(|c| bounded_by(c.row(), &c.rhs))
    }

    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// `self + w`.
    pub fn translate(&self, w: &[Rational]) -> Polyhedron {
        let shift = |c: &Constraint| Constraint { normal: c.normal.clone(), rhs: &c.rhs + c.value(w) };
        Polyhedron {
            rank: self.rank,
            equalities: self.equalities.iter().map(shift).collect(),
            inequalities: self.inequalities.iter().map(shift).collect(),
        }
    }

    /// `{v in Q^n : phi v in self}` for an `m x n` integer matrix `phi`.
    pub fn preimage(&self, phi: &IntRows, n: usize) -> Result<Polyhedron> {
        if phi.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: phi.len() });
        }
        if let Some(row) = phi.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        let pull = |c: &Constraint| {
            let row: QVec = (0..n)
                .map(|j| {
                    let s: BigInt = c.normal.iter().zip(phi).map(|(a, r)| a * &r[j]).sum();
                    Rational::from_integer(s)
                })
                .collect();
            Constraint::new(&row, c.rhs.clone())
        };
        Ok(Polyhedron {
            rank: n,
            equalities: self.equalities.iter().map(pull).map(Constraint::oriented).collect(),
            inequalities: self.inequalities.iter().map(pull).collect(),
        })
    }

    /// The image `phi(self)` under a surjective `m x n` integer matrix.
    pub fn project(&self, phi: &IntRows) -> Result<Polyhedron> {
        let n = self.rank;
        let m = phi.len();
        if let Some(row) = phi.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        let phi_q: Vec<QVec> = phi.iter().map(|r| to_q(r)).collect();
        let rk = linalg::rank(&phi_q, n);
        if rk < m {
            return Err(Error::RankDeficient { rank: rk, rows: m });
        }
        let Some(hull) = self.affine_hull() else {
            return Ok(Polyhedron::empty(m));
        };
        // coordinates y = W x with W = [phi; K], K spanning ker(phi)^T
        let mut w = phi_q.clone();
        w.extend(lattice::integer_kernel(phi, n).iter().map(|r| to_q(r)));
        let w_inv = linalg::inverse(&w).ok_or_else(|| Error::Internal("singular coordinate change".into()))?;
        let to_y = |c: &Constraint| -> (QVec, Rational) {
            let row: QVec = (0..n)
                .map(|j| c.normal.iter().zip(&w_inv).map(|(a, r)| &r[j] * Rational::from_integer(a.clone())).sum())
                .collect();
            (row, c.rhs.clone())
        };
        let mut eqs: Vec<(QVec, Rational)> = hull.iter().map(to_y).collect();
        let mut ineqs: Vec<(QVec, Rational)> = self.inequalities.iter().map(to_y).collect();

        for var in (m..n).rev() {
            if let Some(k) = eqs.iter().position(|(r, _)| !r[var].is_zero()) {
                let (pr, pb) = eqs.swap_remove(k);
                let subst = |(r, b): &(QVec, Rational)| -> (QVec, Rational) {
                    if r[var].is_zero() {
                        return (r.clone(), b.clone());
                    }
                    let f = &r[var] / &pr[var];
                    (linalg::sub(r, &linalg::scale(&pr, &f)), b - &pb * &f)
                };
                eqs = eqs.iter().map(subst).collect();
                ineqs = ineqs.iter().map(subst).collect();
            } else {
                let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
                for c in ineqs {
                    match c.0[var].cmp(&Rational::zero()) {
                        Ordering::Greater => pos.push(c),
                        Ordering::Less => neg.push(c),
                        Ordering::Equal => rest.push(c),
                    }
                }
                for (pr, pb) in &pos {
                    for (nr, nb) in &neg {
                        let a = &pr[var];
                        let b = -&nr[var];
                        let row = linalg::add(&linalg::scale(pr, &b), &linalg::scale(nr, a));
                        rest.push((row, pb * &b + nb * a));
                    }
                }
                ineqs = rest;
            }
            for list in [&mut eqs, &mut ineqs] {
                for (r, _) in list.iter_mut() {
                    r.truncate(var);
                }
            }
            let tmp = Polyhedron::from_q(var, &eqs, &ineqs).without_redundancy();
            eqs = tmp.equalities.iter().map(|c| (c.row(), c.rhs.clone())).collect();
            ineqs = tmp.inequalities.iter().map(|c| (c.row(), c.rhs.clone())).collect();
        }
        Ok(Polyhedron::from_q(m, &eqs, &ineqs).canonical())
    }

    fn from_q(rank: usize, eqs: &[(QVec, Rational)], ineqs: &[(QVec, Rational)]) -> Polyhedron {
        Polyhedron {
            rank,
            equalities: eqs.iter().map(|(r, b)| Constraint::new(r, b.clone()).oriented()).collect(),
            inequalities: ineqs.iter().map(|(r, b)| Constraint::new(r, b.clone())).collect(),
        }
    }

    /// Drops duplicate, trivial and LP-redundant inequalities.
    pub fn without_redundancy(&self) -> Polyhedron {
        if self.is_empty() {
            return Polyhedron::empty(self.rank);
        }
        let mut eqs: Vec<Constraint> = Vec::new();
        for c in &self.equalities {
            if !c.is_trivial() && !eqs.contains(c) {
                eqs.push(c.clone());
            }
        }
        let mut ineqs: Vec<Constraint> = Vec::new();
        for c in &self.inequalities {
            if c.is_trivial() {
                continue;
            }
            // keep only the tightest of parallel rows
            if let Some(prev) = ineqs.iter_mut().find(|d| d.normal == c.normal) {
                if c.rhs < prev.rhs {
                    prev.rhs = c.rhs.clone();
                }
                continue;
            }
            ineqs.push(c.clone());
        }
        let mut i = 0;
        while i < ineqs.len() {
            let c = ineqs.remove(i);
            let others = Polyhedron { rank: self.rank, equalities: eqs.clone(), inequalities: ineqs.clone() };
            let needed = match lp::solve(&c.row(), &others.system(), Sense::Maximize) {
                LpOutcome::Optimal { value, .. } => value > c.rhs,
                _ => true,
            };
            if needed {
                ineqs.insert(i, c);
                i += 1;
            }
        }
        Polyhedron { rank: self.rank, equalities: eqs, inequalities: ineqs }
    }

    /// Canonical representation: affine hull in reduced echelon form,
    /// irredundant inequalities reduced modulo the hull, sorted.
    pub fn canonical(&self) -> Polyhedron {
        let Some(hull) = self.affine_hull() else {
            return Polyhedron::empty(self.rank);
        };
        let (hull_rows, pivots) = rref(&hull.iter().map(|c| {
            let mut r = c.row();
            r.push(c.rhs.clone());
            r
        }).collect::<Vec<_>>(), self.rank);
        let reduce = |c: &Constraint| -> Constraint {
            let mut r = c.row();
            r.push(c.rhs.clone());
            for (h, &p) in hull_rows.iter().zip(&pivots) {
                if !r[p].is_zero() {
                    let f = r[p].clone();
                    r = linalg::sub(&r, &linalg::scale(h, &f));
                }
            }
            let rhs = r.pop().unwrap();
            Constraint::new(&r, rhs)
        };
        let ineqs: Vec<Constraint> = self.inequalities.iter().map(reduce).collect();
        let mut p = Polyhedron { rank: self.rank, equalities: hull, inequalities: ineqs }.without_redundancy();
        p.inequalities.retain(|c| !c.is_trivial());
        p.inequalities.sort();
        p.inequalities.dedup();
        p
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row: Vec<String> = self.normal.iter().map(ToString::to_string).collect();
        write!(f, "[{}] {}", row.join(","), self.rhs)
    }
}

/// JSON form: integer normals and `"p/q"` right-hand sides.
#[derive(Serialize, Deserialize)]
struct ConstraintDto {
    normal: Vec<NumberDto>,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumberDto {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct PolyhedronDto {
    rank: usize,
    equalities: Vec<ConstraintDto>,
    inequalities: Vec<ConstraintDto>,
}

fn constraint_dto(c: &Constraint) -> ConstraintDto {
    ConstraintDto {
        normal: c
            .normal
            .iter()
            .map(|x| i64::try_from(x).map(NumberDto::Small).unwrap_or_else(|_| NumberDto::Big(x.to_string())))
            .collect(),
        rhs: c.rhs.to_string(),
    }
}

fn constraint_from_dto(d: ConstraintDto) -> std::result::Result<Constraint, String> {
    let normal = d
        .normal
        .into_iter()
        .map(|x| match x {
            NumberDto::Small(v) => Ok(BigInt::from(v)),
            NumberDto::Big(s) => s.parse::<BigInt>().map_err(|e| e.to_string()),
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let rhs: Rational = d.rhs.parse().map_err(|e| format!("bad rational `{}`: {e:?}", d.rhs))?;
    Ok(Constraint::new(&to_q(&normal), rhs))
}

impl Serialize for Polyhedron {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyhedronDto {
            rank: self.rank,
            equalities: self.equalities.iter().map(constraint_dto).collect(),
            inequalities: self.inequalities.iter().map(constraint_dto).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = PolyhedronDto::deserialize(d)?;
        let conv = |v: Vec<ConstraintDto>| {
            v.into_iter()
                .map(constraint_from_dto)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(serde::de::Error::custom)
        };
        let eqs = conv(dto.equalities)?;
        let ineqs = conv(dto.inequalities)?;
        Polyhedron::new(dto.rank, eqs, ineqs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::linalg::ints_to_q;
    use num_traits::Signed;

    fn c(row: &[i64], rhs: i64) -> Constraint {
        Constraint::from_ints(row, qint(rhs))
    }

    fn poly(n: usize, eqs: &[(&[i64], i64)], ineqs: &[(&[i64], i64)]) -> Polyhedron {
        Polyhedron::new(
            n,
            eqs.iter().map(|(r, b)| c(r, *b)).collect(),
            ineqs.iter().map(|(r, b)| c(r, *b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(poly(2, &[(&[1, -1], 0)], &[]).dimension(), 1);
        assert_eq!(poly(2, &[(&[0, 1], 1)], &[(&[1, 0], 0), (&[-1, 0], 0)]).dimension(), 0);
        assert_eq!(Polyhedron::empty(2).dimension(), -1);
        assert_eq!(poly(1, &[], &[(&[1], -1), (&[-1], 0)]).dimension(), -1);
        assert_eq!(Polyhedron::universe(3).dimension(), 3);
    }

    #[test]
    fn lp_examples() {
        let p = poly(1, &[], &[(&[1], 3)]);
        assert_eq!(
            p.lp_solve(&ints_to_q(&[1]), Sense::Maximize).unwrap(),
            LpOutcome::Optimal { value: qint(3), point: vec![qint(3)] }
        );
        assert!(matches!(
            p.lp_solve(&ints_to_q(&[1, 0]), Sense::Maximize),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn projections() {
        let phi = lattice::from_i64(&[vec![1, 0]]);
        let diag = poly(2, &[(&[1, -1], 0)], &[]);
        assert!(diag.project(&phi).unwrap().same_set(&Polyhedron::universe(1)));
        let strip = poly(2, &[(&[0, 1], 3)], &[(&[-1, 0], 0), (&[1, 0], 1)]);
        let img = strip.project(&phi).unwrap();
        assert!(img.same_set(&poly(1, &[], &[(&[-1], 0), (&[1], 1)])));
        let ray = Polyhedron::ray(&zeros(3), &ints_to_q(&[1, 1, 1]));
        let phi2 = lattice::from_i64(&[vec![1, 0, 0], vec![0, 1, 0]]);
        let img = ray.project(&phi2).unwrap();
        assert!(img.same_set(&Polyhedron::ray(&zeros(2), &ints_to_q(&[1, 1]))));
        assert_eq!(img.dimension(), 1);
        let bad = lattice::from_i64(&[vec![1, 0, 0], vec![2, 0, 0]]);
        assert!(matches!(ray.project(&bad), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn preimages() {
        let phi = lattice::from_i64(&[vec![1, 0]]);
        let p = poly(1, &[(&[1], 0)], &[]).preimage(&phi, 2).unwrap();
        assert!(p.same_set(&poly(2, &[(&[1, 0], 0)], &[])));
        assert!(Polyhedron::universe(1).preimage(&phi, 2).unwrap().same_set(&Polyhedron::universe(2)));
    }

    #[test]
    fn relint_and_canonical() {
        let tri = poly(2, &[], &[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1), (&[2, 2], 5)]);
        let r = tri.relint_point().unwrap();
        assert!(tri.inequalities().iter().all(|c| c.value(&r) < c.rhs));
        let can = tri.canonical();
        assert_eq!(can.inequalities().len(), 3);
        let seg = poly(2, &[], &[(&[1, -1], 0), (&[-1, 1], 0), (&[1, 0], 1), (&[-1, 0], 1)]);
        let can = seg.canonical();
        assert_eq!(can.equalities().len(), 1);
        assert_eq!(can.dimension(), 1);
        let r = seg.relint_point().unwrap();
        assert!(r[0].abs() < qint(1));
    }

    #[test]
    fn translation_and_subsets() {
        let ray = Polyhedron::ray(&zeros(2), &ints_to_q(&[1, 0]));
        let moved = ray.translate(&ints_to_q(&[-1, 2]));
        assert!(moved.contains(&ints_to_q(&[-1, 2])));
        assert!(moved.contains(&ints_to_q(&[5, 2])));
        assert!(!moved.contains(&ints_to_q(&[-2, 2])));
        assert!(Polyhedron::point(&ints_to_q(&[3, 0])).is_subset_of(&ray));
        assert!(!ray.is_subset_of(&Polyhedron::point(&ints_to_q(&[3, 0]))));
    }

    #[test]
    fn json_round_trip() {
        let p = poly(2, &[(&[1, -1], 0)], &[(&[1, 0], 3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"rank":2,"equalities":[{"normal":[1,-1],"rhs":"0"}],"inequalities":[{"normal":[1,0],"rhs":"3"}]}"#
        );
        let q: Polyhedron = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
