//! Finite unions of labelled polyhedra, set comparison by exact covering,
//! and the balancing check for weighted pure complexes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{self, IntRows};
use super::linalg::{self, zeros, QVec};
use super::lp::{self, LpOutcome, Sense};
use super::polyhedron::{Constraint, Polyhedron};
use crate::error::Result;
use crate::scalars::Rational;

/// A polyhedron labelled by the term indices tied on its relative interior
/// (one tie set per defining polynomial) and a positive weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub polyhedron: Polyhedron,
    pub tie_sets: Vec<Vec<usize>>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralComplex {
    rank: usize,
    cells: Vec<Cell>,
}

impl PolyhedralComplex {
    pub fn new(rank: usize, cells: Vec<Cell>) -> Self {
        debug_assert!(cells.iter().all(|c| c.polyhedron.rank() == rank));
        PolyhedralComplex { rank, cells }
    }

    pub fn empty(rank: usize) -> Self {
        PolyhedralComplex { rank, cells: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Index of the first cell containing `v`.
    pub fn membership(&self, v: &[Rational]) -> Option<usize> {
        self.cells.iter().position(|c| c.polyhedron.contains(v))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.membership(v).is_some()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&zeros(self.rank))
    }

    /// Largest cell dimension; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.cells.iter().map(|c| c.polyhedron.dimension()).max().unwrap_or(-1)
    }

    pub fn translate(&self, w: &[Rational]) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|c| Cell { polyhedron: c.polyhedron.translate(w), ..c.clone() })
            .collect();
        PolyhedralComplex { rank: self.rank, cells }
    }

    /// Cellwise preimage under an `rank x n` integer matrix.
    pub fn preimage(&self, phi: &IntRows, n: usize) -> Result<Self> {
        let cells = self
            .cells
            .iter()
            .map(|c| Ok(Cell { polyhedron: c.polyhedron.preimage(phi, n)?, ..c.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyhedralComplex { rank: n, cells })
    }

    /// Cellwise image under a surjective integer matrix, keeping only
    /// inclusion-maximal images.
    pub fn project(&self, phi: &IntRows) -> Result<Self> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                Ok(Cell { polyhedron: c.polyhedron.project(phi)?, multiplicity: 1, ..c.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyhedralComplex { rank: phi.len(), cells }.keep_maximal())
    }

    /// Drops empty cells and cells contained in another one (the earlier of
    /// two equal cells is kept), then canonicalizes the survivors.
    pub fn keep_maximal(&self) -> Self {
        let live: Vec<&Cell> = self.cells.iter().filter(|c| !c.polyhedron.is_empty()).collect();
        let mut keep = Vec::new();
        for (i, c) in live.iter().enumerate() {
            let dominated = live.iter().enumerate().any(|(j, d)| {
                j != i
                    && c.polyhedron.is_subset_of(&d.polyhedron)
                    && (j < i || !d.polyhedron.is_subset_of(&c.polyhedron))
            });
            if !dominated {
                keep.push(Cell { polyhedron: c.polyhedron.canonical(), ..(*c).clone() });
            }
        }
        PolyhedralComplex { rank: self.rank, cells: keep }
    }

    /// Canonical polyhedra, cells sorted by label then by constraints.
    pub fn canonical(&self) -> Self {
        let mut cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|c| Cell { polyhedron: c.polyhedron.canonical(), ..c.clone() })
            .collect();
        cells.sort_by(|a, b| {
            a.tie_sets
                .cmp(&b.tie_sets)
                .then_with(|| a.polyhedron.equalities().cmp(b.polyhedron.equalities()))
                .then_with(|| a.polyhedron.inequalities().cmp(b.polyhedron.inequalities()))
        });
        PolyhedralComplex { rank: self.rank, cells }
    }

    /// A point of `self` outside every cell of `other`, if any.
    pub fn point_not_covered_by(&self, other: &PolyhedralComplex) -> Option<QVec> {
        self.cells.iter().find_map(|c| uncovered_point(&c.polyhedron, &other.cells))
    }

    /// Set inclusion of the underlying point sets.
    pub fn is_subset_of(&self, other: &PolyhedralComplex) -> bool {
        self.point_not_covered_by(other).is_none()
    }

    /// Equality of the underlying point sets, by double inclusion.
    pub fn same_set(&self, other: &PolyhedralComplex) -> bool {
        self.rank == other.rank && self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Checks the weighted balancing condition around every ridge of the
    /// top-dimensional cells.
    pub fn balancing(&self) -> BalancingReport {
        let dim = self.dimension();
        let top: Vec<(usize, &Cell, QVec)> = self
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.polyhedron.dimension() == dim)
            .map(|(i, c)| (i, c, c.polyhedron.relint_point().expect("nonempty cell")))
            .collect();
        let mut ridges: Vec<Ridge> = Vec::new();
        if dim < 1 {
            return BalancingReport { ridges };
        }
        let mut seen: Vec<Polyhedron> = Vec::new();
        for (_, cell, _) in &top {
            let p = cell.polyhedron.canonical();
            for facet_ineq in p.inequalities() {
                let mut facet = p.clone();
                facet.add_equality(facet_ineq.clone());
                if facet.dimension() != dim - 1 || seen.iter().any(|s| s.same_set(&facet)) {
                    continue;
                }
                seen.push(facet.clone());
                ridges.push(balance_at(&facet, &top));
            }
        }
        BalancingReport { ridges }
    }
}

/// Weighted sum of primitive edge directions around one ridge, taken modulo
/// the ridge's linear span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ridge {
    #[serde(serialize_with = "crate::json::rationals")]
    pub point: Vec<Rational>,
    pub adjacent_cells: Vec<usize>,
    #[serde(serialize_with = "crate::json::integers")]
    pub weighted_sum: Vec<BigInt>,
}

impl Ridge {
    pub fn is_balanced(&self) -> bool {
        self.weighted_sum.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancingReport {
    pub ridges: Vec<Ridge>,
}

impl BalancingReport {
    pub fn is_balanced(&self) -> bool {
        self.ridges.iter().all(Ridge::is_balanced)
    }
}

fn balance_at(ridge: &Polyhedron, top: &[(usize, &Cell, QVec)]) -> Ridge {
    let n = ridge.rank();
    let hull = ridge.affine_hull().expect("ridge is nonempty");
    let normals: IntRows = hull.iter().map(|c| c.normal.clone()).collect();
    // rows of pi span the integer functionals vanishing on the ridge's span
    let pi = lattice::saturated_row_basis(&normals, n);
    let point = ridge.relint_point().expect("ridge is nonempty");
    let mut sum = vec![BigInt::zero(); pi.len()];
    let mut adjacent = Vec::new();
    for (idx, cell, p_sigma) in top {
        if !ridge.is_subset_of(&cell.polyhedron) {
            continue;
        }
        adjacent.push(*idx);
        let d = linalg::sub(p_sigma, &point);
        let image: QVec = pi.iter().map(|row| linalg::int_dot(row, &d)).collect();
        let (prim, _) = linalg::primitive(&image);
        for (s, x) in sum.iter_mut().zip(prim) {
            *s += x * BigInt::from(cell.multiplicity);
        }
    }
    Ridge { point, adjacent_cells: adjacent, weighted_sum: sum }
}

/// A point of `region` (with optional strict rows `normal . v < rhs`), if
/// one exists.
fn region_point(region: &Polyhedron, strict: &[Constraint]) -> Option<QVec> {
    if strict.is_empty() {
        return region.feasible_point();
    }
    let n = region.rank();
    let mut sys = region.system().widen(1);
    for c in strict {
        let mut row = linalg::to_q(&c.normal);
        row.push(Rational::one());
        sys.le(row, c.rhs.clone());
    }
    let mut eps = zeros(n + 1);
    eps[n] = Rational::one();
    sys.le(eps.clone(), Rational::one());
    match lp::solve(&eps, &sys, Sense::Maximize) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(n);
            Some(point)
        }
        _ => None,
    }
}

fn flipped(c: &Constraint) -> Constraint {
    Constraint { normal: c.normal.iter().map(|x| -x).collect(), rhs: -c.rhs.clone() }
}

/// A point of `p` lying in none of `cells`, or `None` when `p` is covered.
pub fn uncovered_point(p: &Polyhedron, cells: &[Cell]) -> Option<QVec> {
    let relevant: Vec<&Polyhedron> = cells
        .iter()
        .map(|c| &c.polyhedron)
        .filter(|q| !p.intersect(q).is_empty())
        .collect();
    uncovered_rec(p, &[], &relevant)
}

fn uncovered_rec(region: &Polyhedron, strict: &[Constraint], cells: &[&Polyhedron]) -> Option<QVec> {
    let witness = region_point(region, strict)?;
    let Some((q, rest)) = cells.split_first() else {
        return Some(witness);
    };
    if region_point(&region.intersect(q), strict).is_none() {
        return uncovered_rec(region, strict, rest);
    }
    // region \ q = union over q's constraints of (earlier ones hold, this fails)
    let mut closed = region.clone();
    for c in q.equalities() {
        for side in [c.clone(), flipped(c)] {
            // side: normal . v < rhs
            let mut s = strict.to_vec();
            s.push(side);
            if let Some(w) = uncovered_rec(&closed, &s, rest) {
                return Some(w);
            }
        }
        closed.add_equality(c.clone());
    }
    for c in q.inequalities() {
        let mut s = strict.to_vec();
        s.push(flipped(c));
        if let Some(w) = uncovered_rec(&closed, &s, rest) {
            return Some(w);
        }
        closed.add_inequality(c.clone());
    }
    None
}
