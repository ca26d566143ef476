//! Tropical hypersurfaces as corner loci of `Psi(v) = min_i <u_i, v> + c_i`,
//! adelic amoebas, and tropical prevarieties of pulled-back hypersurfaces.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{lattice_length, LaurentPoly};
use crate::polyhedral::lattice::{self, IntRows};
use crate::polyhedral::linalg::{qint, zeros, QVec};
use crate::polyhedral::{Cell, Constraint, PolyhedralComplex, Polyhedron};
use crate::scalars::{Field, Place, Rational};

/// Coefficient valuations `c_i = ord_p(a_i)`.
pub fn tropical_data(f: &LaurentPoly, place: &Place) -> Result<Vec<Rational>> {
    if *place == Place::Archimedean {
        return Err(Error::ArchimedeanNotSupported);
    }
    Ok(f.valuations(place)?.into_iter().map(qint).collect())
}

/// Minimum of `<u_i, v> + c_i` and every index attaining it.
pub fn psi_with(exponents: &[Vec<i64>], c: &[Rational], v: &[Rational]) -> (Rational, Vec<usize>) {
    let values: Vec<Rational> = exponents
        .iter()
        .zip(c)
        .map(|(u, ci)| {
            u.iter().zip(v).fold(ci.clone(), |acc, (&k, x)| if k == 0 { acc } else { acc + x * qint(k) })
        })
        .collect();
    let min = values.iter().min().expect("at least one term").clone();
    let argmin = values.iter().enumerate().filter(|(_, x)| **x == min).map(|(i, _)| i).collect();
    (min, argmin)
}

pub fn psi(f: &LaurentPoly, place: &Place, v: &[Rational]) -> Result<(Rational, Vec<usize>)> {
    f.require_hypersurface()?;
    if v.len() != f.rank() {
        return Err(Error::DimensionMismatch { expected: f.rank(), found: v.len() });
    }
    let c = tropical_data(f, place)?;
    Ok(psi_with(&f.exponents(), &c, v))
}

/// The cell where terms `i` and `j` both attain the minimum.
pub fn pair_cell(exponents: &[Vec<i64>], c: &[Rational], i: usize, j: usize) -> Polyhedron {
    let n = exponents[i].len();
    let diff = |a: usize, b: usize| -> Vec<i64> {
        exponents[a].iter().zip(&exponents[b]).map(|(x, y)| x - y).collect()
    };
    let mut p = Polyhedron::universe(n);
    p.add_equality(Constraint::from_ints(&diff(i, j), &c[j] - &c[i]));
    for k in 0..exponents.len() {
        if k != i && k != j {
            p.add_inequality(Constraint::from_ints(&diff(i, k), &c[k] - &c[i]));
        }
    }
    p
}

/// The corner locus of `Psi` as a pure complex of maximal cells, each
/// labelled by the full tie set on its relative interior and weighted by
/// the lattice length of the dual edge.
pub fn corner_locus(exponents: &[Vec<i64>], c: &[Rational]) -> PolyhedralComplex {
    let s = exponents.len();
    let n = exponents[0].len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cells = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            let p = pair_cell(exponents, c, i, j);
            if p.dimension() != n as i64 - 1 {
                continue;
            }
            let r = p.relint_point().expect("nonempty cell");
            let (_, tie) = psi_with(exponents, c, &r);
            if !seen.insert(tie.clone()) {
                continue;
            }
            let multiplicity = tie
                .iter()
                .flat_map(|&a| tie.iter().map(move |&b| (a, b)))
                .map(|(a, b)| lattice_length(&exponents[a], &exponents[b]))
                .max()
                .unwrap_or(1);
            cells.push(Cell { polyhedron: p.canonical(), tie_sets: vec![tie], multiplicity });
        }
    }
    PolyhedralComplex::new(n, cells).canonical()
}

/// The tropical hypersurface of `f` at a finite or generic place.
pub fn trop_hypersurface(f: &LaurentPoly, place: &Place) -> Result<PolyhedralComplex> {
    f.require_hypersurface()?;
    let c = tropical_data(f, place)?;
    Ok(corner_locus(&f.exponents(), &c))
}

/// The codimension-one skeleton of the inward normal fan of the Newton
/// polytope.
pub fn generic_skeleton(f: &LaurentPoly) -> Result<PolyhedralComplex> {
    trop_hypersurface(f, &Place::Generic)
}

pub fn contains_zero(c: &PolyhedralComplex) -> bool {
    c.contains_zero()
}

pub fn project_complex(c: &PolyhedralComplex, phi: &IntRows) -> Result<PolyhedralComplex> {
    Ok(c.project(phi)?.canonical())
}

/// A hypersurface `f_k(y) = 0` in `m_k` variables pulled back along the
/// monomial map `y = x^psi`, i.e. tropically along `v -> psi v` with `psi`
/// of shape `m_k x n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PulledBack {
    pub poly: LaurentPoly,
    pub pullback: Vec<Vec<i64>>,
}

impl PulledBack {
    pub fn identity(poly: LaurentPoly) -> Self {
        let n = poly.rank();
        let pullback = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        PulledBack { poly, pullback }
    }

    /// The pullback matrix restricted to the coordinates `coords`.
    pub fn coordinates(poly: LaurentPoly, n: usize, coords: &[usize]) -> Self {
        let pullback = coords.iter().map(|&c| (0..n).map(|j| (j == c) as i64).collect()).collect();
        PulledBack { poly, pullback }
    }
}

/// Finitely many pulled-back hypersurfaces in a common torus of rank `n`;
/// tropically their prevariety is the intersection of the preimages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub rank: usize,
    pub constraints: Vec<PulledBack>,
}

impl ConstraintSystem {
    pub fn new(rank: usize, constraints: Vec<PulledBack>) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::InvalidArgument("a system needs at least one polynomial".into()));
        }
        let field = constraints[0].poly.field();
        for k in &constraints {
            k.poly.require_hypersurface()?;
            if k.poly.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: k.poly.field().to_string(),
                });
            }
            if k.pullback.len() != k.poly.rank() {
                return Err(Error::DimensionMismatch { expected: k.poly.rank(), found: k.pullback.len() });
            }
            if let Some(row) = k.pullback.iter().find(|r| r.len() != rank) {
                return Err(Error::DimensionMismatch { expected: rank, found: row.len() });
            }
        }
        Ok(ConstraintSystem { rank, constraints })
    }

    pub fn hypersurface(f: LaurentPoly) -> Result<Self> {
        let n = f.rank();
        Self::new(n, vec![PulledBack::identity(f)])
    }

    pub fn field(&self) -> Field {
        self.constraints[0].poly.field()
    }

    /// The single polynomial of a one-constraint system with identity
    /// pullback.
    pub fn as_hypersurface(&self) -> Option<&LaurentPoly> {
        match self.constraints.as_slice() {
            [k] if k == &PulledBack::identity(k.poly.clone()) => Some(&k.poly),
            _ => None,
        }
    }

    pub fn bad_places(&self) -> BTreeSet<Place> {
        self.constraints.iter().flat_map(|k| k.poly.bad_places()).collect()
    }

    /// Polynomials in the ambient variables `x_1..x_n`.
    pub fn pulled_back_polys(&self) -> Result<Vec<LaurentPoly>> {
        self.constraints.iter().map(|k| k.poly.pull_back(&k.pullback)).collect()
    }

    pub fn prevariety(&self, place: &Place) -> Result<PolyhedralComplex> {
        prevariety(self, place)
    }

    pub fn adelic_amoeba(&self) -> Result<AdelicAmoeba> {
        let generic = self.prevariety(&Place::Generic)?;
        let mut special = BTreeMap::new();
        for p in self.bad_places() {
            special.insert(p.clone(), self.prevariety(&p)?);
        }
        Ok(AdelicAmoeba { generic, special, system: self.clone() })
    }
}

fn to_int_rows(m: &[Vec<i64>]) -> IntRows {
    lattice::from_i64(m)
}

/// Intersection over the constraints of the preimages of their tropical
/// hypersurfaces, as inclusion-maximal nonempty cells.
pub fn prevariety(system: &ConstraintSystem, place: &Place) -> Result<PolyhedralComplex> {
    let n = system.rank;
    let mut acc: Option<PolyhedralComplex> = None;
    for k in &system.constraints {
        let trop = trop_hypersurface(&k.poly, place)?;
        let pulled = trop.preimage(&to_int_rows(&k.pullback), n)?;
        acc = Some(match acc {
            None => pulled,
            Some(prev) => {
                let mut cells = Vec::new();
                for a in prev.cells() {
                    for b in pulled.cells() {
                        let p = a.polyhedron.intersect(&b.polyhedron);
                        if p.is_empty() {
                            continue;
                        }
                        let mut tie_sets = a.tie_sets.clone();
                        tie_sets.extend(b.tie_sets.iter().cloned());
                        cells.push(Cell { polyhedron: p, tie_sets, multiplicity: 1 });
                    }
                }
                PolyhedralComplex::new(n, cells).keep_maximal()
            }
        });
    }
    let out = acc.expect("systems are nonempty");
    Ok(out.keep_maximal().canonical())
}

/// One generic complex plus special complexes at the bad places; the
/// archimedean component is answered on demand from `system`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdelicAmoeba {
    pub generic: PolyhedralComplex,
    pub special: BTreeMap<Place, PolyhedralComplex>,
    pub system: ConstraintSystem,
}

impl AdelicAmoeba {
    pub fn rank(&self) -> usize {
        self.system.rank
    }

    pub fn field(&self) -> Field {
        self.system.field()
    }

    /// All nonarchimedean components, generic first.
    pub fn components(&self) -> Vec<(Place, &PolyhedralComplex)> {
        let mut out = vec![(Place::Generic, &self.generic)];
        out.extend(self.special.iter().map(|(p, c)| (p.clone(), c)));
        out
    }

    /// The complex in force at `place` (generic when `place` is good).
    pub fn at(&self, place: &Place) -> &PolyhedralComplex {
        self.special.get(place).unwrap_or(&self.generic)
    }
}

#[derive(Serialize)]
struct SpecialEntry<'a> {
    place: &'a Place,
    complex: &'a PolyhedralComplex,
}

impl Serialize for AdelicAmoeba {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AdelicAmoeba", 2)?;
        st.serialize_field("generic", &self.generic)?;
        let special: Vec<SpecialEntry> =
            self.special.iter().map(|(place, complex)| SpecialEntry { place, complex }).collect();
        st.serialize_field("special", &special)?;
        st.end()
    }
}

pub fn adelic_amoeba(f: &LaurentPoly) -> Result<AdelicAmoeba> {
    ConstraintSystem::hypersurface(f.clone())?.adelic_amoeba()
}

/// Complex of closed rays from `base` (a common vertex) in the given
/// directions, plus an optional bounded segment; handy for building
/// expected answers.
pub fn rays_complex(base: &[Rational], dirs: &[Vec<i64>]) -> PolyhedralComplex {
    let cells = dirs
        .iter()
        .map(|d| Cell {
            polyhedron: Polyhedron::ray(base, &d.iter().map(|&x| qint(x)).collect::<QVec>()),
            tie_sets: Vec::new(),
            multiplicity: 1,
        })
        .collect();
    PolyhedralComplex::new(base.len(), cells)
}

/// Shifts `c_i` by `<u_i, w>`; the corner locus moves by `-w`.
pub fn shifted_data(exponents: &[Vec<i64>], c: &[Rational], w: &[Rational]) -> Vec<Rational> {
    exponents
        .iter()
        .zip(c)
        .map(|(u, ci)| u.iter().zip(w).fold(ci.clone(), |acc, (&k, x)| acc + x * qint(k)))
        .collect()
}

/// The closed segment between two points.
pub fn segment(a: &[Rational], b: &[Rational]) -> Polyhedron {
    let dir: QVec = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let mut p = Polyhedron::ray(a, &dir);
    let neg_end = Polyhedron::ray(b, &dir.iter().map(|x| -x).collect::<QVec>());
    p = p.intersect(&neg_end);
    p
}

/// The origin of `R^n`.
pub fn origin(n: usize) -> QVec {
    zeros(n)
}

/// `v` scaled by a positive integer.
pub fn scaled(v: &[i64], k: i64) -> QVec {
    v.iter().map(|&x| qint(x * k)).collect()
}

/// Integer identity matrix.
pub fn identity(n: usize) -> IntRows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::from(0) }).collect())
        .collect()
}
