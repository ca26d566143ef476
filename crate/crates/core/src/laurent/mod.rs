//! Laurent polynomials `a_1 x^{u_1} + ... + a_s x^{u_s}` over Q or Q(z).

pub mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyhedral::linalg::{qint, zeros, QVec};
use crate::polyhedral::lp::{self, LinearSystem, LpOutcome, Sense};
use crate::scalars::{self, Field, Place, Rational, Scalar};

pub use parse::{parse_polynomial, parse_scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: Vec<i64>,
    pub coeff: Scalar,
}

/// A Laurent polynomial in canonical form: distinct exponents sorted
/// lexicographically, nonzero coefficients all in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    field: Field,
    terms: Vec<Term>,
}

impl LaurentPoly {
    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining
    /// like terms.
    pub fn new(rank: usize, field: Field, terms: Vec<(Vec<i64>, Scalar)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: e.len() });
            }
            let c = c.coerce(field)?;
            let sum = match map.remove(&e) {
                Some(prev) => prev.add(&c),
                None => c,
            };
            map.insert(e, sum);
        }
        Self::from_terms(rank, field, map)
    }

    pub(crate) fn from_terms(
        rank: usize,
        field: Field,
        terms: BTreeMap<Vec<i64>, Scalar>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("ambient rank must be positive".into()));
        }
        let mut out = Vec::with_capacity(terms.len());
        for (exponent, coeff) in terms {
            if coeff.is_zero() {
                continue;
            }
            out.push(Term { exponent, coeff: coeff.coerce(field)? });
        }
        if out.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(LaurentPoly { rank, field, terms: out })
    }

    pub fn parse(text: &str, rank: usize, field: Field) -> Result<Self> {
        parse_polynomial(text, rank, field)
    }

    /// Shorthand for integer coefficients over Q.
    pub fn from_int_terms(rank: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        let t = terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_int(*c))).collect();
        Self::new(rank, Field::Rationals, t)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn exponents(&self) -> Vec<Vec<i64>> {
        self.terms.iter().map(|t| t.exponent.clone()).collect()
    }

    pub fn coefficients(&self) -> Vec<Scalar> {
        self.terms.iter().map(|t| t.coeff.clone()).collect()
    }

    /// Fails with `MonomialInput` when the zero set in the torus is empty.
    pub fn require_hypersurface(&self) -> Result<()> {
        if self.is_monomial() {
            Err(Error::MonomialInput)
        } else {
            Ok(())
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        let c = c.coerce(self.field)?;
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exponent: t.exponent.clone(), coeff: t.coeff.mul(&c) })
            .collect();
        Ok(LaurentPoly { rank: self.rank, field: self.field, terms })
    }

    /// Divides by the coefficient of the lexicographically smallest exponent.
    pub fn normalize(&self) -> Self {
        let lead = self.terms[0].coeff.clone();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exponent: t.exponent.clone(), coeff: t.coeff.div(&lead) })
            .collect();
        LaurentPoly { rank: self.rank, field: self.field, terms }
    }

    /// Coefficient valuations `ord_p(a_i)`; all zero at the generic place.
    pub fn valuations(&self, place: &Place) -> Result<Vec<i64>> {
        place.check_field(self.field)?;
        self.terms.iter().map(|t| scalars::valuation(&t.coeff, place)).collect()
    }

    /// Finite places where the coefficient valuation vector is not constant.
    pub fn bad_places(&self) -> BTreeSet<Place> {
        let a0 = &self.terms[0].coeff;
        let ratios: Vec<Scalar> = self.terms[1..].iter().map(|t| t.coeff.div(a0)).collect();
        scalars::support_places(&ratios).expect("coefficients are nonzero")
    }

    pub fn newton_polytope(&self) -> NewtonPolytope {
        NewtonPolytope::new(self.exponents())
    }

    /// The polynomial in the variables `y = x^psi`, i.e. exponents `u`
    /// become `u psi` (with `psi` of shape `rank x n`).
    pub fn pull_back(&self, psi: &[Vec<i64>]) -> Result<Self> {
        if psi.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: psi.len() });
        }
        let n = psi.first().map_or(0, Vec::len);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let e = (0..n)
                    .map(|j| t.exponent.iter().zip(psi).map(|(u, row)| u * row[j]).sum())
                    .collect();
                (e, t.coeff.clone())
            })
            .collect();
        LaurentPoly::new(n, self.field, terms)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, t) in self.terms.iter().enumerate() {
            let is_const = t.exponent.iter().all(|&k| k == 0);
            let (neg, body) = match t.coeff.as_rational() {
                Some(r) => (r.is_negative(), r.abs().to_string()),
                None => (false, t.coeff.to_string()),
            };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if is_const {
                f.write_str(&body)?;
            } else {
                if body != "1" {
                    write!(f, "{body}*")?;
                }
                write_monomial(f, &t.exponent)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyDto {
    rank: usize,
    field: Field,
    terms: Vec<TermDto>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyDto {
            rank: self.rank,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|t| TermDto { exp: t.exponent.clone(), coeff: t.coeff.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = PolyDto::deserialize(d)?;
        let mut terms = Vec::with_capacity(dto.terms.len());
        for t in dto.terms {
            let c = Scalar::parse(&t.coeff, dto.field).map_err(serde::de::Error::custom)?;
            terms.push((t.exp, c));
        }
        LaurentPoly::new(dto.rank, dto.field, terms).map_err(serde::de::Error::custom)
    }
}

/// Convex hull data of a finite exponent set.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolytope {
    pub points: Vec<Vec<i64>>,
    pub vertex_indices: Vec<usize>,
    /// For each non-vertex point, weights on `vertex_indices` expressing it
    /// as a convex combination.
    pub certificates: Vec<(usize, Vec<Rational>)>,
}

impl NewtonPolytope {
    pub fn new(points: Vec<Vec<i64>>) -> Self {
        let vertex_indices: Vec<usize> =
            (0..points.len()).filter(|&i| vertex_direction(&points, i).is_some()).collect();
        let certificates = (0..points.len())
            .filter(|i| !vertex_indices.contains(i))
            .map(|i| (i, convex_weights(&points, &vertex_indices, i)))
            .collect();
        NewtonPolytope { points, vertex_indices, certificates }
    }

    pub fn is_vertex(&self, i: usize) -> bool {
        self.vertex_indices.contains(&i)
    }
}

/// A direction `v` with `<u_i, v> < <u_j, v>` for all `j != i`, if `u_i` is
/// a vertex.
pub fn vertex_direction(points: &[Vec<i64>], i: usize) -> Option<QVec> {
    let n = points[i].len();
    // variables (v, eps): <u_i - u_j, v> + eps <= 0, eps <= 1; maximize eps
    let mut sys = LinearSystem::new(n + 1);
    for (j, u) in points.iter().enumerate() {
        if j == i {
            continue;
        }
        let mut row: QVec = points[i].iter().zip(u).map(|(a, b)| qint(a - b)).collect();
        row.push(Rational::one());
        sys.le(row, Rational::zero());
    }
    let mut cap = zeros(n + 1);
    cap[n] = Rational::one();
    sys.le(cap.clone(), Rational::one());
    match lp::solve(&cap, &sys, Sense::Maximize) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(n);
            Some(point)
        }
        _ => None,
    }
}

fn convex_weights(points: &[Vec<i64>], vertices: &[usize], i: usize) -> Vec<Rational> {
    let n = points[i].len();
    let k = vertices.len();
    let mut sys = LinearSystem::new(k);
    for c in 0..n {
        let row = vertices.iter().map(|&j| qint(points[j][c])).collect();
        sys.eq(row, qint(points[i][c]));
    }
    sys.eq(vec![Rational::one(); k], Rational::one());
    for j in 0..k {
        let mut row = zeros(k);
        row[j] = -Rational::one();
        sys.le(row, Rational::zero());
    }
    lp::feasible_point(&sys).expect("every point lies in the hull of the vertices")
}

/// Lattice length of the segment from `a` to `b`.
pub fn lattice_length(a: &[i64], b: &[i64]) -> u64 {
    let g = a
        .iter()
        .zip(b)
        .fold(BigInt::zero(), |acc, (x, y)| num_integer::Integer::gcd(&acc, &BigInt::from(x - y)));
    u64::try_from(g).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qz(text: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(text, n, Field::FunctionField).unwrap()
    }

    fn q(text: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(text, n, Field::Rationals).unwrap()
    }

    #[test]
    fn normalization() {
        let f = qz("z*x1 + z*x2 + 2*z", 2).normalize();
        assert_eq!(f.to_string(), "1 + 1/2*x2 + 1/2*x1");
        assert_eq!(q("x1 + 1", 1).normalize(), q("x1 + 1", 1));
        assert_eq!(q("7", 1).normalize().to_string(), "1");
    }

    #[test]
    fn newton_polytopes() {
        assert_eq!(q("x1 + x2 + 1", 2).newton_polytope().vertex_indices, vec![0, 1, 2]);
        let line = q("1 + x1 + x1^2", 1).newton_polytope();
        assert_eq!(line.vertex_indices, vec![0, 2]);
        let w = &line.certificates[0].1;
        assert_eq!(w, &vec![Rational::new(1.into(), 2.into()); 2]);
        let ex = q("x1*x2 - 2*x1 - 2*x2 + 1", 2).newton_polytope();
        assert_eq!(ex.vertex_indices.len(), 4);
    }

    #[test]
    fn bad_places() {
        let f = qz("z*x1 + (z-1)*x2 + (z-2)", 2);
        let want: BTreeSet<Place> = [Place::root(0), Place::root(1), Place::root(2)].into();
        assert_eq!(f.bad_places(), want);
        let g = q("x1*x2 - 2*x1 - 2*x2 + 1", 2);
        assert_eq!(g.bad_places(), [Place::prime(2).unwrap()].into());
        assert!(qz("z*x1 + z*x2 + z", 2).bad_places().is_empty());
    }

    #[test]
    fn display_round_trip() {
        for text in [
            "x1^-2*x2 - 3/4*x1 + 5",
            "(z - 1)/(z^2 + 1)*x1*x2 + (z)*x2^3 - 2",
            "-x1 + x2",
        ] {
            let field = if text.contains('z') { Field::FunctionField } else { Field::Rationals };
            let f = LaurentPoly::parse(text, 2, field).unwrap();
            let g = LaurentPoly::parse(&f.to_string(), 2, field).unwrap();
            assert_eq!(f, g, "{f}");
        }
    }

    #[test]
    fn json_round_trip() {
        let f = qz("z*x1 + (z-1)*x2 + (z-2)", 2);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with("{\"rank\":2,\"field\":\"Q(z)\",\"terms\":[{\"exp\":[0,0]"));
        let g: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn pull_back_exponents() {
        let f = q("x1 - x2 - 1", 2);
        let g = f.pull_back(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(g.rank(), 3);
        assert_eq!(g.exponents(), vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 0]]);
    }
}
