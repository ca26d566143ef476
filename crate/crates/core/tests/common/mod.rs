//! Shared corpus and generators for the integration tests.
#![allow(dead_code)]

use amoeba_core::laurent::LaurentPoly;
use amoeba_core::polyhedral::linalg::QVec;
use amoeba_core::scalars::{Field, Place, Rational, Scalar};
use proptest::prelude::*;

pub fn q(text: &str, n: usize) -> LaurentPoly {
    LaurentPoly::parse(text, n, Field::Rationals).unwrap()
}

pub fn qz(text: &str, n: usize) -> LaurentPoly {
    LaurentPoly::parse(text, n, Field::FunctionField).unwrap()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn place(text: &str) -> Place {
    text.parse().unwrap()
}

/// Named hypersurfaces used across the suites.
pub fn corpus() -> Vec<(&'static str, LaurentPoly)> {
    vec![
        ("tripod over Q(z)", qz("z*x1 + (z-1)*x2 + (z-2)", 2)),
        ("pinched conic", q("x1*x2 - 2*x1 - 2*x2 + 1", 2)),
        ("line", q("x1 + x2 + 1", 2)),
        ("boundary line", q("x1 + x2 - 2", 2)),
        ("torsion binomial", q("x1*x2^2 - 1", 2)),
        ("laurent quadrilateral", q("x1^-1 + x2 + 2*x1*x2^-1 + 4", 2)),
        ("collinear exponents", q("x1^2*x2^2 + 3*x1*x2 + 2", 2)),
        ("conic over Q(z)", qz("(z^2+1)*x1^2 + z*x2 + 1/z", 2)),
        ("cubic", q("x1^3 + x2^3 + 6*x1*x2 + 12", 2)),
        ("plane in 3-space", q("x1 + x2 + x3 + 1", 3)),
        ("surface over Q(z)", qz("z*x1*x2*x3 + (z^2+1)*x1 + x2 + (z-3)", 3)),
        ("dyadic surface", q("4*x1^2 + x2*x3 + 2*x3^-1 + 1/8", 3)),
    ]
}

/// Generic plus every bad place of `f`.
pub fn places_of(f: &LaurentPoly) -> Vec<Place> {
    let mut out = vec![Place::Generic];
    out.extend(f.bad_places());
    out
}

const Z_FACTORS: [&str; 5] = ["z", "z-1", "z+1", "z^2+1", "z-2"];

/// `c * prod f_k^{e_k}` over a few irreducibles in z.
pub fn function_scalar(c: i64, exps: &[i32]) -> Scalar {
    let mut s = Scalar::from_rational_in(Rational::from_integer(c.into()), Field::FunctionField);
    for (f, &e) in Z_FACTORS.iter().zip(exps) {
        let base = Scalar::parse(f, Field::FunctionField).unwrap();
        for _ in 0..e.unsigned_abs() {
            s = if e > 0 { s.mul(&base) } else { s.div(&base) };
        }
    }
    s
}

pub fn nonzero_int(bound: i64) -> impl Strategy<Value = i64> {
    (1..=bound, any::<bool>()).prop_map(|(k, neg)| if neg { -k } else { k })
}

pub fn rational_scalar() -> impl Strategy<Value = Scalar> {
    (nonzero_int(1_000_000), 1i64..1_000_000).prop_map(|(n, d)| Scalar::Rational(rat(n, d)))
}

pub fn function_field_scalar() -> impl Strategy<Value = Scalar> {
    (nonzero_int(9), prop::collection::vec(-2i32..=2, 5)).prop_map(|(c, e)| function_scalar(c, &e))
}

/// Small nonzero rationals `n / d`.
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (nonzero_int(12), 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn exponent_sets(n: usize, max_terms: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set(prop::collection::vec(-2i64..=2, n), 2..=max_terms)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
}

/// Random hypersurfaces over Q in rank `n` with at most `max_terms` terms.
pub fn poly_q(n: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    exponent_sets(n, max_terms).prop_flat_map(move |exps| {
        let k = exps.len();
        prop::collection::vec(small_rational(), k).prop_map(move |cs| {
            let terms = exps.iter().cloned().zip(cs.into_iter().map(Scalar::Rational)).collect();
            LaurentPoly::new(n, Field::Rationals, terms).unwrap()
        })
    })
}

/// Random hypersurfaces over Q(z).
pub fn poly_qz(n: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    exponent_sets(n, max_terms).prop_flat_map(move |exps| {
        let k = exps.len();
        prop::collection::vec(function_field_scalar(), k).prop_map(move |cs| {
            let terms = exps.iter().cloned().zip(cs).collect();
            LaurentPoly::new(n, Field::FunctionField, terms).unwrap()
        })
    })
}

/// Random hypersurfaces over either field, rank 2 or 3.
pub fn poly_any() -> impl Strategy<Value = LaurentPoly> {
    prop_oneof![poly_q(2, 5), poly_qz(2, 5), poly_q(3, 4), poly_qz(3, 4)]
}

pub fn rational_point(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec((-12i64..=12, 1i64..=4).prop_map(|(a, b)| rat(a, b)), n)
}

/// One place from generic plus the bad places, chosen by `k`.
pub fn pick_place(f: &LaurentPoly, k: usize) -> Place {
    let ps = places_of(f);
    ps[k % ps.len()].clone()
}
