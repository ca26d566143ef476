mod common;

use amoeba_core::classify::{
    halfline_disjoint_fast, halfspace_meets_complex, quotient_map, theorem1_report, torsion_coset_test,
    vertex_halflines, Halfspace, HalflineVerdict, ScanOptions, Theorem1Status,
};
use amoeba_core::laurent::LaurentPoly;
use amoeba_core::polyhedral::linalg::{self, ints_to_q, QVec};
use amoeba_core::scalars::{Field, Scalar};
use amoeba_core::tropical::{trop_hypersurface, ConstraintSystem};
use common::*;
use proptest::prelude::*;

fn direction(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n).prop_filter("nonzero", |d| d.iter().any(|&x| x != 0))
}

fn binomial(exps: (Vec<i64>, Vec<i64>), a: Scalar, b: Scalar) -> Option<LaurentPoly> {
    (exps.0 != exps.1).then(|| LaurentPoly::new(exps.0.len(), Field::Rationals, vec![(exps.0, a), (exps.1, b)]).unwrap())
}

fn exponent_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(-2i64..=2, 2), prop::collection::vec(-2i64..=2, 2))
}

fn no_violation(f: &LaurentPoly, dir: Vec<i64>) -> Result<(), TestCaseError> {
    let system = ConstraintSystem::hypersurface(f.clone()).unwrap();
    let h = Halfspace::half_line(dir.clone()).unwrap();
    let report = theorem1_report(&system, None, &h, &ScanOptions::default()).unwrap();
    prop_assert_ne!(report.status, Theorem1Status::Violation, "{} along {:?}", f, dir);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Wherever the direct criterion applies it agrees with the LP.
    #[test]
    fn fast_path_agrees_with_lp(f in poly_any(), k in any::<usize>(), d in direction(3)) {
        let d = &d[..f.rank()];
        prop_assume!(d.iter().any(|&x| x != 0));
        let p = pick_place(&f, k);
        let c = trop_hypersurface(&f, &p).unwrap();
        let lp = halfspace_meets_complex(&Halfspace::half_line(d.to_vec()).unwrap(), &c).unwrap();
        match halfline_disjoint_fast(&f, &p, &ints_to_q(d)).unwrap() {
            HalflineVerdict::Disjoint => prop_assert!(lp.is_disjoint()),
            HalflineVerdict::Meets { witness, t } => {
                prop_assert!(!lp.is_disjoint());
                prop_assert!(t > rat(0, 1));
                prop_assert!(c.contains(&witness));
            }
            HalflineVerdict::NotRelint => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// `phi` kills the boundary, has a right inverse, and `s phi` is a
    /// projection.
    #[test]
    fn quotient_maps_are_split(b in direction(3), extra in prop::option::of(direction(3)), d in direction(3)) {
        let mut boundary = vec![b];
        boundary.extend(extra);
        let Ok(h) = Halfspace::new(boundary.clone(), d) else { return Ok(()) };
        let q = quotient_map(&h).unwrap();
        let m = q.phi.len();
        prop_assert_eq!(m, 3 - h.boundary_dim());
        for row in &boundary {
            prop_assert!(q.apply(&ints_to_q(row)).iter().all(|x| *x == rat(0, 1)));
        }
        // columns of the right inverse map to the standard basis
        let s: Vec<QVec> = (0..m)
            .map(|j| q.right_inverse.iter().map(|r| rat(0, 1) + amoeba_core::scalars::Rational::from_integer(r[j].clone())).collect())
            .collect();
        for (j, col) in s.iter().enumerate() {
            let image = q.apply(col);
            for (i, x) in image.iter().enumerate() {
                prop_assert_eq!(x.clone(), rat((i == j) as i64, 1));
            }
        }
        // idempotence of s phi on a few points
        for x in [ints_to_q(&[1, 0, 0]), ints_to_q(&[0, 1, 0]), ints_to_q(&[2, -3, 5])] {
            let once = q.apply(&x);
            let lifted: QVec = (0..3).map(|r| (0..m).map(|j| &s[j][r] * &once[j]).sum()).collect();
            prop_assert_eq!(q.apply(&lifted), once);
        }
        prop_assert!(linalg::rank(&q.phi.iter().map(|r| r.iter().map(|x| amoeba_core::scalars::Rational::from_integer(x.clone())).collect()).collect::<Vec<QVec>>(), 3) == m);
    }

    /// Binomials with ratio ±1 have one hyperplane as tropicalization at
    /// every place.
    #[test]
    fn torsion_binomials_are_hyperplanes(e in exponent_pair(), sign in any::<bool>(), c in small_rational()) {
        let a = Scalar::Rational(c.clone());
        let b = Scalar::Rational(if sign { c.clone() } else { -c.clone() });
        let Some(f) = binomial(e, a, b) else { return Ok(()) };
        let t = torsion_coset_test(&f).unwrap();
        prop_assert!(t.is_torsion_coset);
        let normal = t.hyperplane.unwrap();
        let mut places = places_of(&f);
        places.push("p:2".parse().unwrap());
        places.push("p:3".parse().unwrap());
        for p in places {
            let c = trop_hypersurface(&f, &p).unwrap();
            prop_assert_eq!(c.len(), 1);
            let cell = &c.cells()[0].polyhedron;
            prop_assert_eq!(cell.dimension(), 1);
            prop_assert!(cell.contains(&vec![rat(0, 1); 2]));
            let along = vec![rat(-normal[1], 1), rat(normal[0], 1)];
            prop_assert!(cell.contains(&along));
        }
    }

    #[test]
    fn other_ratios_are_not_torsion(e in exponent_pair(), a in small_rational(), b in small_rational()) {
        prop_assume!(a != b && a != -b.clone());
        let Some(f) = binomial(e, Scalar::Rational(a), Scalar::Rational(b)) else { return Ok(()) };
        prop_assert!(!torsion_coset_test(&f).unwrap().is_torsion_coset);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn no_violation_over_function_field(f in poly_qz(2, 5), d in direction(2)) {
        no_violation(&f, d)?;
        for l in vertex_halflines(&f).unwrap() {
            no_violation(&f, l.direction)?;
        }
    }

    #[test]
    fn no_violation_for_rational_binomials(e in exponent_pair(), a in small_rational(), b in small_rational(), d in direction(2)) {
        let Some(f) = binomial(e, Scalar::Rational(a), Scalar::Rational(b)) else { return Ok(()) };
        no_violation(&f, d)?;
        for l in vertex_halflines(&f).unwrap() {
            no_violation(&f, l.direction)?;
        }
    }

    #[test]
    fn no_violation_for_rational_trinomials(f in poly_q(2, 3), d in direction(2)) {
        no_violation(&f, d)?;
    }
}

#[test]
fn corpus_has_no_violation() {
    for (name, f) in corpus() {
        let mut dirs: Vec<Vec<i64>> = vertex_halflines(&f).unwrap().into_iter().map(|l| l.direction).collect();
        for i in 0..f.rank() {
            let mut e = vec![0; f.rank()];
            e[i] = 1;
            dirs.push(e.clone());
            e[i] = -1;
            dirs.push(e);
        }
        for d in dirs {
            let system = ConstraintSystem::hypersurface(f.clone()).unwrap();
            let report = theorem1_report(&system, None, &Halfspace::half_line(d.clone()).unwrap(), &ScanOptions::default())
                .unwrap();
            assert_ne!(report.status, Theorem1Status::Violation, "{name} along {d:?}");
        }
    }
}
