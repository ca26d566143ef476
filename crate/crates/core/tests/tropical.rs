mod common;

use amoeba_core::polyhedral::linalg::{ints_to_q, QVec};
use amoeba_core::scalars::{Place, Scalar};
use amoeba_core::tropical::{
    corner_locus, psi, psi_with, trop_hypersurface, tropical_data, shifted_data, ConstraintSystem, PulledBack,
};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn membership_matches_argmin(f in poly_any(), k in any::<usize>(), pts in prop::collection::vec(rational_point(3), 20)) {
        let p = pick_place(&f, k);
        let t = trop_hypersurface(&f, &p).unwrap();
        let n = f.rank();
        let mut probes: Vec<QVec> = pts.into_iter().map(|v| v[..n].to_vec()).collect();
        probes.extend(t.cells().iter().filter_map(|c| c.polyhedron.relint_point()));
        for v in probes {
            let (_, argmin) = psi(&f, &p, &v).unwrap();
            prop_assert_eq!(t.contains(&v), argmin.len() >= 2, "{} at {} v={:?}", f, p, v);
        }
    }

    #[test]
    fn hypersurfaces_are_pure(f in poly_any(), k in any::<usize>()) {
        let t = trop_hypersurface(&f, &pick_place(&f, k)).unwrap();
        prop_assert!(!t.is_empty());
        for c in t.cells() {
            prop_assert_eq!(c.polyhedron.dimension(), f.rank() as i64 - 1);
            prop_assert!(c.multiplicity >= 1);
        }
    }

    #[test]
    fn shifting_data_translates(f in poly_any(), k in any::<usize>(), w in rational_point(3)) {
        let w = &w[..f.rank()];
        let e = f.exponents();
        let c = tropical_data(&f, &pick_place(&f, k)).unwrap();
        let moved = corner_locus(&e, &shifted_data(&e, &c, w));
        let neg: QVec = w.iter().map(|x| -x).collect();
        prop_assert!(moved.same_set(&corner_locus(&e, &c).translate(&neg)));
    }

    #[test]
    fn off_locus_minimizers_are_vertices(f in poly_any(), pts in prop::collection::vec(rational_point(3), 20)) {
        let np = f.newton_polytope();
        let e = f.exponents();
        let zero = vec![rat(0, 1); e.len()];
        for v in pts {
            let (_, argmin) = psi_with(&e, &zero, &v[..f.rank()]);
            if argmin.len() == 1 {
                prop_assert!(np.is_vertex(argmin[0]));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Pulling back along a surjective monomial map pulls back the
    /// tropicalization.
    #[test]
    fn pullback_commutes_with_tropicalization(
        f in prop_oneof![poly_q(2, 4), poly_qz(2, 4)],
        psi_rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2),
        k in any::<usize>(),
    ) {
        let rows: Vec<QVec> = psi_rows.iter().map(|r| ints_to_q(r)).collect();
        prop_assume!(amoeba_core::polyhedral::linalg::rank(&rows, 3) == 2);
        let system = ConstraintSystem::new(3, vec![PulledBack { poly: f.clone(), pullback: psi_rows.clone() }]).unwrap();
        let g = f.pull_back(&psi_rows).unwrap();
        let p = pick_place(&f, k);
        let direct = trop_hypersurface(&g, &p).unwrap();
        prop_assert!(system.prevariety(&p).unwrap().same_set(&direct), "{} along {:?} at {}", f, psi_rows, p);
    }
}

#[test]
fn vertex_count_matches_complement() {
    // Every vertex of the Newton polytope is the unique minimizer along its
    // own half line, so the complement has one region per vertex.
    for (name, f) in corpus() {
        let np = f.newton_polytope();
        let lines = amoeba_core::classify::vertex_halflines(&f).unwrap();
        assert_eq!(lines.len(), np.vertex_indices.len(), "{name}");
        let zero = vec![rat(0, 1); f.len()];
        for l in lines {
            let (_, argmin) = psi_with(&f.exponents(), &zero, &ints_to_q(&l.direction));
            assert_eq!(argmin, vec![l.term], "{name}");
        }
    }
}

#[test]
fn generic_place_ignores_coefficients() {
    for (name, f) in corpus() {
        let ones = f.scale(&Scalar::from_int(1).div(&f.coefficients()[0]).coerce(f.field()).unwrap()).unwrap();
        let a = trop_hypersurface(&f, &Place::Generic).unwrap();
        let b = trop_hypersurface(&ones, &Place::Generic).unwrap();
        assert!(a.same_set(&b), "{name}");
        assert!(a.contains_zero(), "{name}");
    }
}
