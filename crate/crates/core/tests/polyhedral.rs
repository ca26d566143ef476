mod common;

use amoeba_core::polyhedral::lattice::from_i64;
use amoeba_core::polyhedral::linalg::{self, dot, ints_to_q, QVec};
use amoeba_core::polyhedral::lp::LpOutcome;
use amoeba_core::polyhedral::{Constraint, Polyhedron, Sense};
use amoeba_core::scalars::Rational;
use amoeba_core::tropical::trop_hypersurface;
use common::*;
use proptest::prelude::*;

fn constraint() -> impl Strategy<Value = (Vec<i64>, i64)> + Clone {
    (prop::collection::vec(-3i64..=3, 1..=3), -4i64..=6)
}

/// `[-5, 5]^n` plus the given rows, truncated to the ambient rank.
fn boxed(n: usize, rows: &[(Vec<i64>, i64)]) -> Polyhedron {
    let mut ineqs = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut e = vec![0; n];
            e[i] = s;
            ineqs.push(Constraint::from_ints(&e, rat(5, 1)));
        }
    }
    for (row, b) in rows {
        let mut r = row.clone();
        r.resize(n, 0);
        if r.iter().any(|&x| x != 0) {
            ineqs.push(Constraint::from_ints(&r, rat(*b, 1)));
        }
    }
    Polyhedron::new(n, Vec::new(), ineqs).unwrap()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (0..m)
        .flat_map(|first| {
            subsets(m, k - 1)
                .into_iter()
                .filter(move |rest| rest.first().is_none_or(|&r| r > first))
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Feasible vertices by solving every square subsystem of tight
/// inequalities.
fn vertices(p: &Polyhedron) -> Vec<QVec> {
    let n = p.rank();
    let cons = p.inequalities();
    let mut out: Vec<QVec> = Vec::new();
    for s in subsets(cons.len(), n) {
        let m: Vec<QVec> = s.iter().map(|&i| cons[i].normal.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
        let Some(inv) = linalg::inverse(&m) else { continue };
        let rhs: QVec = s.iter().map(|&i| cons[i].rhs.clone()).collect();
        let x: QVec = inv.iter().map(|row| dot(row, &rhs)).collect();
        if p.contains(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn lp_matches_vertex_enumeration(
        rows2 in prop::collection::vec(constraint(), 0..=4),
        rows3 in prop::collection::vec(constraint(), 0..=2),
        obj in prop::collection::vec(-4i64..=4, 3),
    ) {
        for (n, rows) in [(2, &rows2), (3, &rows3)] {
            let p = boxed(n, rows);
            let c = ints_to_q(&obj[..n]);
            let vs = vertices(&p);
            match p.lp_solve(&c, Sense::Maximize).unwrap() {
                LpOutcome::Optimal { value, point } => {
                    prop_assert!(p.contains(&point));
                    let best = vs.iter().map(|v| dot(&c, v)).max().expect("bounded and nonempty");
                    prop_assert_eq!(value, best);
                }
                LpOutcome::Infeasible(farkas) => {
                    prop_assert!(vs.is_empty());
                    prop_assert!(farkas.certifies(&p.system()));
                }
                LpOutcome::Unbounded { .. } => prop_assert!(false, "box is bounded"),
            }
        }
    }

    #[test]
    fn dimension_is_monotone(rows in prop::collection::vec(constraint(), 0..=4), extra in constraint()) {
        let p = boxed(3, &rows);
        let mut q = p.clone();
        let mut r = extra.0.clone();
        r.resize(3, 0);
        if r.iter().any(|&x| x != 0) {
            q.add_inequality(Constraint::from_ints(&r, rat(extra.1, 1)));
            q.add_equality(Constraint::from_ints(&r, rat(extra.1, 1)));
        }
        prop_assert!(q.dimension() <= p.dimension());
        prop_assert!(q.is_subset_of(&p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn project_undoes_preimage(
        phi in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2),
        rows in prop::collection::vec(constraint(), 1..=3),
        eq in prop::option::of(constraint()),
    ) {
        let phi_q: Vec<QVec> = phi.iter().map(|r| ints_to_q(r)).collect();
        prop_assume!(linalg::rank(&phi_q, 3) == 2);
        let ineqs = rows
            .iter()
            .filter_map(|(r, b)| {
                let mut r = r.clone();
                r.resize(2, 0);
                r.iter().any(|&x| x != 0).then(|| Constraint::from_ints(&r, rat(*b, 1)))
            })
            .collect();
        let eqs = eq
            .iter()
            .filter_map(|(r, b)| {
                let mut r = r.clone();
                r.resize(2, 0);
                r.iter().any(|&x| x != 0).then(|| Constraint::from_ints(&r, rat(*b, 1)))
            })
            .collect();
        let p = Polyhedron::new(2, eqs, ineqs).unwrap();
        let phi = from_i64(&phi);
        let back = p.preimage(&phi, 3).unwrap().project(&phi).unwrap();
        prop_assert!(back.same_set(&p), "{:?} vs {:?}", back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_tropicalizations_balance(f in poly_any(), k in any::<usize>()) {
        let t = trop_hypersurface(&f, &pick_place(&f, k)).unwrap();
        let report = t.balancing();
        prop_assert!(report.is_balanced(), "{}", f);
    }
}

#[test]
fn corpus_tropicalizations_balance() {
    for (name, f) in corpus() {
        for p in places_of(&f) {
            let t = trop_hypersurface(&f, &p).unwrap();
            let report = t.balancing();
            assert!(report.is_balanced(), "{name} at {p}");
            if f.rank() >= 2 && t.len() > 1 {
                assert!(!report.ridges.is_empty() || f.rank() == 2, "{name} at {p}");
            }
        }
    }
}
