mod common;

use amoeba_core::scalars::{
    log_abs, product_formula_exact, product_formula_residual, support_places, valuation, Field, Place, Rational,
    Scalar,
};
use common::*;
use num_traits::{One, Signed};
use proptest::prelude::*;

/// A handful of places of each field, including ones outside the support
/// of typical inputs.
fn places(field: Field) -> Vec<Place> {
    match field {
        Field::Rationals => [2, 3, 5, 7, 11, 13, 101].iter().map(|&p| Place::prime(p).unwrap()).collect(),
        Field::FunctionField => ["q:z", "q:z-1", "q:z+1", "q:z^2+1", "q:z-2", "q:z-5", "inf"]
            .iter()
            .map(|p| place(p))
            .collect(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn valuation_is_additive_over_q(a in rational_scalar(), b in rational_scalar()) {
        for p in places(Field::Rationals) {
            prop_assert_eq!(valuation(&a.mul(&b), &p).unwrap(), valuation(&a, &p).unwrap() + valuation(&b, &p).unwrap());
        }
    }

    #[test]
    fn valuation_is_additive_over_qz(a in function_field_scalar(), b in function_field_scalar()) {
        for p in places(Field::FunctionField) {
            prop_assert_eq!(valuation(&a.mul(&b), &p).unwrap(), valuation(&a, &p).unwrap() + valuation(&b, &p).unwrap());
        }
    }

    #[test]
    fn product_formula_is_exact_for_functions(a in function_field_scalar()) {
        let Scalar::Function(f) = &a else { unreachable!() };
        prop_assert_eq!(product_formula_exact(f).unwrap(), 0);
        prop_assert_eq!(product_formula_residual(&a).unwrap(), 0.0);
    }

    #[test]
    fn product_formula_holds_for_rationals(a in rational_scalar()) {
        prop_assert!(product_formula_residual(&a).unwrap().abs() < 1e-9);
    }

    #[test]
    fn log_abs_vanishes_off_support(a in prop_oneof![rational_scalar(), function_field_scalar()]) {
        let support = support_places(std::slice::from_ref(&a)).unwrap();
        for p in places(a.field()) {
            if !support.contains(&p) {
                prop_assert_eq!(log_abs(&a, &p).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn units_everywhere_are_plus_minus_one(n in nonzero_int(30), d in 1i64..30) {
        let r = rat(n, d);
        let a = Scalar::Rational(r.clone());
        let all_zero = support_places(std::slice::from_ref(&a)).unwrap().is_empty();
        let unit_abs = log_abs(&a, &Place::Archimedean).unwrap() == 0.0;
        prop_assert_eq!(r.abs().is_one(), all_zero && unit_abs);
    }
}

#[test]
fn sign_does_not_affect_valuation() {
    let a = Scalar::Rational(Rational::from_integer((-12).into()));
    assert_eq!(valuation(&a, &Place::prime(2).unwrap()).unwrap(), 2);
    assert_eq!(valuation(&a, &Place::prime(3).unwrap()).unwrap(), 1);
    assert!(log_abs(&a, &Place::Archimedean).unwrap().is_sign_negative());
}
