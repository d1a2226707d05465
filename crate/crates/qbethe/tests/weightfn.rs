use std::sync::Arc;

use qbethe::combinat::{coeff_eta, TypedVariables};
use qbethe::repr::{build_module, Module, Sign};
use qbethe::weightfn::*;
use qbethe::{Error, Rational, ScalarContext, Variant};

fn ctx(seed: u64) -> ScalarContext {
    ScalarContext::new(ScalarContext::default_q(), seed).unwrap()
}

fn module(c: &ScalarContext, n: usize, v: Variant, recipe: &str) -> Arc<Module> {
    build_module(c, n, v, recipe).unwrap()
}

fn sample(c: &ScalarContext, m: &Module, counts: &[usize], stream: u64) -> TypedVariables {
    TypedVariables::sample(c, counts, &m.evaluation_points(), stream)
}

#[test]
fn empty_excitations_give_singular_vector() {
    let c = ctx(1);
    for v in Variant::ALL {
        let m = module(&c, 3, v, "tensor(vec@2,vec@-5/3)");
        let t = TypedVariables::new(vec![vec![], vec![]]);
        assert_eq!(&direct_modified_weight(&c, &m, &t).unwrap(), m.singular_vector());
        assert_eq!(&recurrence_modified_weight(&c, &m, &t).unwrap(), m.singular_vector());
    }
}

#[test]
fn single_twisted_excitation_is_one_l_entry() {
    let c = ctx(2);
    let m = module(&c, 2, Variant::Twisted, "vec@3/2");
    let t = Rational::new(7, 5);
    let w = direct_modified_weight(&c, &m, &TypedVariables::new(vec![vec![t.clone()]])).unwrap();
    let expected = m.l_entry(Sign::Plus, 0, 1, &t).unwrap().apply(m.singular_vector());
    assert_eq!(w, expected);
    assert!(!w.is_zero());
}

#[test]
fn request_validation() {
    let c = ctx(3);
    let m = module(&c, 3, Variant::Original, "vec@2");
    let t = TypedVariables::new(vec![vec![Rational::new(3, 4)]]);
    assert!(matches!(
        WeightRequest::new(Arc::clone(&m), t.clone(), Variant::Original, Method::Direct),
        Err(Error::Length(_))
    ));
    let t2 = TypedVariables::new(vec![vec![Rational::new(3, 4)], vec![]]);
    assert!(matches!(
        WeightRequest::new(Arc::clone(&m), t2.clone(), Variant::Twisted, Method::Direct),
        Err(Error::Variant(_))
    ));
    assert!(matches!(tv_weight(&c, &m, &t2), Err(Error::Variant(_))));
    let req = WeightRequest::new(m, t2, Variant::Original, Method::Recurrence).unwrap();
    let res = compute(&c, &req).unwrap();
    assert_eq!(res.meta.method, Method::Recurrence);
}

#[test]
fn direct_matches_recurrence() {
    let c = ctx(4);
    let cases: &[(usize, &str, &[usize])] = &[
        (2, "tensor(vec@2,vec@-5/3)", &[2]),
        (3, "tensor(vec@2,vec@-5/3)", &[1, 1]),
        (3, "tensor(vec@2,vec@-5/3,vec@7/4)", &[2, 1]),
        (4, "tensor(vec@2,vec@-5/3)", &[1, 1, 1]),
    ];
    for v in Variant::ALL {
        for &(n, recipe, counts) in cases {
            let m = module(&c, n, v, recipe);
            let t = sample(&c, &m, counts, 17);
            assert!(check_method_agreement(&c, &m, &t).unwrap(), "{v} {recipe} {counts:?}");
        }
    }
}

#[test]
fn twisted_trace_coincides_with_direct_up_to_eta() {
    let c = ctx(5);
    let m = module(&c, 3, Variant::Twisted, "tensor(vec@2,vec@-5/3)");
    for counts in [[1usize, 1], [2, 1], [1, 2]] {
        let t = sample(&c, &m, &counts, 23);
        assert!(check_coincidence(&c, &m, &t).unwrap(), "{counts:?}");
    }
    let m1 = module(&c, 2, Variant::Twisted, "vec@2");
    let t = TypedVariables::new(vec![vec![Rational::new(5, 9)]]);
    assert_eq!(coeff_eta(&c, &t).unwrap(), Rational::one());
    assert_eq!(tv_weight(&c, &m1, &t).unwrap(), direct_modified_weight(&c, &m1, &t).unwrap());
}

#[test]
fn coproduct_on_vector_modules() {
    let c = ctx(6);
    for v in Variant::ALL {
        let a = module(&c, 3, v, "vec@2");
        let b = module(&c, 3, v, "vec@-5/3");
        for counts in [[1usize, 0], [0, 1], [1, 1], [2, 1]] {
            let t = sample(&c, &a, &counts, 31);
            assert!(check_coproduct(&c, &a, &b, &t).unwrap(), "{v} {counts:?}");
        }
    }
}

#[test]
fn coproduct_three_factors() {
    let c = ctx(7);
    for v in Variant::ALL {
        let a = module(&c, 2, v, "vec@2");
        let b = module(&c, 2, v, "vec@-5/3");
        let d = module(&c, 2, v, "vec@7/4");
        let t = sample(&c, &a, &[2], 37);
        assert!(check_coproduct_associativity(&c, &a, &b, &d, &t).unwrap(), "{v}");
    }
}

#[test]
fn qsymmetry_for_all_permutations() {
    let c = ctx(8);
    for v in Variant::ALL {
        let m = module(&c, 2, v, "tensor(vec@2,vec@-5/3,vec@7/4)");
        let t = sample(&c, &m, &[3], 41);
        for sigma in qbethe::combinat::permutations(3) {
            assert!(check_qsymmetry(&c, &m, &t, std::slice::from_ref(&sigma)).unwrap(), "{v} {sigma:?}");
        }
    }
}

#[test]
fn plain_modified_round_trip() {
    let c = ctx(9);
    let m = module(&c, 3, Variant::Original, "tensor(vec@2,vec@-5/3)");
    let t = sample(&c, &m, &[1, 1], 43);
    let w = direct_modified_weight(&c, &m, &t).unwrap();
    let p = plain_from_modified(&c, &m, &t, &w).unwrap();
    assert_eq!(modified_from_plain(&c, &m, &t, &p).unwrap(), w);
}

#[test]
fn generator_form_matches_direct() {
    let c = ctx(10);
    for v in Variant::ALL {
        for (n, recipe, counts) in [
            (2usize, "vec@3/2", vec![1usize]),
            (3, "vec@3/2", vec![1, 1]),
            (4, "vec@3/2", vec![1, 1, 1]),
            (2, "verma2(5,1,4,3/2)", vec![2]),
            (2, "verma2(-2,1,5,-7/3)", vec![3]),
        ] {
            let m = module(&c, n, v, recipe);
            let t = sample(&c, &m, &counts, 47);
            let d = direct_modified_weight(&c, &m, &t).unwrap();
            let g = generator_weight(&c, &m, &t).unwrap();
            assert_eq!(d, g, "{v} {recipe} {counts:?}");
        }
    }
}

#[test]
fn truncation_overflow_is_reported() {
    let c = ctx(11);
    let m = module(&c, 2, Variant::Original, "verma2(5,1,2,3/2)");
    let t = sample(&c, &m, &[3], 53);
    assert!(matches!(direct_modified_weight(&c, &m, &t), Err(Error::Truncation(_))));
    assert!(matches!(generator_weight(&c, &m, &t), Err(Error::Truncation(_))));
}
