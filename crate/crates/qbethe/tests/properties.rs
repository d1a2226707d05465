use proptest::prelude::*;

use qbethe::combinat::{
    coeff_calz, coeff_calz_factored, coeff_y, coeff_y_alt, enumerate_admissible, pullback_weight, q_symmetrize,
    TypedVariables,
};
use qbethe::repr::build_module;
use qbethe::rmatrix::{build_r, check_unitarity, check_yang_baxter};
use qbethe::weightfn::{check_qsymmetry, direct_modified_weight, modified_from_plain, plain_from_modified};
use qbethe::{Rational, ScalarContext, Variant};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=40).prop_map(|(p, q)| Rational::new(p, q))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn counts(types: usize, max_each: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..=max_each, types)
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Original), Just(Variant::Twisted)]
}

fn ctx(seed: u64) -> ScalarContext {
    ScalarContext::new(ScalarContext::default_q(), seed).unwrap()
}

/// A random permutation of `0..n` drawn from the context's stream.
fn shuffle(n: usize, key: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ctx(key).rng(key));
    p
}

proptest! {
    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in nonzero()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &c) / &c, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn admissible_matrices_are_valid_and_sorted(n in proptest::collection::vec(0usize..=4, 1..=3)) {
        let all = enumerate_admissible(&n);
        prop_assert!(!all.is_empty());
        for s in &all {
            prop_assert_eq!(s.column_sums(), n.clone());
            for b in 1..=n.len() {
                prop_assert!(s.row(b).windows(2).all(|w| w[0] <= w[1]));
            }
        }
        let keys: Vec<Vec<usize>> = all.iter().map(|s| s.row_major()).collect();
        prop_assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn y_forms_agree(k in 0usize..=4, seed in any::<u64>(), twisted in any::<bool>()) {
        let c = ctx(seed);
        let pts = c.sample_generic(2 * k, &[]);
        let (us, vs) = pts.split_at(k);
        let a = coeff_y(&c, us, vs, twisted);
        let b = coeff_y_alt(&c, us, vs, twisted);
        prop_assume!(a.is_ok() && b.is_ok());
        prop_assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn calz_factorizes(n in counts(3, 2), seed in any::<u64>(), twisted in any::<bool>()) {
        let c = ctx(seed);
        let vars = TypedVariables::sample(&c, &n, &[], 7);
        for s in enumerate_admissible(&n) {
            let a = coeff_calz(&c, &s, &vars, twisted);
            let b = coeff_calz_factored(&c, &s, &vars, twisted);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn permuting_moves_each_value_to_its_target(n in counts(2, 4), seed in any::<u64>()) {
        let c = ctx(seed);
        let vars = TypedVariables::sample(&c, &n, &[], 3);
        let sigma: Vec<Vec<usize>> = n.iter().enumerate().map(|(a, &k)| shuffle(k, seed ^ a as u64)).collect();
        let moved = vars.permuted(&sigma).unwrap();
        for (a, s) in sigma.iter().enumerate() {
            for (l, &p) in s.iter().enumerate() {
                prop_assert_eq!(moved.get(a, p), vars.get(a, l));
            }
        }
        let inverse: Vec<Vec<usize>> = sigma
            .iter()
            .map(|s| { let mut inv = vec![0; s.len()]; for (l, &p) in s.iter().enumerate() { inv[p] = l; } inv })
            .collect();
        prop_assert_eq!(moved.permuted(&inverse).unwrap(), vars);
    }

    #[test]
    fn q_symmetrization_is_invariant_under_relabelling(k in 1usize..=3, seed in any::<u64>()) {
        // Sym(G) is symmetric up to the pullback factor: Sym(G)(sigma t) * pullback = Sym(G)(t).
        let c = ctx(seed);
        let vars = TypedVariables::sample(&c, &[k], &[], 5);
        let g = |t: &TypedVariables| -> qbethe::Result<Rational> {
            Ok(t.of_type(0).iter().enumerate().map(|(i, x)| x.pow(i as i64 + 1)).sum())
        };
        let sigma = vec![shuffle(k, seed)];
        let base = q_symmetrize(&c, &vars, Rational::zero(), g).unwrap();
        let moved = q_symmetrize(&c, &vars.permuted(&sigma).unwrap(), Rational::zero(), g).unwrap();
        prop_assert_eq!(moved * pullback_weight(&c, &sigma, &vars).unwrap(), base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn r_matrix_identities(n in 2usize..=3, v in variant(), u in proptest::collection::vec(nonzero(), 3)) {
        prop_assume!(u[0] != u[1] && u[1] != u[2] && u[0] != u[2]);
        let c = ctx(0);
        let r = build_r(&c, v, n, &u[0], &u[1]);
        prop_assume!(r.is_ok());
        prop_assert!(r.unwrap().satisfies_ice_rule());
        if let Ok(held) = check_unitarity(&c, v, n, &u[0], &u[1]) {
            prop_assert!(held);
        }
        if let Ok(held) = check_yang_baxter(&c, v, n, &u[0], &u[1], &u[2]) {
            prop_assert!(held);
        }
    }

    #[test]
    fn plain_modified_round_trip(v in variant(), n in counts(2, 2), seed in 0u64..1000) {
        let c = ctx(seed);
        let z = c.sample_generic(2, &[]);
        let m = build_module(&c, 3, v, &format!("tensor(vec@{},vec@{})", z[0], z[1])).unwrap();
        let vars = TypedVariables::sample(&c, &n, &m.evaluation_points(), 9);
        let w = direct_modified_weight(&c, &m, &vars).unwrap();
        let plain = plain_from_modified(&c, &m, &vars, &w).unwrap();
        prop_assert_eq!(modified_from_plain(&c, &m, &vars, &plain).unwrap(), w);
    }

    #[test]
    fn weight_is_q_symmetric(v in variant(), k in 2usize..=3, seed in 0u64..1000) {
        let c = ctx(seed);
        let z = c.sample_generic(3, &[]);
        let m = build_module(&c, 2, v, &format!("tensor(vec@{},vec@{},vec@{})", z[0], z[1], z[2])).unwrap();
        let vars = TypedVariables::sample(&c, &[k], &m.evaluation_points(), 11);
        let sigma = vec![shuffle(k, seed)];
        prop_assert!(check_qsymmetry(&c, &m, &vars, &sigma).unwrap());
    }
}
