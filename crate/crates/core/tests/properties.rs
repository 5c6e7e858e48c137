use std::sync::Arc;

use keypoly::algebra::json::{from_json_str, to_json_string};
use keypoly::algebra::rational::{rat, Rational};
use keypoly::algebra::{BiPoly, QuotientElem, RatFunc, UniPoly, Var};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..5, 0u32..4), small_rat()), 0..7).prop_map(BiPoly::from_terms)
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rat(), 0..4).prop_map(UniPoly::new)
}

fn elem(g: Arc<UniPoly>) -> impl Strategy<Value = QuotientElem> {
    (unipoly(), unipoly()).prop_map(move |(a, b)| {
        QuotientElem::new(RatFunc::from_poly(a), RatFunc::from_poly(b), g.clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in bipoly(), b in bipoly(), c in bipoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz(a in bipoly(), b in bipoly()) {
        for v in [Var::X, Var::Lambda] {
            let lhs = (&a * &b).derivative(v);
            let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn swap_is_an_involution(a in bipoly()) {
        prop_assert_eq!(a.swap_vars().swap_vars(), a.clone());
        let d = a.total_degree().unwrap_or(0) + 2;
        let h = a.homogenize_swap(d).unwrap();
        prop_assert_eq!(h.homogenize_swap(d).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in bipoly(), b in bipoly(), x in small_rat(), l in small_rat()) {
        prop_assert_eq!((&a * &b).eval(&x, &l), a.eval(&x, &l) * b.eval(&x, &l));
        prop_assert_eq!(a.translate(&x, &l).eval(&Rational::from_integer(0.into()), &Rational::from_integer(0.into())), a.eval(&x, &l));
    }

    #[test]
    fn json_round_trip(a in bipoly()) {
        prop_assert_eq!(from_json_str(&to_json_string(&a)).unwrap(), a);
    }

    #[test]
    fn exact_division(a in bipoly(), b in bipoly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }
}

fn modulus() -> Arc<UniPoly> {
    // x(x - 1)(x - 2)
    Arc::new(UniPoly::new(vec![rat(0, 1), rat(2, 1), rat(-3, 1), rat(1, 1)]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quotient_ring_associative(a in elem(modulus()), b in elem(modulus()), c in elem(modulus())) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn quotient_derivation(a in elem(modulus()), b in elem(modulus())) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }
}
