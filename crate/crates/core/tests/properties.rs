use num_traits::Signed;
use proptest::prelude::*;

use scdt::field::{rat, QuadExt, Rational};
use scdt::literal::parse_literal;
use scdt::lp::levenshtein_polynomial;
use scdt::orthopoly::gegenbauer_expand;
use scdt::poly::ExactPolynomial;

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=60).prop_map(|(p, q)| rat(p, q))
}

fn element(d: u64) -> impl Strategy<Value = QuadExt> {
    (rational(), rational()).prop_map(move |(p, q)| QuadExt::normalize(p, q, d as i64).unwrap())
}

fn triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(12), Just(30)]
        .prop_flat_map(|d| (element(d), element(d), element(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn conjugation_is_a_homomorphism((a, b, _c) in triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((&a * &a.conj()).is_rational());
    }

    #[test]
    fn sign_agrees_with_interval((a, _b, _c) in triple()) {
        let (lo, hi) = a.bounds(40);
        if lo.is_positive() {
            prop_assert!(a.is_positive());
        }
        if hi.is_negative() {
            prop_assert!(a.is_negative());
        }
        prop_assert!(lo <= hi);
    }

    #[test]
    fn normalize_is_idempotent(p in rational(), q in rational(), d in 1u64..500) {
        let x = QuadExt::normalize(p, q, d as i64).unwrap();
        let again = QuadExt::normalize(x.rat_part().clone(), x.coef().clone(), x.radicand() as i64).unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert_eq!(parse_literal(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn expansion_round_trip(coeffs in prop::collection::vec(element(5), 1..9), n in 2u32..12) {
        let p = ExactPolynomial::new(coeffs);
        let g = gegenbauer_expand(&p, n);
        prop_assert_eq!(g.reconstruct(), p.clone());
        prop_assert_eq!(g.value_at_one(), p.eval(&QuadExt::one()));
    }

    #[test]
    fn levenshtein_vanishes_at_r(n in 3u32..12, s in 1usize..6, num in -19i64..20) {
        let r = QuadExt::from_frac(num, 20);
        if let Ok(lev) = levenshtein_polynomial(n, s, &r) {
            prop_assert!(lev.poly.eval(&r).is_zero());
            prop_assert_eq!(lev.poly.degree(), Some(s));
        }
    }
}
