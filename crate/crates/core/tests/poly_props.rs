mod common;

use common::{nonzero_poly, poly, weights};
use ncres_core::poly::{initial_form, weighted_order, TruncatedSeries, WeightedOrder};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly(3, 4, 3), g in poly(3, 4, 3), h in poly(3, 4, 3)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn weighted_order_is_a_valuation(f in nonzero_poly(3, 4, 3), g in nonzero_poly(3, 4, 3), w in weights(3)) {
        let (a, b) = match (weighted_order(&f, &w), weighted_order(&g, &w)) {
            (WeightedOrder::Finite(a), WeightedOrder::Finite(b)) => (a, b),
            _ => unreachable!("nonzero"),
        };
        prop_assert_eq!(weighted_order(&(&f * &g), &w), WeightedOrder::Finite(a + b));
    }

    #[test]
    fn initial_form_is_multiplicative(f in nonzero_poly(3, 4, 3), g in nonzero_poly(3, 4, 3), w in weights(3)) {
        let lhs = initial_form(&(&f * &g), &w).unwrap();
        let rhs = &initial_form(&f, &w).unwrap() * &initial_form(&g, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(f in poly(3, 3, 3), g in poly(3, 3, 3), h in poly(3, 3, 2), v in 0usize..3) {
        prop_assert_eq!((&f * &g).substitute(v, &h), &f.substitute(v, &h) * &g.substitute(v, &h));
        prop_assert_eq!((&f + &g).substitute(v, &h), &f.substitute(v, &h) + &g.substitute(v, &h));
    }

    #[test]
    fn series_match_truncated_polynomials(f in poly(3, 4, 3), g in poly(3, 4, 3), n in 1u32..6) {
        let mask = vec![true, true, false];
        let sf = TruncatedSeries::new(f.clone(), mask.clone(), n);
        let sg = TruncatedSeries::new(g.clone(), mask.clone(), n);
        prop_assert_eq!(sf.mul(&sg).into_body(), (&f * &g).truncate(&mask, n));
        prop_assert_eq!(sf.add(&sg).into_body(), (&f + &g).truncate(&mask, n));
        prop_assert_eq!(sf.pow(2).into_body(), (&f * &f).truncate(&mask, n));
    }
}
