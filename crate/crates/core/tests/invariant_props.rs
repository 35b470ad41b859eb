mod common;

use std::cmp::Ordering;

use common::{nonzero_poly, positive_rational};
use ncres_core::invariant::{
    admissible, canonical_invariant, compare_inv, normalize_invariant, InvEntry, InvariantVector,
    Terminal, WeightedCenter,
};
use ncres_core::poly::{int, weighted_order, Poly, Rational, VarContext, WeightedOrder};
use num_traits::Zero;
use proptest::prelude::*;

fn ctx3() -> VarContext {
    VarContext::free(&["x", "y", "z"])
}

fn center(pairs: &[(usize, Rational)]) -> WeightedCenter {
    WeightedCenter::new(&ctx3(), pairs)
}

fn entry() -> impl Strategy<Value = InvEntry> {
    ((1i64..=4, 1i64..=2).prop_map(|(n, d)| ncres_core::poly::rat(n, d)), any::<bool>())
        .prop_map(|(v, p)| InvEntry::new(v, p))
}

fn inv_vector() -> impl Strategy<Value = InvariantVector> {
    (prop::collection::vec(entry(), 0..4), any::<bool>()).prop_map(|(mut e, inf)| {
        e.sort();
        let t = if inf && !e.is_empty() { Terminal::Infinity } else { Terminal::End };
        InvariantVector::new(e, t)
    })
}

/// Singular ideals: every generator vanishes to order at least 2.
fn singular_ideal() -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(nonzero_poly(3, 3, 3), 1..=2).prop_filter("order >= 2", |gens| {
        let mask = vec![true; 3];
        gens.iter().all(|g| g.order_in(&mask).is_some_and(|o| o >= 2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn admissibility_is_antitone(
        gens in prop::collection::vec(nonzero_poly(3, 3, 4), 1..=2),
        a in prop::collection::vec(positive_rational(), 3),
        bump in positive_rational(),
        i in 0usize..3,
    ) {
        let pairs: Vec<(usize, Rational)> = a.iter().cloned().enumerate().collect();
        let mut raised = pairs.clone();
        raised[i].1 += bump;
        if admissible(&gens, &center(&raised)) {
            prop_assert!(admissible(&gens, &center(&pairs)));
        }
    }

    #[test]
    fn canonical_center_is_admissible_and_tight(gens in singular_ideal()) {
        let ctx = ctx3();
        let r = match canonical_invariant(&gens, &ctx) {
            Ok(r) => r,
            Err(e) => return Err(TestCaseError::reject(e.to_string())),
        };
        prop_assert!(admissible(&r.transformed, &r.center));
        prop_assert_eq!(r.center.invariant().entries, r.invariant.entries.clone());
        if r.invariant.terminal == Terminal::End {
            // some generator has weighted order exactly 1 along the center
            let w = r.center.weights(3);
            let min = r
                .transformed
                .iter()
                .map(|g| weighted_order(g, &w))
                .min()
                .unwrap();
            prop_assert_eq!(min, WeightedOrder::Finite(int(1)));
        }
    }

    #[test]
    fn normalize_is_idempotent(v in inv_vector()) {
        let once = normalize_invariant(&v);
        prop_assert_eq!(normalize_invariant(&once), once.clone());
        prop_assert!(once.entries.first().is_none_or(|e| e.plus || !(e.value.clone() - int(1)).is_zero()));
    }

    #[test]
    fn compare_is_a_total_order(a in inv_vector(), b in inv_vector(), c in inv_vector()) {
        prop_assert_eq!(compare_inv(&a, &b), compare_inv(&b, &a).reverse());
        prop_assert_eq!(compare_inv(&a, &b) == Ordering::Equal, a == b);
        if compare_inv(&a, &b) != Ordering::Greater && compare_inv(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare_inv(&a, &c), Ordering::Greater);
        }
    }
}
