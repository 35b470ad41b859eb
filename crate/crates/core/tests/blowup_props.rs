mod common;

use common::{nonzero_poly, positive_rational};
use ncres_core::blowup::{blowup_weights, transform, Chart, TransformKind};
use ncres_core::invariant::{admissible, WeightedCenter};
use ncres_core::poly::{int, Monomial, Poly, Rational, VarContext};
use proptest::prelude::*;

fn ctx3() -> VarContext {
    VarContext::free(&["x", "y", "z"])
}

fn center() -> impl Strategy<Value = WeightedCenter> {
    (prop::collection::vec(positive_rational(), 3), 1usize..=3).prop_map(|(a, k)| {
        let pairs: Vec<(usize, Rational)> = a.into_iter().take(k).enumerate().collect();
        WeightedCenter::new(&ctx3(), &pairs)
    })
}

/// Keeps the terms lying in the sections of the center.
fn sections(f: &Poly, c: &WeightedCenter) -> Poly {
    let w = c.weights(3);
    f.filter(|m: &Monomial| {
        let v: Rational = (0..3).map(|i| &w[i] * int(m.exp(i) as i64)).sum();
        v >= int(1)
    })
}

fn admissible_pair() -> impl Strategy<Value = (WeightedCenter, Poly, Poly)> {
    (center(), nonzero_poly(3, 5, 4), nonzero_poly(3, 5, 4))
        .prop_map(|(c, f, g)| {
            let (f, g) = (sections(&f, &c), sections(&g, &c));
            (c, f, g)
        })
        .prop_filter("nonzero sections", |(_, f, g)| !f.is_zero() && !g.is_zero())
}

fn run(c: &WeightedCenter, f: &Poly, kind: TransformKind) -> Poly {
    let chart = Chart::new(ctx3(), vec![f.clone()]);
    transform(&chart, c, kind).unwrap().ideal.remove(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_transform_is_divisible_by_s_w((c, f, _g) in admissible_pair()) {
        prop_assert!(admissible(std::slice::from_ref(&f), &c));
        let w = blowup_weights(&c).unwrap().w as u32;
        let total = run(&c, &f, TransformKind::Total);
        prop_assert!(total.div_var_power(3, w).is_some());
        let controlled = run(&c, &f, TransformKind::Controlled);
        prop_assert_eq!(controlled.mul_monomial(&Monomial::var(4, 3).with_exp(3, w), &int(1)), total);
    }

    #[test]
    fn strict_transform_is_multiplicative((c, f, g) in admissible_pair()) {
        let fg = &f * &g;
        let lhs = run(&c, &fg, TransformKind::Strict);
        let rhs = &run(&c, &f, TransformKind::Strict) * &run(&c, &g, TransformKind::Strict);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weights_are_minimal(c in center()) {
        let bw = blowup_weights(&c).unwrap();
        for e in &c.entries {
            prop_assert!((int(bw.w as i64) / &e.exponent).is_integer());
        }
        for smaller in 1..bw.w {
            prop_assert!(c.entries.iter().any(|e| !(int(smaller as i64) / &e.exponent).is_integer()));
        }
        let smooth: Vec<(usize, Rational)> = c.vars().into_iter().map(|v| (v, int(1))).collect();
        let sw = blowup_weights(&WeightedCenter::new(&ctx3(), &smooth)).unwrap();
        prop_assert_eq!(sw.w, 1);
        prop_assert!(sw.weights.iter().all(|&(_, wi)| wi == 1));
    }
}
