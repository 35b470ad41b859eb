//! Strategies shared by the property tests.
#![allow(dead_code)]

use ncres_core::poly::{int, rat, Monomial, Poly, Rational};
use proptest::prelude::*;

pub fn poly(nv: usize, terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nv), -5i64..=5), 0..=terms).prop_map(
        move |ts| {
            let mut p = Poly::zero(nv);
            for (e, c) in ts {
                p = &p + &Poly::term(Monomial::new(e), int(c));
            }
            p
        },
    )
}

pub fn nonzero_poly(nv: usize, terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    poly(nv, terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

/// Small positive rational with denominator at most 3.
pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn weights(nv: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d)), nv)
}
