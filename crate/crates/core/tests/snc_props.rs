mod common;

use common::poly;
use ncres_core::ncdetect::{
    is_nc_principal, snc_factorize, verify_failure, CoefRing, FactorizationResult, NcVerdict, PreSnc,
};
use ncres_core::poly::{int, rat, Monomial, Poly, VarContext, VarKind};
use proptest::prelude::*;

const N: u32 = 6;

/// `prod (x_i + g_i)^{a_i}` truncated at `N`, with `g_i` of order >= 2.
fn product() -> impl Strategy<Value = (Vec<(usize, u32)>, Poly)> {
    (
        prop::collection::vec(1u32..=2, 1..=3),
        prop::collection::vec(poly(3, 3, 2), 3),
    )
        .prop_map(|(exps, tails)| {
            let mask = vec![true; 3];
            let mut f = Poly::one(3);
            let mut lead = Vec::new();
            for (i, (a, g)) in exps.iter().zip(tails).enumerate() {
                let g = g.filter(|m: &Monomial| m.degree() >= 2);
                let base = &Poly::var(3, i) + &g;
                for _ in 0..*a {
                    f = (&f * &base).truncate(&mask, N);
                }
                lead.push((i, *a));
            }
            (lead, f)
        })
}

fn expand(factors: &[(usize, u32, Poly)], nv: usize, mask: &[bool]) -> Poly {
    let mut p = Poly::one(nv);
    for (v, a, g) in factors {
        let base = &Poly::var(nv, *v) + g;
        for _ in 0..*a {
            p = (&p * &base).truncate(mask, N);
        }
    }
    p
}

fn kind(v: &NcVerdict) -> &'static str {
    match v {
        NcVerdict::NcCertified { .. } => "nc",
        NcVerdict::NotNc { .. } => "not-nc",
        NcVerdict::Unsupported { .. } => "unsupported",
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snc_products_round_trip((lead, f) in product()) {
        let mask = vec![true; 3];
        let pre = PreSnc::new(&f, mask.clone(), N, CoefRing::Base).unwrap();
        let r = snc_factorize(&pre, N).unwrap();
        let FactorizationResult::Factors { factors, .. } = r else {
            return Err(TestCaseError::fail("SNC product did not factor"));
        };
        let got: Vec<(usize, u32)> = factors.iter().map(|f| (f.var, f.exponent)).collect();
        prop_assert_eq!(got, lead);
        let triples: Vec<(usize, u32, Poly)> =
            factors.iter().map(|f| (f.var, f.exponent, f.correction.clone())).collect();
        prop_assert_eq!(expand(&triples, 3, &mask), f);
    }

    #[test]
    fn failures_carry_genuine_certificates(
        tail in poly(3, 4, 4),
        lead in prop::collection::vec(1u32..=2, 3),
    ) {
        let mask = vec![true; 3];
        let m = Monomial::new(lead);
        let tail = tail.filter(|t: &Monomial| t.degree() > m.degree());
        let f = &Poly::term(m.clone(), int(1)) + &tail;
        let pre = PreSnc::new(&f, mask, N, CoefRing::Base).unwrap();
        if let FactorizationResult::Failure { monomials, .. } = snc_factorize(&pre, N).unwrap() {
            prop_assert!(verify_failure(&m, &monomials).is_ok());
        }
    }

    /// Verdicts over Q[t] agree with verdicts at rational values of t.
    #[test]
    fn verdicts_commute_with_base_change(
        shape in 0usize..3,
        coeffs in prop::collection::vec(-3i64..=3, 3),
        p in -20i64..=20,
        q in 1i64..=5,
    ) {
        prop_assume!(p != 0);
        let ctx = VarContext::new([
            ("x", VarKind::Free),
            ("y", VarKind::Free),
            ("w", VarKind::Free),
            ("t", VarKind::Parameter),
        ])
        .unwrap();
        let c: Vec<String> = coeffs.iter().map(|c| format!("({c})")).collect();
        let text = match shape {
            // SNC for every t
            0 => format!("x*y + t*x^3 + {}*y^3 + {}*t*x^2*y", c[0], c[1]),
            // the triple point with a parameter-dependent tail
            1 => format!("x*y*w + t*x^4 + {}*y^4 + w^4 + {}*t*x^5", c[0], c[1]),
            // two branches tangent to order two
            _ => format!("x^2 - 2*t*x*y^2 + t^2*y^4 + {}*y^5", c[2]),
        };
        let h = ncres_core::poly::parse_expr(&text, &ctx).unwrap();
        let generic = is_nc_principal(&h, &ctx, N).unwrap();
        let at = h.eval_var(3, &rat(p, q));
        let special = is_nc_principal(&at, &ctx, N).unwrap();
        if !generic.is_unsupported() && !special.is_unsupported() {
            prop_assert_eq!(kind(&generic), kind(&special), "{} at t={}/{}", text, p, q);
        }
    }
}
