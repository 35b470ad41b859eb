use ncres_core::poly::{int, parse_expr, rat, Monomial, Poly, VarContext, VarKind};
use ncres_core::splitting::{
    cyclic_form, independent_factors_at, ramification_locus, specialization, SplittingForm,
};
use num_traits::Zero;
use proptest::prelude::*;

fn free3() -> VarContext {
    VarContext::free(&["x0", "x1", "x2"])
}

#[test]
fn cyclic_forms_up_to_six() {
    for n in 2..=6 {
        let cp = cyclic_form(n).unwrap();
        assert_eq!(cp.degree(), n as u32);
        assert_eq!(cp.params().len(), 1);
    }
}

#[test]
fn cp2_is_the_pinch_point() {
    let cp = cyclic_form(2).unwrap();
    let ctx = VarContext::new([("x", VarKind::Free), ("y", VarKind::Free), ("z", VarKind::Parameter)])
        .unwrap();
    let pinch = parse_expr("x^2 - y^2*z", &ctx).unwrap();
    assert_eq!(cp.form(), &pinch);
}

#[test]
fn colliding_reductions_ramify_everywhere() {
    // distinct factors with the same x1 coefficient: the x1 = -1 reduction
    // has a double root
    let ctx = free3();
    let f = parse_expr("(x0 - x1)*(x0 - x1 - x2)", &ctx).unwrap();
    let sf = SplittingForm::with_vars(ctx, f, vec![0, 1, 2]).unwrap();
    assert!(ramification_locus(&sf).unwrap().is_zero());
}

fn distinct_roots(phi: &Poly, v: usize) -> u32 {
    let g = ncres_core::poly::gcd(phi, &phi.derivative(v));
    phi.degree_of(v) - g.degree_of(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Off the ramification locus every specialization keeps distinct roots.
    #[test]
    fn distinct_roots_off_the_locus(n in 2usize..=4, p in -12i64..=12, q in 1i64..=4) {
        let cp = cyclic_form(n).unwrap();
        let z = rat(p, q);
        let locus = ramification_locus(&cp).unwrap();
        let off = !locus.eval_var(n, &z).constant_term().is_zero();
        prop_assert_eq!(independent_factors_at(&cp, &[(n, z.clone())]).unwrap(), off);
        if off {
            let at = cp.at(&[(n, z)]).unwrap();
            for j in 1..n {
                let phi = specialization(&at, j).unwrap();
                prop_assert_eq!(distinct_roots(&phi, at.x1()), phi.degree_of(at.x1()));
            }
        }
    }

    /// A product of rational linear forms whose specializations have
    /// distinct roots has a constant, nonzero ramification locus.
    #[test]
    fn split_forms_have_empty_locus(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 2..=3)) {
        let ctx = free3();
        let mut forms: Vec<Poly> = Vec::new();
        for r in &rows {
            let mut l = Poly::zero(3);
            for (i, c) in r.iter().enumerate() {
                l = &l + &Poly::var(3, i).scale(&int(*c));
            }
            prop_assume!(l.involves(0));
            let c0 = l.coeff(&Monomial::var(3, 0));
            let l = l.scale(&(int(1) / c0));
            forms.push(l);
        }
        // x_j = -1 sends a monic form to x0 - c_j; the roots must differ
        for j in 1..3 {
            let mut roots: Vec<_> = forms.iter().map(|l| l.coeff(&Monomial::var(3, j))).collect();
            roots.sort();
            roots.dedup();
            prop_assume!(roots.len() == forms.len());
        }
        let f = forms.iter().fold(Poly::one(3), |acc, l| &acc * l);
        let sf = SplittingForm::with_vars(ctx, f, vec![0, 1, 2]).unwrap();
        let locus = ramification_locus(&sf).unwrap();
        prop_assert!(locus.is_constant() && !locus.is_zero());
    }
}
