use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::context::{VarContext, VarKind};
use super::polynomial::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A weighted order: a rational or infinity (the order of zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeightedOrder {
    Finite(Rational),
    Infinite,
}

impl WeightedOrder {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            WeightedOrder::Finite(q) => Some(q),
            WeightedOrder::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, WeightedOrder::Infinite)
    }
}

impl Ord for WeightedOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (WeightedOrder::Finite(a), WeightedOrder::Finite(b)) => a.cmp(b),
            (WeightedOrder::Finite(_), WeightedOrder::Infinite) => Ordering::Less,
            (WeightedOrder::Infinite, WeightedOrder::Finite(_)) => Ordering::Greater,
            (WeightedOrder::Infinite, WeightedOrder::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for WeightedOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeightedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightedOrder::Finite(q) => write!(f, "{q}"),
            WeightedOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for WeightedOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn term_weight(m: &super::polynomial::Monomial, weights: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (e, w) in m.exps().iter().zip(weights) {
        if *e > 0 && !w.is_zero() {
            acc += w * Rational::from_integer((*e).into());
        }
    }
    acc
}

/// `min` over terms of `sum alpha_i w_i`; one weight per variable.
pub fn weighted_order(f: &Poly, weights: &[Rational]) -> WeightedOrder {
    assert_eq!(weights.len(), f.nvars());
    f.terms()
        .map(|(m, _)| term_weight(m, weights))
        .min()
        .map(WeightedOrder::Finite)
        .unwrap_or(WeightedOrder::Infinite)
}

/// Terms of minimal weighted degree.
pub fn initial_form(f: &Poly, weights: &[Rational]) -> Result<Poly> {
    let min = match weighted_order(f, weights) {
        WeightedOrder::Finite(q) => q,
        WeightedOrder::Infinite => return Err(Error::ZeroInput),
    };
    Ok(f.filter(|m| term_weight(m, weights) == min))
}

/// Generators of the ideal of derivatives up to `order` in the masked
/// variables: the inputs followed by their partial derivatives, each made
/// monic, duplicates and zeros dropped.
pub fn derivative_ideal(gens: &[Poly], order: u32, mask: &[bool]) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    let push = |p: &Poly, out: &mut Vec<Poly>| {
        if p.is_zero() {
            return;
        }
        let m = p.monic();
        if !out.contains(&m) {
            out.push(m);
        }
    };
    let mut layer: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &layer {
        push(g, &mut out);
    }
    for _ in 0..order {
        let mut next = Vec::new();
        for g in &layer {
            for (i, m) in mask.iter().enumerate() {
                if *m {
                    let d = g.derivative(i);
                    if !d.is_zero() {
                        let d = d.monic();
                        if !next.contains(&d) {
                            next.push(d);
                        }
                    }
                }
            }
        }
        for d in &next {
            push(d, &mut out);
        }
        layer = next;
    }
    out
}

/// `x_var -> g` respecting adaptedness: parameters are never substituted,
/// divisorial variables only by themselves times a unit.
pub fn substitute_adapted(f: &Poly, var: usize, g: &Poly, ctx: &VarContext) -> Result<Poly> {
    match ctx.kind(var) {
        VarKind::Parameter => Err(Error::ParameterVariable(ctx.name(var).to_string())),
        VarKind::Divisorial if !is_var_times_unit(g, var, &ctx.center_mask()) => {
            Err(Error::NotAdapted(ctx.name(var).to_string()))
        }
        _ => Ok(f.substitute(var, g)),
    }
}

/// `g = x_var * u` with `u(0) != 0`, evaluated at the origin of the masked
/// variables.
pub fn is_var_times_unit(g: &Poly, var: usize, mask: &[bool]) -> bool {
    match g.div_var_power(var, 1) {
        Some(u) => !u.homogeneous_part(mask, 0).is_zero(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_expr;
    use crate::poly::rational::{int, rat};

    fn p(text: &str, ctx: &VarContext) -> Poly {
        parse_expr(text, ctx).unwrap()
    }

    #[test]
    fn weighted_orders() {
        let ctx = VarContext::free(&["x", "y", "w"]);
        let ones = vec![int(1); 3];
        assert_eq!(
            weighted_order(&p("x^2 + y^3", &ctx), &ones),
            WeightedOrder::Finite(int(2))
        );
        let w = vec![rat(1, 2), rat(1, 3), rat(1, 4)];
        assert_eq!(
            weighted_order(&p("x^2 + y^3 + w^4", &ctx), &w),
            WeightedOrder::Finite(int(1))
        );
        assert_eq!(weighted_order(&Poly::zero(3), &w), WeightedOrder::Infinite);
    }

    #[test]
    fn initial_forms() {
        let ctx = VarContext::new([
            ("x", VarKind::Free),
            ("y", VarKind::Free),
            ("z", VarKind::Parameter),
        ])
        .unwrap();
        let w = vec![int(1), int(1), int(0)];
        let f = p("x^2 - y^2*z", &ctx);
        assert_eq!(initial_form(&f, &w).unwrap(), f);
        assert_eq!(
            initial_form(&p("x^2 + y^3", &ctx), &w).unwrap(),
            p("x^2", &ctx)
        );
        assert_eq!(initial_form(&Poly::zero(3), &w), Err(Error::ZeroInput));
    }

    #[test]
    fn derivative_ideals() {
        let ctx = VarContext::free(&["x", "y"]);
        let mask = vec![true, true];
        let f = p("x^2 + y^3", &ctx);
        assert_eq!(
            derivative_ideal(std::slice::from_ref(&f), 1, &mask),
            vec![f.clone(), p("x", &ctx), p("y^2", &ctx)]
        );
        assert_eq!(derivative_ideal(std::slice::from_ref(&f), 0, &mask), vec![f]);
    }

    #[test]
    fn adapted_substitution() {
        let ctx = VarContext::new([("x", VarKind::Free), ("y", VarKind::Divisorial)]).unwrap();
        let f = p("x*y", &ctx);
        let y = ctx.index("y").unwrap();
        let x = ctx.index("x").unwrap();
        assert_eq!(
            substitute_adapted(&f, y, &p("y - x^2", &ctx), &ctx),
            Err(Error::NotAdapted("y".into()))
        );
        assert_eq!(
            substitute_adapted(&f, y, &p("y + x*y", &ctx), &ctx).unwrap(),
            p("x*y + x^2*y", &ctx)
        );
        assert_eq!(
            substitute_adapted(&p("x^2", &ctx), x, &p("x + 1", &ctx), &ctx).unwrap(),
            p("x^2 + 2*x + 1", &ctx)
        );
    }
}
