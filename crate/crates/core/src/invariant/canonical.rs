use num_traits::Zero;
use serde::Serialize;

use super::contact::{coefficient_ideal, maximal_contact, CoordinateChange};
use super::{InvEntry, InvariantVector, ReesAlgebra, Terminal, WeightedCenter};
use crate::error::{Error, Result};
use crate::poly::{Poly, Rational, TruncatedSeries, VarContext, WeightedOrder};

/// One level of the recursion: its order and maximal contact block.
#[derive(Clone, Debug, Serialize)]
pub struct Level {
    #[serde(serialize_with = "super::ser_rational")]
    pub order: Rational,
    pub block: Vec<String>,
    pub generators: usize,
}

#[derive(Clone, Debug)]
pub struct CanonicalInvariant {
    pub invariant: InvariantVector,
    pub center: WeightedCenter,
    pub change: CoordinateChange,
    /// The input generators written in the coordinates of the center.
    pub transformed: Vec<Poly>,
    pub levels: Vec<Level>,
}

/// Divisorial variable dividing every generator while some generator is not
/// a monomial.
fn mixed_tail(rees: &ReesAlgebra, ctx: &VarContext, available: &[bool]) -> Option<usize> {
    if rees.gens.iter().all(|(f, _)| f.num_terms() <= 1) {
        return None;
    }
    ctx.divisorial_vars()
        .into_iter()
        .filter(|&v| available[v])
        .find(|&v| rees.gens.iter().all(|(f, _)| f.var_valuation(v) > 0))
}

pub fn canonical_invariant(gens: &[Poly], ctx: &VarContext) -> Result<CanonicalInvariant> {
    canonical_invariant_with(gens, ctx, TruncatedSeries::DEFAULT_TRUNCATION)
}

/// Canonical invariant and maximal admissible center at the origin.
pub fn canonical_invariant_with(
    gens: &[Poly],
    ctx: &VarContext,
    truncation: u32,
) -> Result<CanonicalInvariant> {
    let nv = ctx.len();
    if gens.iter().all(|g| g.is_zero()) {
        return Err(Error::ZeroInput);
    }
    let mask = ctx.center_mask();
    let mut available = mask.clone();
    let mut rees = ReesAlgebra::from_ideal(gens);
    let mut change = CoordinateChange::identity(truncation);
    let mut entries = Vec::new();
    let mut pairs: Vec<(usize, Rational)> = Vec::new();
    let mut levels = Vec::new();

    let terminal = loop {
        if rees.is_zero() {
            break Terminal::Infinity;
        }
        if levels.len() > nv {
            return Err(Error::RecursionGuard(nv));
        }
        let order = match rees.order(&available) {
            WeightedOrder::Finite(a) => a,
            WeightedOrder::Infinite => break Terminal::Infinity,
        };
        if order.is_zero() {
            if levels.is_empty() {
                break Terminal::End;
            }
            return Err(Error::assertion("coefficient algebra of order zero"));
        }
        if let Some(v) = mixed_tail(&rees, ctx, &available) {
            return Err(Error::unsupported(format!(
                "residual algebra is divisible by divisorial `{}` but not monomial",
                ctx.name(v)
            )));
        }
        let mc = maximal_contact(&rees, &order, ctx, &available, truncation)?;
        levels.push(Level {
            order: order.clone(),
            block: mc.block.iter().map(|&v| ctx.name(v).to_string()).collect(),
            generators: rees.gens.len(),
        });
        for &v in &mc.block {
            entries.push(InvEntry::new(order.clone(), ctx.is_divisorial(v)));
            pairs.push((v, order.clone()));
            available[v] = false;
        }
        rees = coefficient_ideal(&mc.algebra, &mc.block, &order);
        change.extend(mc.change);
    };

    let center = WeightedCenter::new(ctx, &pairs);
    let transformed: Vec<Poly> = gens.iter().map(|g| change.apply(g, &mask)).collect();
    if terminal != Terminal::End && !super::admissible(&transformed, &center) {
        return Err(Error::assertion(format!(
            "computed center {center} is not admissible"
        )));
    }
    Ok(CanonicalInvariant {
        invariant: InvariantVector::new(entries, terminal),
        center,
        change,
        transformed,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_expr, VarKind};

    fn run(text: &[&str], ctx: &VarContext) -> CanonicalInvariant {
        let gens: Vec<Poly> = text.iter().map(|t| parse_expr(t, ctx).unwrap()).collect();
        canonical_invariant(&gens, ctx).unwrap()
    }

    #[test]
    fn golden_values() {
        let ctx = VarContext::free(&["x", "y", "w"]);
        let r = run(&["x^2 + y^3 + w^4"], &ctx);
        assert_eq!(r.invariant.to_string(), "(2,3,4)");
        assert_eq!(r.center.to_string(), "(x^2, y^3, w^4)");

        let ctx = VarContext::free(&["x", "y", "z"]);
        let r = run(&["x^2 - y^2*z"], &ctx);
        assert_eq!(r.invariant.to_string(), "(2,3,3)");
        assert_eq!(r.center.to_string(), "(x^2, y^3, z^3)");
    }

    #[test]
    fn normal_crossings_forms() {
        let ctx = VarContext::free(&["u1", "u2", "u3"]);
        let r = run(&["u1", "u2*u3"], &ctx);
        assert_eq!(r.invariant.to_string(), "(1,2,2)");
        assert_eq!(r.center.to_string(), "(u1, u2^2, u3^2)");

        let ctx = VarContext::new([
            ("u1", VarKind::Free),
            ("u2", VarKind::Free),
            ("u3", VarKind::Divisorial),
        ])
        .unwrap();
        let r = run(&["u1", "u2*u3"], &ctx);
        assert_eq!(r.invariant.to_string(), "(1,2,2+)");
        assert_eq!(r.invariant.terminal, Terminal::Infinity);
    }

    #[test]
    fn unit_and_smooth() {
        let ctx = VarContext::free(&["x", "y"]);
        assert!(run(&["1 + x"], &ctx).invariant.is_unit());
        let r = run(&["x + y^2"], &ctx);
        assert_eq!(r.invariant.to_string(), "(1)");
        assert_eq!(r.change.forward_map(2)[0], parse_expr("x + y^2", &ctx).unwrap());
    }

    #[test]
    fn mixed_tail_is_unsupported() {
        let ctx = VarContext::new([("x", VarKind::Free), ("u", VarKind::Divisorial)]).unwrap();
        let g = parse_expr("u*x^2 + u^2", &ctx).unwrap();
        assert!(matches!(
            canonical_invariant(&[g], &ctx),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn parameters_are_not_center_variables() {
        let ctx = VarContext::new([
            ("x", VarKind::Free),
            ("y", VarKind::Free),
            ("z", VarKind::Parameter),
        ])
        .unwrap();
        let r = run(&["x^2 - y^2*z"], &ctx);
        assert_eq!(r.invariant.to_string(), "(2,2)");
        assert_eq!(r.center.entries[1].exponent, int(2));
    }
}
