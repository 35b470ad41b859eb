use serde::Serialize;

use super::ReesAlgebra;
use crate::error::{Error, Result};
use crate::poly::{is_var_times_unit, Poly, Rational, TruncatedSeries, VarContext, VarKind};

/// `x_var` replaced by `inverse` (old coordinate in terms of new ones);
/// `forward` is the new coordinate in terms of the old ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub var: usize,
    pub inverse: Poly,
    pub forward: Poly,
    /// `inverse` is a truncated series rather than an exact polynomial.
    pub truncated: bool,
}

/// Composite of adapted coordinate changes, applied in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    pub steps: Vec<Substitution>,
    pub truncation: u32,
}

#[derive(Serialize)]
struct SubstitutionRecord {
    var: String,
    new_coordinate: String,
    truncated: bool,
}

impl CoordinateChange {
    pub fn identity(truncation: u32) -> Self {
        CoordinateChange {
            steps: Vec::new(),
            truncation,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.steps.iter().any(|s| s.truncated)
    }

    /// Expresses `f` in the new coordinates.
    pub fn apply(&self, f: &Poly, mask: &[bool]) -> Poly {
        let mut truncated = false;
        let mut out = f.clone();
        for s in &self.steps {
            truncated |= s.truncated;
            out = if truncated {
                let n = self.truncation;
                let g = TruncatedSeries::new(s.inverse.clone(), mask.to_vec(), n);
                TruncatedSeries::new(out, mask.to_vec(), n).substitute(s.var, &g).into_body()
            } else {
                out.substitute(s.var, &s.inverse)
            };
        }
        out
    }

    /// Each final coordinate as a polynomial in the original ones.
    pub fn forward_map(&self, nvars: usize) -> Vec<Poly> {
        let mut map: Vec<Poly> = (0..nvars).map(|i| Poly::var(nvars, i)).collect();
        for s in &self.steps {
            map[s.var] = s.forward.compose(&map);
        }
        map
    }

    pub fn extend(&mut self, other: CoordinateChange) {
        self.steps.extend(other.steps);
    }

    /// `(variable, new coordinate in old terms)` pairs for reports.
    pub fn describe(&self, ctx: &VarContext) -> Vec<(String, String)> {
        self.steps
            .iter()
            .map(|s| (ctx.name(s.var).to_string(), s.forward.display(ctx).to_string()))
            .collect()
    }

    pub fn records(&self, ctx: &VarContext) -> impl Serialize {
        self.steps
            .iter()
            .map(|s| SubstitutionRecord {
                var: ctx.name(s.var).to_string(),
                new_coordinate: s.forward.display(ctx).to_string(),
                truncated: s.truncated,
            })
            .collect::<Vec<_>>()
    }
}

/// Result of the maximal contact step.
#[derive(Clone, Debug)]
pub struct MaximalContact {
    /// Block variables, free ones first, each in declared order.
    pub block: Vec<usize>,
    pub change: CoordinateChange,
    /// The algebra rewritten in the new coordinates.
    pub algebra: ReesAlgebra,
}

fn linear_row(g: &Poly, mask: &[bool]) -> Vec<Poly> {
    let mut row = vec![Poly::zero(g.nvars()); g.nvars()];
    for (i, c) in g.linear_part(mask) {
        row[i] = c;
    }
    row
}

/// Derivatives of exact order `k` in the masked variables, made monic.
fn derivatives_of_order(f: &Poly, k: u32, mask: &[bool]) -> Vec<Poly> {
    let mut layer = vec![f.clone()];
    for _ in 0..k {
        let mut next: Vec<Poly> = Vec::new();
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
        layer = next;
    }
    layer
}

/// Solves `g(x) = y` for `x_p` by fixed-point iteration to degree `n`.
fn truncated_inverse(g: &Poly, p: usize, c: &Rational, mask: &[bool], n: u32) -> Poly {
    let nv = g.nvars();
    let rest = g - &Poly::var(nv, p).scale(c);
    let rest = TruncatedSeries::new(rest, mask.to_vec(), n);
    let y = TruncatedSeries::new(Poly::var(nv, p), mask.to_vec(), n);
    let inv_c = c.recip();
    let mut phi = y.scale(&inv_c);
    for _ in 0..=n {
        let next = y.sub(&rest.substitute(p, &phi)).scale(&inv_c);
        if next == phi {
            break;
        }
        phi = next;
    }
    phi.into_body()
}

/// Maximal contact of `R` of order `a` at the origin, over the `available`
/// variables. Finds contact elements among the derivatives of order
/// `b_j a - 1` of the generators attaining the order, row-reduces their
/// linear parts (free columns first) and turns each into a coordinate by an
/// adapted substitution.
pub fn maximal_contact(
    rees: &ReesAlgebra,
    order: &Rational,
    ctx: &VarContext,
    available: &[bool],
    truncation: u32,
) -> Result<MaximalContact> {
    let nv = ctx.len();
    let mut elements: Vec<(Poly, Vec<Poly>)> = Vec::new();
    for (f, b) in &rees.gens {
        let target = b * order;
        let Some(o) = f.order_in(available) else {
            continue;
        };
        if Rational::from_integer(o.into()) != target {
            continue;
        }
        for g in derivatives_of_order(f, o - 1, available) {
            if g.order_in(available) == Some(1) {
                let row = linear_row(&g, available);
                elements.push((g, row));
            }
        }
    }
    if elements.is_empty() {
        return Err(Error::EmptyContact);
    }

    let mut columns: Vec<usize> = (0..nv)
        .filter(|&i| available[i] && ctx.kind(i) == VarKind::Free)
        .collect();
    columns.extend((0..nv).filter(|&i| available[i] && ctx.kind(i) == VarKind::Divisorial));

    let mut pivots: Vec<(usize, Poly)> = Vec::new();
    for &col in &columns {
        let Some(r) = elements.iter().position(|(_, row)| !row[col].is_zero()) else {
            continue;
        };
        let (g, row) = elements.remove(r);
        for (h, hrow) in elements.iter_mut() {
            if hrow[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let b = hrow[col].clone();
            *h = &(&a * &*h) - &(&b * &g);
            for k in 0..nv {
                hrow[k] = &(&a * &hrow[k]) - &(&b * &row[k]);
            }
        }
        elements.retain(|(_, row)| row.iter().any(|c| !c.is_zero()));
        pivots.push((col, g));
    }

    let mask = ctx.center_mask();
    let mut change = CoordinateChange::identity(truncation);
    let mut block = Vec::new();
    for (p, g0) in pivots {
        block.push(p);
        let g = change.apply(&g0, &mask);
        let c_poly = g
            .linear_part(available)
            .into_iter()
            .find(|(i, _)| *i == p)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::assertion("pivot lost its linear coefficient"))?;
        let xp = Poly::var(nv, p);
        if g.div_exact(&xp).is_some_and(|q| q == c_poly) || is_var_times_unit(&g, p, &mask) {
            continue;
        }
        if ctx.is_divisorial(p) {
            return Err(Error::unsupported(format!(
                "maximal contact would rewrite divisorial variable `{}`",
                ctx.name(p)
            )));
        }
        if !c_poly.is_constant() {
            return Err(Error::unsupported(format!(
                "contact coefficient of `{}` is a non-constant function of the parameters",
                ctx.name(p)
            )));
        }
        let c = c_poly.constant_term();
        let rest = &g - &xp.scale(&c);
        let step = if rest.involves(p) {
            Substitution {
                var: p,
                inverse: truncated_inverse(&g, p, &c, &mask, truncation),
                forward: g.clone(),
                truncated: true,
            }
        } else {
            Substitution {
                var: p,
                inverse: (&xp - &rest).scale(&c.recip()),
                forward: g.clone(),
                truncated: false,
            }
        };
        change.steps.push(step);
    }
    block.sort_by_key(|&v| (ctx.is_divisorial(v), v));

    let algebra = ReesAlgebra {
        gens: rees
            .gens
            .iter()
            .map(|(f, b)| (change.apply(f, &mask), b.clone()))
            .filter(|(f, _)| !f.is_zero())
            .collect(),
    };
    Ok(MaximalContact {
        block,
        change,
        algebra,
    })
}

/// Coefficient algebra along the block: for each `(f, b)` the coefficients
/// `c_alpha` of `x^alpha` with `|alpha| < b a1`, with weight `b - |alpha|/a1`.
pub fn coefficient_ideal(rees: &ReesAlgebra, block: &[usize], a1: &Rational) -> ReesAlgebra {
    let nv = rees.gens.first().map(|(f, _)| f.nvars()).unwrap_or(0);
    let mut mask = vec![false; nv];
    for &v in block {
        mask[v] = true;
    }
    let mut gens: Vec<(Poly, Rational)> = Vec::new();
    for (f, b) in &rees.gens {
        let bound = b * a1;
        for (alpha, c) in f.coefficients_in(&mask) {
            let d = Rational::from_integer(alpha.degree().into());
            if d < bound && !c.is_zero() {
                let w = b - &d / a1;
                let entry = (c, w);
                if !gens.contains(&entry) {
                    gens.push(entry);
                }
            }
        }
    }
    ReesAlgebra { gens }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_expr};

    #[test]
    fn pinch_point_contact() {
        let ctx = VarContext::free(&["x", "y", "z"]);
        let f = parse_expr("x^2 - y^2*z", &ctx).unwrap();
        let r = ReesAlgebra::from_ideal(&[f]);
        let mc = maximal_contact(&r, &int(2), &ctx, &[true; 3], 16).unwrap();
        assert_eq!(mc.block, vec![0]);
        assert!(mc.change.is_identity());
        let c = coefficient_ideal(&mc.algebra, &mc.block, &int(2));
        let yz = parse_expr("-y^2*z", &ctx).unwrap();
        assert_eq!(c.gens, vec![(yz, int(1))]);
    }

    #[test]
    fn order_one_generator_absorbs_tail() {
        let ctx = VarContext::free(&["x", "y"]);
        let f = parse_expr("x + y^2", &ctx).unwrap();
        let r = ReesAlgebra::from_ideal(&[f]);
        let mc = maximal_contact(&r, &int(1), &ctx, &[true; 2], 16).unwrap();
        assert_eq!(mc.block, vec![0]);
        assert_eq!(mc.algebra.gens[0].0, Poly::var(2, 0));
        assert_eq!(mc.change.forward_map(2)[0], parse_expr("x + y^2", &ctx).unwrap());
    }

    #[test]
    fn nonlinear_in_pivot_uses_series() {
        let ctx = VarContext::free(&["x", "y"]);
        let f = parse_expr("x + x^2 + y^3", &ctx).unwrap();
        let r = ReesAlgebra::from_ideal(std::slice::from_ref(&f));
        let mc = maximal_contact(&r, &int(1), &ctx, &[true; 2], 8).unwrap();
        assert!(mc.change.is_truncated());
        assert_eq!(mc.algebra.gens[0].0, Poly::var(2, 0));
    }

    #[test]
    fn coefficient_ideal_examples() {
        let ctx = VarContext::free(&["u1", "u2", "u3"]);
        let p = |t: &str| parse_expr(t, &ctx).unwrap();
        let r = ReesAlgebra::from_ideal(&[p("u1"), p("u2^2*u3^3")]);
        let c = coefficient_ideal(&r, &[0], &int(1));
        assert_eq!(c.gens, vec![(p("u2^2*u3^3"), int(1))]);
        let r2 = ReesAlgebra::from_ideal(&[p("u1^2")]);
        assert!(coefficient_ideal(&r2, &[0], &int(2)).is_zero());
    }
}
