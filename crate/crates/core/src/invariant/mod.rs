//! Admissibility of weighted centers, maximal contact, coefficient ideals and
//! the canonical logarithmic invariant.

mod canonical;
mod contact;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::poly::{is_integer, weighted_order, Poly, Rational, VarContext, WeightedOrder};

pub use canonical::{canonical_invariant, canonical_invariant_with, CanonicalInvariant, Level};
pub use contact::{coefficient_ideal, maximal_contact, CoordinateChange, MaximalContact, Substitution};

/// One entry `a` or `a+` of an invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvEntry {
    pub value: Rational,
    pub plus: bool,
}

impl InvEntry {
    pub fn new(value: Rational, plus: bool) -> Self {
        InvEntry { value, plus }
    }
}

impl Ord for InvEntry {
    // a < a+ < b for every b > a
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then(self.plus.cmp(&other.plus))
    }
}

impl PartialOrd for InvEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InvEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.plus { "+" } else { "" })
    }
}

impl Serialize for InvEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// How an invariant ends once its entries are exhausted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Terminal {
    /// Residual algebra is zero: behaves as an appended entry larger than
    /// every finite one.
    Infinity,
    /// Plain end of sequence; a proper prefix compares smaller. The unit
    /// ideal has the empty invariant with this terminal.
    End,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantVector {
    pub entries: Vec<InvEntry>,
    pub terminal: Terminal,
}

impl InvariantVector {
    pub fn new(entries: Vec<InvEntry>, terminal: Terminal) -> Self {
        InvariantVector { entries, terminal }
    }

    /// Finite sequence without an infinity marker.
    pub fn finite(entries: Vec<InvEntry>) -> Self {
        Self::new(entries, Terminal::End)
    }

    /// Invariant of the unit ideal: smaller than everything else.
    pub fn unit() -> Self {
        Self::finite(Vec::new())
    }

    pub fn is_unit(&self) -> bool {
        self.entries.is_empty() && self.terminal == Terminal::End
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Drops leading `1` entries (without plus), giving the class that does
    /// not depend on the embedding.
    pub fn normalize(&self) -> Self {
        let k = self
            .entries
            .iter()
            .take_while(|e| e.value.is_one() && !e.plus)
            .count();
        Self::new(self.entries[k..].to_vec(), self.terminal)
    }
}

impl Ord for InvariantVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match a.cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        let (la, lb) = (self.entries.len(), other.entries.len());
        let tail = |t: Terminal| match t {
            Terminal::Infinity => Ordering::Greater,
            Terminal::End => Ordering::Less,
        };
        match la.cmp(&lb) {
            Ordering::Less => tail(self.terminal),
            Ordering::Greater => tail(other.terminal).reverse(),
            Ordering::Equal => match (self.terminal, other.terminal) {
                (Terminal::End, Terminal::Infinity) => Ordering::Less,
                (Terminal::Infinity, Terminal::End) => Ordering::Greater,
                _ => Ordering::Equal,
            },
        }
    }
}

impl PartialOrd for InvariantVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ordering of invariants.
pub fn compare_inv(a: &InvariantVector, b: &InvariantVector) -> Ordering {
    a.cmp(b)
}

pub fn normalize_invariant(a: &InvariantVector) -> InvariantVector {
    a.normalize()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CenterEntry {
    #[serde(skip)]
    pub var: usize,
    #[serde(rename = "var")]
    pub name: String,
    #[serde(serialize_with = "ser_rational")]
    pub exponent: Rational,
    pub divisorial: bool,
}

pub(crate) fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// The Q-ideal `(x_1^{a_1}, ..., x_k^{a_k})`, entries ascending in `(a, plus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedCenter {
    pub entries: Vec<CenterEntry>,
}

impl WeightedCenter {
    /// Builds a center from `(variable, exponent)` pairs, sorting them.
    pub fn new(ctx: &VarContext, pairs: &[(usize, Rational)]) -> Self {
        let mut entries: Vec<CenterEntry> = pairs
            .iter()
            .map(|(v, a)| CenterEntry {
                var: *v,
                name: ctx.name(*v).to_string(),
                exponent: a.clone(),
                divisorial: ctx.is_divisorial(*v),
            })
            .collect();
        entries.sort_by(|a, b| {
            a.exponent
                .cmp(&b.exponent)
                .then(a.divisorial.cmp(&b.divisorial))
                .then(a.var.cmp(&b.var))
        });
        WeightedCenter { entries }
    }

    pub fn from_names(ctx: &VarContext, pairs: &[(&str, Rational)]) -> crate::Result<Self> {
        let mut idx = Vec::new();
        for (n, a) in pairs {
            let v = ctx.require(n)?;
            if ctx.is_parameter(v) {
                return Err(crate::Error::ParameterVariable(n.to_string()));
            }
            idx.push((v, a.clone()));
        }
        Ok(Self::new(ctx, &idx))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vars(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.var).collect()
    }

    /// Weight `1/a_i` on center variables, 0 elsewhere.
    pub fn weights(&self, nvars: usize) -> Vec<Rational> {
        let mut w = vec![Rational::zero(); nvars];
        for e in &self.entries {
            w[e.var] = e.exponent.recip();
        }
        w
    }

    /// `inv(J)`: the exponents with plus flags on divisorial variables.
    pub fn invariant(&self) -> InvariantVector {
        InvariantVector::finite(
            self.entries
                .iter()
                .map(|e| InvEntry::new(e.exponent.clone(), e.divisorial))
                .collect(),
        )
    }

    /// Whether every exponent is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| is_integer(&e.exponent))
    }

    /// Whether the point (given in the same coordinates) lies in `V(J)`.
    pub fn contains_point(&self, point: &[Rational]) -> bool {
        self.entries.iter().all(|e| point[e.var].is_zero())
    }

    /// Initial form of `f` for the weighting `1/a_i`.
    pub fn initial_form(&self, f: &Poly) -> crate::Result<Poly> {
        crate::poly::initial_form(f, &self.weights(f.nvars()))
    }
}

impl fmt::Display for WeightedCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                if e.exponent.is_one() {
                    e.name.clone()
                } else if is_integer(&e.exponent) {
                    format!("{}^{}", e.name, e.exponent)
                } else {
                    format!("{}^({})", e.name, e.exponent)
                }
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Finitely generated Rees algebra `O[f_j t^{b_j}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesAlgebra {
    pub gens: Vec<(Poly, Rational)>,
}

impl ReesAlgebra {
    /// `O[I t]`, zero generators dropped.
    pub fn from_ideal(gens: &[Poly]) -> Self {
        ReesAlgebra {
            gens: gens
                .iter()
                .filter(|g| !g.is_zero())
                .map(|g| (g.clone(), Rational::one()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|(g, _)| g.is_zero())
    }

    /// `min_j ord(f_j) / b_j` over the masked variables.
    pub fn order(&self, mask: &[bool]) -> WeightedOrder {
        self.gens
            .iter()
            .filter_map(|(f, b)| {
                f.order_in(mask)
                    .map(|o| Rational::from_integer(o.into()) / b)
            })
            .min()
            .map(WeightedOrder::Finite)
            .unwrap_or(WeightedOrder::Infinite)
    }

    /// `R` is contained in the center algebra: each `f_j` has weighted
    /// order at least `b_j`.
    pub fn admissible(&self, center: &WeightedCenter) -> bool {
        if self.gens.is_empty() {
            return true;
        }
        let w = center.weights(self.gens[0].0.nvars());
        self.gens
            .iter()
            .all(|(f, b)| weighted_order(f, &w) >= WeightedOrder::Finite(b.clone()))
    }
}

/// Whether `I t` lies in the center algebra.
pub fn admissible(gens: &[Poly], center: &WeightedCenter) -> bool {
    ReesAlgebra::from_ideal(gens).admissible(center)
}

/// Unweighted order at the origin over non-parameter variables.
pub fn ord_at_origin(gens: &[Poly], ctx: &VarContext) -> WeightedOrder {
    ReesAlgebra::from_ideal(gens).order(&ctx.center_mask())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_expr, rat, VarKind};

    fn e(v: i64, plus: bool) -> InvEntry {
        InvEntry::new(int(v), plus)
    }

    #[test]
    fn plus_rule() {
        let a = InvariantVector::finite(vec![e(2, false), e(2, true)]);
        let b = InvariantVector::finite(vec![e(2, false), e(3, false)]);
        let c = InvariantVector::finite(vec![e(2, false), e(2, false)]);
        assert!(a < b);
        assert!(c < a);
        let d = InvariantVector::finite(vec![e(2, false), e(3, false), e(3, false)]);
        assert!(c < d);
    }

    #[test]
    fn terminals() {
        let inf = InvariantVector::new(vec![e(2, false)], Terminal::Infinity);
        let longer = InvariantVector::finite(vec![e(2, false), e(100, true)]);
        assert!(longer < inf);
        assert!(InvariantVector::unit() < InvariantVector::finite(vec![e(1, false)]));
    }

    #[test]
    fn normalization() {
        let v = InvariantVector::finite(vec![e(1, false), e(1, false), e(2, false), e(3, false)]);
        assert_eq!(v.normalize().to_string(), "(2,3)");
        let w = InvariantVector::finite(vec![e(1, false), e(1, false)]);
        assert_eq!(w.normalize().to_string(), "()");
        let p = InvariantVector::finite(vec![e(1, true), e(2, false)]);
        assert_eq!(p.normalize(), p);
    }

    #[test]
    fn admissibility_examples() {
        let ctx = VarContext::free(&["x", "y", "w"]);
        let p = |t: &str| parse_expr(t, &ctx).unwrap();
        let j = WeightedCenter::from_names(&ctx, &[("x", int(2)), ("y", int(3)), ("w", int(4))]).unwrap();
        assert!(admissible(&[p("x^2 + y^3 + w^4")], &j));
        let jx = WeightedCenter::from_names(&ctx, &[("x", int(2))]).unwrap();
        assert!(!admissible(&[p("x")], &jx));
        let jxy = WeightedCenter::from_names(&ctx, &[("x", int(2)), ("y", int(2))]).unwrap();
        assert!(admissible(&[p("x*y")], &jxy));
        let half = WeightedCenter::from_names(&ctx, &[("x", rat(1, 2))]).unwrap();
        assert_eq!(half.to_string(), "(x^(1/2))");
    }

    #[test]
    fn orders_at_origin() {
        let ctx = VarContext::free(&["x", "y", "z"]);
        let p = |t: &str| parse_expr(t, &ctx).unwrap();
        assert_eq!(ord_at_origin(&[p("x^2 - y^2*z")], &ctx), WeightedOrder::Finite(int(2)));
        assert_eq!(ord_at_origin(&[p("x"), p("y^2*z^3")], &ctx), WeightedOrder::Finite(int(1)));
        assert_eq!(ord_at_origin(&[Poly::zero(3)], &ctx), WeightedOrder::Infinite);
        let pctx = VarContext::new([("x", VarKind::Free), ("z", VarKind::Parameter)]).unwrap();
        let f = parse_expr("z*x^2 + z^5", &pctx).unwrap();
        assert_eq!(ord_at_origin(&[f], &pctx), WeightedOrder::Finite(int(0)));
    }
}
