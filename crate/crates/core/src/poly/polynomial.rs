use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::context::VarContext;
use super::rational::Rational;

/// Exponent vector, ordered graded-lexicographically: total degree first, then
/// lexicographically with the first variable heaviest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree counted over the variables selected by `mask`.
    pub fn degree_in(&self, mask: &[bool]) -> u32 {
        self.0
            .iter()
            .zip(mask)
            .filter(|(_, m)| **m)
            .map(|(e, _)| *e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if it divides.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }

    /// Keeps the exponents selected by `mask`, zeroes the rest.
    pub fn project(&self, mask: &[bool]) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(mask)
                .map(|(e, m)| if *m { *e } else { 0 })
                .collect(),
        )
    }

    pub fn extend(&self, nvars: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(nvars, 0);
        Monomial(v)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q in a fixed number of variables. Zero coefficients
/// are never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Maximum degree over the masked variables; `None` for zero.
    pub fn degree_in(&self, mask: &[bool]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(mask)).max()
    }

    /// Minimum degree over the masked variables; `None` for zero.
    pub fn order_in(&self, mask: &[bool]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(mask)).min()
    }

    pub fn degree_of(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Largest power of `var` dividing every term.
    pub fn var_valuation(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.involves(i)).collect()
    }

    /// Terms whose masked degree equals `d`.
    pub fn homogeneous_part(&self, mask: &[bool], d: u32) -> Poly {
        self.filter(|m| m.degree_in(mask) == d)
    }

    /// Drops terms of masked degree above `n`.
    pub fn truncate(&self, mask: &[bool], n: u32) -> Poly {
        self.filter(|m| m.degree_in(mask) <= n)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Replaces `var` by `g` everywhere.
    pub fn substitute(&self, var: usize, g: &Poly) -> Poly {
        assert_eq!(g.nvars, self.nvars, "substitution across rings");
        let mut by_power: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_power
                .entry(m.0[var])
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(m.with_exp(var, 0), c.clone());
        }
        let mut out = Poly::zero(self.nvars);
        let mut power = Poly::one(self.nvars);
        let mut current = 0u32;
        for (e, coeff) in by_power {
            while current < e {
                power = &power * g;
                current += 1;
            }
            out = &out + &(&coeff * &power);
        }
        out
    }

    /// Sets `var` to the constant `value`.
    pub fn eval_var(&self, var: usize, value: &Rational) -> Poly {
        self.substitute(var, &Poly::constant(self.nvars, value.clone()))
    }

    /// Evaluates every variable; `values.len()` must equal `nvars`.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t *= num_traits::pow(values[i].clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Simultaneous substitution `x_i -> images[i]`. Images may live in a
    /// ring with a different number of variables.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Poly>> = images
            .iter()
            .map(|g| vec![Poly::one(g.nvars), g.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e];
            }
            out = &out + &t;
        }
        out
    }

    /// Embeds into a ring with `nvars >= self.nvars`, new variables appended.
    pub fn extend(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend(nvars), c.clone()))
                .collect(),
        }
    }

    /// Divides by `var^k`; `None` if some term has a smaller power.
    pub fn div_var_power(&self, var: usize, k: u32) -> Option<Poly> {
        if k == 0 {
            return Some(self.clone());
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] < k {
                return None;
            }
            out.add_term(m.with_exp(var, m.0[var] - k), c.clone());
        }
        Some(out)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let q = lm.quotient(&m)?;
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&q, &qc);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Groups terms by their exponents on the masked variables. The map
    /// values are the coefficients, free of masked variables.
    pub fn coefficients_in(&self, mask: &[bool]) -> BTreeMap<Monomial, Poly> {
        let complement: Vec<bool> = mask.iter().map(|m| !m).collect();
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.project(mask))
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(m.project(&complement), c.clone());
        }
        out
    }

    /// Linear part in the masked variables, as (variable, coefficient) pairs
    /// where coefficients may involve unmasked variables.
    pub fn linear_part(&self, mask: &[bool]) -> Vec<(usize, Poly)> {
        let coeffs = self.coefficients_in(mask);
        (0..self.nvars)
            .filter(|&i| mask[i])
            .filter_map(|i| {
                coeffs
                    .get(&Monomial::var(self.nvars, i))
                    .map(|c| (i, c.clone()))
            })
            .collect()
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Moves variable `i` to `map[i]` in a ring with `nvars` variables.
    /// `None` if a variable mapped to `None` occurs.
    pub fn rename(&self, map: &[Option<usize>], nvars: usize) -> Option<Poly> {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, k) in m.0.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                e[map[i]?] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// Renders with the given variable names, largest term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{}*{}", a, m.render(names)));
            }
        }
        out
    }

    pub fn display<'a>(&'a self, ctx: &'a VarContext) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, ctx }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    ctx: &'a VarContext,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(self.ctx.names()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "adding polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "subtracting polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "multiplying polynomials from different rings");
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{int, rat};

    fn xy() -> (Poly, Poly) {
        (Poly::var(2, 0), Poly::var(2, 1))
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![3, 0]);
        let b = Monomial::new(vec![0, 3]);
        let c = Monomial::new(vec![1, 1]);
        assert!(a > b);
        assert!(b > c);
    }

    #[test]
    fn cancellation_removes_terms() {
        let (x, y) = xy();
        let p = &(&x + &y) - &y;
        assert_eq!(p, x);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn substitution_expands() {
        let (x, y) = xy();
        let f = &x * &y;
        let g = &y - &x.pow(2);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(f.substitute(1, &g).render(&names), "-x^3 + x*y");
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy();
        let a = &x + &y;
        let b = &x - &y.scale(&int(2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &Poly::one(2)).div_exact(&a), None);
    }

    #[test]
    fn render_rational_coefficients() {
        let (x, y) = xy();
        let p = &x.scale(&rat(-1, 2)) + &Poly::constant(2, int(3));
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.render(&names), "-1/2*x + 3");
        assert_eq!((&y * &y).render(&names), "y^2");
    }
}
