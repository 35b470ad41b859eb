use std::collections::BTreeMap;

use super::polynomial::Poly;
use super::rational::Rational;

/// Power series in the masked variables with polynomial coefficients in the
/// rest, known modulo terms of masked degree above `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    body: Poly,
    mask: Vec<bool>,
    n: u32,
}

impl TruncatedSeries {
    pub const DEFAULT_TRUNCATION: u32 = 16;

    pub fn new(body: Poly, mask: Vec<bool>, n: u32) -> Self {
        assert_eq!(body.nvars(), mask.len());
        let body = body.truncate(&mask, n);
        TruncatedSeries { body, mask, n }
    }

    pub fn zero(mask: Vec<bool>, n: u32) -> Self {
        let nv = mask.len();
        Self::new(Poly::zero(nv), mask, n)
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn into_body(self) -> Poly {
        self.body
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Lowest masked degree present; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.body.order_in(&self.mask)
    }

    fn lift(&self, p: Poly) -> Self {
        Self::new(p, self.mask.clone(), self.n)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.lift(&self.body + &other.body)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.lift(&self.body - &other.body)
    }

    pub fn neg(&self) -> Self {
        self.lift(-&self.body)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.lift(self.body.scale(c))
    }

    /// Product, truncating partial products as they are formed.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero(self.body.nvars());
        for (a, ca) in self.body.terms() {
            let da = a.degree_in(&self.mask);
            for (b, cb) in other.body.terms() {
                if da + b.degree_in(&self.mask) <= self.n {
                    out.add_term(a.mul(b), ca * cb);
                }
            }
        }
        TruncatedSeries {
            body: out,
            mask: self.mask.clone(),
            n: self.n,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.lift(Poly::one(self.body.nvars()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Replaces `var` by `g`; `g` must have positive order when `var` is
    /// masked, so the result is well defined modulo the truncation.
    pub fn substitute(&self, var: usize, g: &Self) -> Self {
        let mut out = Self::zero(self.mask.clone(), self.n);
        let mut power = self.lift(Poly::one(self.body.nvars()));
        let top = self.body.degree_of(var);
        let mut slices = vec![Poly::zero(self.body.nvars()); top as usize + 1];
        for (m, c) in self.body.terms() {
            slices[m.exp(var) as usize].add_term(m.with_exp(var, 0), c.clone());
        }
        for (k, slice) in slices.into_iter().enumerate() {
            if k > 0 {
                power = power.mul(g);
                if power.is_zero() {
                    break;
                }
            }
            if !slice.is_zero() {
                out = out.add(&self.lift(slice).mul(&power));
            }
        }
        out
    }

    /// Simultaneous substitution of every variable. Terms are grouped by
    /// their exponents in the variables that actually move, so each power
    /// product is formed once.
    pub fn compose(&self, images: &[Self]) -> Self {
        let nv = self.body.nvars();
        let moving: Vec<usize> = (0..nv)
            .filter(|&i| images[i].body != Poly::var(nv, i))
            .collect();
        let mut groups: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in self.body.terms() {
            let key: Vec<u32> = moving.iter().map(|&i| m.exp(i)).collect();
            let mut rest = m.clone();
            for &i in &moving {
                rest = rest.with_exp(i, 0);
            }
            groups
                .entry(key)
                .or_insert_with(|| Poly::zero(nv))
                .add_term(rest, c.clone());
        }
        let mut cache: Vec<Vec<Self>> = moving
            .iter()
            .map(|&i| vec![self.lift(Poly::one(nv)), images[i].clone()])
            .collect();
        let mut out = Self::zero(self.mask.clone(), self.n);
        for (key, coeff) in groups {
            let mut t = self.lift(coeff);
            for (k, &e) in key.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while cache[k].len() <= e {
                    let next = cache[k][cache[k].len() - 1].mul(&images[moving[k]]);
                    cache[k].push(next);
                }
                t = t.mul(&cache[k][e]);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// The same series known to a lower precision.
    pub fn retruncate(&self, n: u32) -> Self {
        Self::new(self.body.clone(), self.mask.clone(), n.min(self.n))
    }

    /// Multiplicative inverse when the masked-degree-0 part is a nonzero
    /// rational constant.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.body.homogeneous_part(&self.mask, 0);
        if !c0.is_constant() || c0.is_zero() {
            return None;
        }
        let c = c0.constant_term();
        // u = c (1 - r), u^-1 = c^-1 (1 + r + r^2 + ...)
        let r = self.scale(&c.recip()).neg().add(&self.lift(Poly::one(self.body.nvars())));
        let mut acc = self.lift(Poly::one(self.body.nvars()));
        let mut power = acc.clone();
        for _ in 0..self.n {
            power = power.mul(&r);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Some(acc.scale(&c.recip()))
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::int;

    fn mask() -> Vec<bool> {
        vec![true, true, false]
    }

    #[test]
    fn multiplication_truncates() {
        let x = Poly::var(3, 0);
        let z = Poly::var(3, 2);
        let s = TruncatedSeries::new(&x + &(&x * &z), mask(), 2);
        let sq = s.mul(&s).mul(&s);
        assert!(sq.is_zero());
        let sq2 = s.mul(&s);
        assert_eq!(sq2.body(), &(&(&x * &x) * &(&Poly::one(3) + &z).pow(2)));
    }

    #[test]
    fn inverse_of_unit() {
        let x = Poly::var(3, 0);
        let u = TruncatedSeries::new(&Poly::constant(3, int(2)) - &x, mask(), 6);
        let inv = u.inverse().unwrap();
        let one = u.mul(&inv);
        assert_eq!(one.body(), &Poly::one(3));
        assert!(TruncatedSeries::new(x, mask(), 6).inverse().is_none());
    }
}
