//! Dense univariate polynomials over Q and their factorization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::polynomial::{Monomial, Poly};
use super::rational::{lcm_int, Rational};
use crate::error::{Error, Result};

/// Default bound on the degree accepted by [`factor`].
pub const DEGREE_BOUND: usize = 8;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer((*c).into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Rational::one()])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        UniPoly(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero has degree 0 here, callers check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        UniPoly(self.0.iter().map(|c| c * &l).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = other.0.get(i).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.degree();
        let dl = d.lead();
        if rem.len() < d.0.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.divrem(self).1.is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer multiple with coprime integer coefficients and positive lead.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.0 {
            den = lcm_int(&den, c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn from_poly(p: &Poly, var: usize) -> Option<Self> {
        let mut coeffs = vec![Rational::zero(); p.degree_of(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.exps().iter().enumerate().any(|(i, e)| i != var && *e > 0) {
                return None;
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> Poly {
        Poly::from_terms(
            nvars,
            self.0.iter().enumerate().map(|(i, c)| {
                (Monomial::one(nvars).with_exp(var, i as u32), c.clone())
            }),
        )
    }

    /// Discriminant of the polynomial, from its resultant with the derivative:
    /// `(-1)^(n(n-1)/2) res(f, f') / lead(f)`.
    pub fn discriminant(&self) -> Rational {
        let n = self.degree();
        let p = self.to_poly(1, 0);
        let dp = self.derivative().to_poly(1, 0);
        let r = super::resultant::resultant(&p, &dp, 0)
            .constant_term();
        let sign = if (n * n.saturating_sub(1) / 2).is_multiple_of(2) {
            Rational::one()
        } else {
            -Rational::one()
        };
        sign * r / self.lead()
    }

    pub fn render(&self, var: &str) -> String {
        let names = vec![var.to_string()];
        self.to_poly(1, 0).render(&names)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// Yun's square-free decomposition of a monic polynomial: pairs
/// `(factor, multiplicity)` with pairwise coprime square-free factors.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let f = f.monic();
    if f.degree() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.divrem(&a).0;
    let mut c = df.divrem(&a).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() > 0 {
        a = b.gcd(&d);
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        if a.degree() > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

/// Positive divisors of `n`; `None` if `|n|` is too large to enumerate.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1 << 40 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Rational roots of a nonzero polynomial, ascending, without multiplicity.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::assertion("rational roots of zero"));
    }
    let mut roots = Vec::new();
    let mut g = f.monic();
    if g.0[0].is_zero() {
        roots.push(Rational::zero());
        let k = g.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
        g = UniPoly::new(g.0[k..].to_vec());
    }
    if g.degree() == 0 {
        return Ok(roots);
    }
    let ints = g.primitive_integer();
    let ps = divisors(&ints[0])
        .ok_or_else(|| Error::unsupported("constant term too large for the rational root test"))?;
    let qs = divisors(ints.last().expect("nonconstant"))
        .ok_or_else(|| Error::unsupported("leading coefficient too large for the rational root test"))?;
    for p in &ps {
        for q in &qs {
            for cand in [Rational::new(p.clone(), q.clone()), -Rational::new(p.clone(), q.clone())] {
                if !roots.contains(&cand) && g.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn lagrange(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let mut out = UniPoly::zero();
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = UniPoly::one();
        let mut den = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UniPoly::linear(xj));
                den *= xi - xj;
            }
        }
        out = out.add(&basis.scale(&(&ys[i] / den)));
    }
    out
}

/// Finds a monic factor of degree `k` of the square-free, root-free `f` by
/// Kronecker's method, or `None` if there is none.
fn kronecker_factor(f: &UniPoly, k: usize) -> Result<Option<UniPoly>> {
    let ints = UniPoly::new(
        f.primitive_integer()
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    );
    // Evaluation points with few divisors keep the search small.
    let mut pts: Vec<(usize, Rational, Vec<BigInt>)> = Vec::new();
    for x in -24i64..=24 {
        let xr = Rational::from_integer(x.into());
        let v = ints.eval(&xr).to_integer();
        if let Some(ds) = divisors(&v) {
            pts.push((ds.len(), xr, ds));
        }
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())).then(a.1.cmp(&b.1)));
    if pts.len() < k + 1 {
        return Err(Error::unsupported("no evaluation points for factor search"));
    }
    pts.truncate(k + 1);
    let xs: Vec<Rational> = pts.iter().map(|p| p.1.clone()).collect();
    let choices: Vec<Vec<Rational>> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut v = Vec::new();
            for d in &p.2 {
                v.push(Rational::from_integer(d.clone()));
                // Sign of the first value fixed: factors are up to sign.
                if i > 0 {
                    v.push(-Rational::from_integer(d.clone()));
                }
            }
            v
        })
        .collect();
    let total: usize = choices.iter().map(|c| c.len()).product();
    if total > 2_000_000 {
        return Err(Error::unsupported("factor search space too large"));
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let ys: Vec<Rational> = idx.iter().zip(&choices).map(|(i, c)| c[*i].clone()).collect();
        let cand = lagrange(&xs, &ys);
        if cand.degree() == k
            && cand.coeffs().iter().all(|c| c.is_integer())
            && cand.divides(&ints)
        {
            return Ok(Some(cand.monic()));
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    for r in rational_roots(&rest)? {
        let lin = UniPoly::linear(&r);
        rest = rest.divrem(&lin).0;
        out.push(lin);
    }
    let mut stack = vec![rest];
    while let Some(g) = stack.pop() {
        if g.degree() == 0 {
            continue;
        }
        let mut split = None;
        for k in 2..=g.degree() / 2 {
            if let Some(h) = kronecker_factor(&g, k)? {
                split = Some(h);
                break;
            }
        }
        match split {
            Some(h) => {
                let q = g.divrem(&h).0;
                stack.push(h);
                stack.push(q.monic());
            }
            None => out.push(g),
        }
    }
    Ok(out)
}

/// Factorization of a nonzero polynomial into monic irreducibles over Q with
/// multiplicities, sorted by degree then coefficients. The leading
/// coefficient is dropped.
pub fn factor(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    factor_bounded(f, DEGREE_BOUND)
}

pub fn factor_bounded(f: &UniPoly, bound: usize) -> Result<Vec<(UniPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.degree() > bound {
        return Err(Error::DegreeBound {
            degree: f.degree(),
            bound,
        });
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for g in factor_squarefree(&part)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.cmp(&b.0)));
    Ok(out)
}
