use num_traits::{Signed, Zero};

use super::polynomial::{Monomial, Poly};
use super::rational::Rational;

fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&v| a.involves(v) || b.involves(v))
}

fn coeffs(f: &Poly, v: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(f.nvars()); f.degree_of(v) as usize + 1];
    for (m, c) in f.terms() {
        out[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
    }
    out
}

fn lead_coeff(f: &Poly, v: usize) -> Poly {
    coeffs(f, v).pop().expect("nonzero")
}

fn content(f: &Poly, v: usize) -> Poly {
    coeffs(f, v)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Poly::zero(f.nvars()), |g, c| gcd(&g, c))
}

fn var_power(nvars: usize, v: usize, e: u32) -> Monomial {
    Monomial::one(nvars).with_exp(v, e)
}

fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_of(v);
    let lb = lead_coeff(b, v);
    let mut r = a.clone();
    let one = num_traits::One::one();
    while !r.is_zero() && r.degree_of(v) >= db {
        let dr = r.degree_of(v);
        let lr = lead_coeff(&r, v);
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&var_power(a.nvars(), v, dr - db), &one));
    }
    r
}

fn primitive(f: &Poly, v: usize) -> Poly {
    let c = content(f, v);
    f.div_exact(&c).expect("content divides")
}

/// Greatest common divisor over Q, normalized to leading coefficient 1.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(v) = main_var(a, b) else {
        return Poly::one(a.nvars());
    };
    if !a.involves(v) {
        return gcd(a, &content(b, v));
    }
    if !b.involves(v) {
        return gcd(&content(a, v), b);
    }
    let c = gcd(&content(a, v), &content(b, v));
    let (mut p, mut q) = (primitive(a, v), primitive(b, v));
    if p.degree_of(v) < q.degree_of(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.involves(v) {
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive(&r, v) };
    }
    // q is a nonzero element free of v: the primitive parts are coprime in v.
    let g = if q.is_zero() { p } else { Poly::one(a.nvars()) };
    (&c * &g).monic()
}

/// Product of the distinct irreducible factors, normalized to leading
/// coefficient 1.
pub fn squarefree_part(f: &Poly) -> Poly {
    if f.is_zero() || f.is_constant() {
        return f.monic();
    }
    let g = (0..f.nvars())
        .filter(|&v| f.involves(v))
        .fold(f.clone(), |g, v| gcd(&g, &f.derivative(v)));
    f.div_exact(&g).expect("gcd divides").monic()
}

/// Square root of a rational, if it is a square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Exact square root, if `p` is the square of a polynomial.
pub fn sqrt_exact(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let (lm, lc) = p.leading_term()?;
    let half: Option<Vec<u32>> = lm
        .exps()
        .iter()
        .map(|e| if e % 2 == 0 { Some(e / 2) } else { None })
        .collect();
    let lead_m = Monomial::new(half?);
    let lead_c = rational_sqrt(lc)?;
    let mut root = Poly::term(lead_m.clone(), lead_c.clone());
    let mut last = lead_m.clone();
    loop {
        let rem = p - &(&root * &root);
        let Some((m, c)) = rem.leading_term() else {
            return Some(root);
        };
        let t = lead_m.quotient(m)?;
        if t >= last {
            return None;
        }
        let tc = c / (&lead_c * Rational::from_integer(2.into()));
        if tc.is_zero() {
            return None;
        }
        root.add_term(t.clone(), tc);
        last = t;
    }
}
