//! Coefficient rings for the factorization: Q[params], optionally with a
//! square root `alpha` of a square-free integer adjoined as an extra
//! coefficient variable.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefRing {
    /// Q[params]; only nonzero constants are units.
    Base,
    /// Q(sqrt(d))[params] with `alpha^2 = d`.
    Quadratic { alpha: usize, d: BigInt },
}

impl CoefRing {
    /// Rewrites `alpha^k` as `d^(k/2) alpha^(k mod 2)`.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let CoefRing::Quadratic { alpha, d } = self else {
            return p.clone();
        };
        if p.degree_of(*alpha) < 2 {
            return p.clone();
        }
        let d = Rational::from_integer(d.clone());
        let mut out = Poly::zero(p.nvars());
        for (m, c) in p.terms() {
            let k = m.exp(*alpha);
            let c = c * num_traits::pow(d.clone(), (k / 2) as usize);
            out.add_term(m.with_exp(*alpha, k % 2), c);
        }
        out
    }

    pub fn reduce_series(&self, s: &TruncatedSeries) -> TruncatedSeries {
        match self {
            CoefRing::Base => s.clone(),
            _ => TruncatedSeries::new(self.reduce(s.body()), s.mask().to_vec(), s.truncation()),
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    pub fn mul_series(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
        self.reduce_series(&a.mul(b))
    }

    /// Inverse of a unit: a nonzero constant, or `a + b alpha` with rational
    /// `a`, `b`.
    pub fn inverse(&self, p: &Poly) -> Option<Poly> {
        let n = p.nvars();
        if p.is_zero() {
            return None;
        }
        if p.is_constant() {
            return Some(Poly::constant(n, p.constant_term().recip()));
        }
        let CoefRing::Quadratic { alpha, d } = self else {
            return None;
        };
        let p = self.reduce(p);
        if p.variables() != vec![*alpha] {
            return None;
        }
        let a = p.constant_term();
        let b = p.coeff(&Monomial::one(n).with_exp(*alpha, 1));
        let norm = &a * &a - Rational::from_integer(d.clone()) * &b * &b;
        if norm.is_zero() {
            return None;
        }
        let conj = &Poly::constant(n, a) - &Poly::var(n, *alpha).scale(&b);
        Some(conj.scale(&norm.recip()))
    }

    pub fn is_unit(&self, p: &Poly) -> bool {
        self.inverse(p).is_some()
    }

    pub fn name(&self) -> String {
        match self {
            CoefRing::Base => "Q".to_string(),
            CoefRing::Quadratic { d, .. } => format!("Q(sqrt({d}))"),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            CoefRing::Base => 1,
            CoefRing::Quadratic { .. } => 2,
        }
    }
}

/// Outcome of Gaussian elimination over a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elimination {
    /// Pivot column of each row, in row order.
    Independent(Vec<usize>),
    /// Some row is a combination of earlier ones.
    Dependent,
    /// A pivot would need the inverse of a non-unit.
    NonUnit(Poly),
}

/// Row-reduces `rows` over `cols`, choosing the first unit pivot in each
/// row. Rows are independent iff every row keeps a nonzero entry.
pub fn eliminate(ring: &CoefRing, rows: &[Vec<Poly>], cols: &[usize]) -> Elimination {
    let mut work: Vec<Vec<Poly>> = rows.to_vec();
    let mut pivots = Vec::new();
    for i in 0..work.len() {
        let row = work[i].clone();
        let Some(&col) = cols.iter().find(|&&c| ring.is_unit(&row[c])) else {
            return match cols.iter().find(|&&c| !row[c].is_zero()) {
                Some(&c) => Elimination::NonUnit(row[c].clone()),
                None => Elimination::Dependent,
            };
        };
        let inv = ring.inverse(&row[col]).expect("unit");
        for later in work.iter_mut().skip(i + 1) {
            if later[col].is_zero() {
                continue;
            }
            let factor = ring.mul(&later[col], &inv);
            for c in 0..later.len() {
                let t = ring.mul(&factor, &row[c]);
                later[c] = &later[c] - &t;
            }
        }
        pivots.push(col);
    }
    Elimination::Independent(pivots)
}

/// Inverse of a square matrix with unit pivots.
pub fn invert(ring: &CoefRing, m: &[Vec<Poly>]) -> Result<Vec<Vec<Poly>>> {
    let k = m.len();
    let nv = m.first().and_then(|r| r.first()).map_or(0, |p| p.nvars());
    let mut a: Vec<Vec<Poly>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| {
                if i == j {
                    Poly::one(nv)
                } else {
                    Poly::zero(nv)
                }
            }));
            r
        })
        .collect();
    for c in 0..k {
        let p = (c..k)
            .find(|&r| ring.is_unit(&a[r][c]))
            .ok_or_else(|| Error::unsupported("linear change needs a non-unit pivot"))?;
        a.swap(c, p);
        let inv = ring.inverse(&a[c][c]).expect("unit");
        a[c] = a[c].iter().map(|x| ring.mul(x, &inv)).collect();
        for r in 0..k {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..2 * k {
                let t = ring.mul(&f, &a[c][j]);
                a[r][j] = &a[r][j] - &t;
            }
        }
    }
    debug_assert!(a.iter().enumerate().all(|(i, r)| r[i].constant_term().is_one()));
    Ok(a.into_iter().map(|r| r[k..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn q2() -> CoefRing {
        CoefRing::Quadratic { alpha: 1, d: BigInt::from(2) }
    }

    #[test]
    fn quadratic_arithmetic() {
        let r = q2();
        let a = &Poly::constant(2, int(1)) + &Poly::var(2, 1);
        let inv = r.inverse(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), Poly::one(2));
        let sq = r.mul(&Poly::var(2, 1), &Poly::var(2, 1));
        assert_eq!(sq, Poly::constant(2, int(2)));
        assert!(CoefRing::Base.inverse(&Poly::var(2, 1)).is_none());
    }

    #[test]
    fn matrix_inverse() {
        let r = q2();
        let one = Poly::one(2);
        let al = Poly::var(2, 1);
        let m = vec![vec![one.clone(), al.clone()], vec![one.clone(), -&al]];
        let inv = invert(&r, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Poly::zero(2);
                for k in 0..2 {
                    s = &s + &r.mul(&m[i][k], &inv[k][j]);
                }
                assert_eq!(s, if i == j { one.clone() } else { Poly::zero(2) });
            }
        }
        let dep = vec![vec![one.clone(), al.clone()], vec![al.clone(), Poly::constant(2, int(2))]];
        assert_eq!(eliminate(&r, &dep, &[0]), Elimination::Dependent);
        assert!(matches!(eliminate(&r, &dep, &[0, 1]), Elimination::Dependent));
    }
}
