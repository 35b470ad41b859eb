//! Pre-SNC series and the direct factorization algorithm.

use num_traits::One;
use serde::Serialize;

use super::field::CoefRing;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, TruncatedSeries};

/// Cap on substitution steps; the algorithm provably terminates well
/// before this on desk-scale inputs.
const STEP_CAP: usize = 100_000;

/// `x^lead + tail` with every tail term of degree above `|lead|`, in the
/// masked (series) variables. The lead coefficient is exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreSnc {
    lead: Monomial,
    tail: TruncatedSeries,
    ring: CoefRing,
}

impl PreSnc {
    /// Normalizes `f` by the unit coefficient of its single lowest-degree
    /// term.
    pub fn new(f: &Poly, mask: Vec<bool>, n: u32, ring: CoefRing) -> Result<Self> {
        let d = f.order_in(&mask).ok_or(Error::ZeroInput)?;
        let low = f.homogeneous_part(&mask, d).coefficients_in(&mask);
        if low.len() != 1 {
            return Err(Error::unsupported("lowest-degree part is not a single monomial"));
        }
        let (lead, c) = low.into_iter().next().expect("one term");
        let inv = ring
            .inverse(&c)
            .ok_or_else(|| Error::unsupported("lead coefficient is not a unit"))?;
        let g = ring.mul(f, &inv);
        let lead_poly = Poly::term(lead.clone(), Rational::one());
        let tail = TruncatedSeries::new(&g - &lead_poly, mask, n);
        Self::from_parts(lead, tail, ring)
    }

    pub fn from_parts(lead: Monomial, tail: TruncatedSeries, ring: CoefRing) -> Result<Self> {
        let d = lead.degree_in(tail.mask());
        if lead.degree() != d {
            return Err(Error::assertion("lead monomial involves coefficient variables"));
        }
        if tail.order().is_some_and(|e| e <= d) {
            return Err(Error::unsupported("tail has terms of degree at most the lead degree"));
        }
        Ok(PreSnc { lead, tail, ring })
    }

    pub fn lead(&self) -> &Monomial {
        &self.lead
    }

    pub fn tail(&self) -> &TruncatedSeries {
        &self.tail
    }

    pub fn ring(&self) -> &CoefRing {
        &self.ring
    }

    pub fn mask(&self) -> &[bool] {
        self.tail.mask()
    }

    pub fn truncation(&self) -> u32 {
        self.tail.truncation()
    }

    pub fn series(&self) -> TruncatedSeries {
        let lead = Poly::term(self.lead.clone(), Rational::one());
        self.tail.add(&TruncatedSeries::new(lead, self.mask().to_vec(), self.truncation()))
    }
}

/// Lowest degree of the tail; `None` stands for infinity.
pub fn residual_order(f: &PreSnc) -> Option<u32> {
    f.tail.order()
}

/// `x^lead / x_j` for each variable `j` of the lead monomial.
pub fn cofactors(lead: &Monomial) -> Vec<(usize, Monomial)> {
    (0..lead.exps().len())
        .filter(|&j| lead.exp(j) > 0)
        .map(|j| (j, lead.with_exp(j, lead.exp(j) - 1)))
        .collect()
}

/// Degree-`e` tail monomials, ascending, with their coefficients.
fn degree_terms(f: &PreSnc, e: u32) -> Vec<(Monomial, Poly)> {
    f.tail
        .body()
        .homogeneous_part(f.mask(), e)
        .coefficients_in(f.mask())
        .into_iter()
        .collect()
}

fn divisible(m: &Monomial, cof: &[(usize, Monomial)]) -> Option<(usize, Monomial)> {
    cof.iter().find(|(_, c)| c.divides(m)).cloned()
}

/// Degree-`e` tail monomials divisible by some cofactor.
pub fn minimal_set(f: &PreSnc, e: u32) -> Vec<Monomial> {
    let cof = cofactors(&f.lead);
    degree_terms(f, e)
        .into_iter()
        .map(|(m, _)| m)
        .filter(|m| divisible(m, &cof).is_some())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SncFactor {
    pub var: usize,
    pub exponent: u32,
    /// `g` in the factor `x_var + g`.
    #[serde(skip)]
    pub correction: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorizationResult {
    /// `f = prod (x_i + g_i)^{a_i}` modulo degree above `truncation`.
    Factors { factors: Vec<SncFactor>, steps: usize, truncation: u32 },
    /// The minimal set of degree `degree` is empty; `monomials` are the
    /// degree-`degree` tail monomials.
    Failure { degree: u32, monomials: Vec<Monomial> },
}

impl FactorizationResult {
    pub fn is_success(&self) -> bool {
        matches!(self, FactorizationResult::Factors { .. })
    }
}

fn var_series(nv: usize, i: usize, mask: &[bool], n: u32) -> TruncatedSeries {
    TruncatedSeries::new(Poly::var(nv, i), mask.to_vec(), n)
}

/// Removes tail terms one at a time by substitutions
/// `x_j -> x_j - (1/a_j) c x^alpha / cofactor_j` until the residual order
/// exceeds `n` or the minimal set is empty.
pub fn snc_factorize(f: &PreSnc, n: u32) -> Result<FactorizationResult> {
    if f.truncation() < n {
        return Err(Error::assertion("series known to lower degree than requested"));
    }
    let ring = f.ring.clone();
    let mask = f.mask().to_vec();
    let nv = mask.len();
    let lead_poly = TruncatedSeries::new(Poly::term(f.lead.clone(), Rational::one()), mask.clone(), n);
    let cof = cofactors(&f.lead);
    let mut cur = PreSnc {
        lead: f.lead.clone(),
        tail: TruncatedSeries::new(f.tail.body().clone(), mask.clone(), n),
        ring: ring.clone(),
    };
    let mut phi: Vec<TruncatedSeries> = (0..nv).map(|i| var_series(nv, i, &mask, n)).collect();
    let mut steps = 0;
    let mut last: Option<(std::cmp::Reverse<u32>, usize)> = None;
    loop {
        let e = match residual_order(&cur) {
            Some(e) if e <= n => e,
            _ => break,
        };
        let terms = degree_terms(&cur, e);
        let m_e: Vec<&(Monomial, Poly)> =
            terms.iter().filter(|(m, _)| divisible(m, &cof).is_some()).collect();
        // e grows, and at fixed e the minimal set shrinks
        let key = (std::cmp::Reverse(e), m_e.len());
        if let Some(prev) = last {
            if key >= prev {
                return Err(Error::assertion(format!(
                    "(e, |M_e|) did not decrease: {prev:?} -> {key:?}"
                )));
            }
        }
        last = Some(key);
        if m_e.is_empty() {
            let monomials: Vec<Monomial> = terms.into_iter().map(|(m, _)| m).collect();
            verify_failure(&cur.lead, &monomials)?;
            return Ok(FactorizationResult::Failure { degree: e, monomials });
        }
        steps += 1;
        if steps > STEP_CAP {
            return Err(Error::assertion("factorization step cap reached"));
        }
        let (alpha, c) = m_e[0];
        let (j, cofactor) = divisible(alpha, &cof).expect("in the minimal set");
        let q = cofactor.quotient(alpha).expect("cofactor divides");
        let aj = Rational::from_integer(f.lead.exp(j).into());
        let h = c.mul_monomial(&q, &(-aj.recip()));
        let image = var_series(nv, j, &mask, n).add(&TruncatedSeries::new(h, mask.clone(), n));
        let full = ring.reduce_series(&cur.tail.add(&lead_poly).substitute(j, &image));
        let tail = full.sub(&lead_poly);
        if tail.order().is_some_and(|o| o < e) {
            return Err(Error::assertion("substitution introduced lower-degree terms"));
        }
        let left = tail.body().homogeneous_part(&mask, e).coefficients_in(&mask);
        if left.contains_key(alpha) {
            return Err(Error::assertion("substitution did not cancel the targeted term"));
        }
        phi = phi.iter().map(|p| ring.reduce_series(&p.substitute(j, &image))).collect();
        cur.tail = tail;
    }
    let psi = invert_map(&ring, &phi, &mask, n);
    let factors: Vec<SncFactor> = cof
        .iter()
        .map(|(j, _)| SncFactor {
            var: *j,
            exponent: f.lead.exp(*j),
            correction: psi[*j].sub(&var_series(nv, *j, &mask, n)).into_body(),
        })
        .collect();
    verify_product(f, &factors, n)?;
    Ok(FactorizationResult::Factors { factors, steps, truncation: n })
}

/// `Psi = Phi^{-1}` for `Phi = x + H` by iterating `Psi <- x - H(Psi)`.
fn invert_map(
    ring: &CoefRing,
    phi: &[TruncatedSeries],
    mask: &[bool],
    n: u32,
) -> Vec<TruncatedSeries> {
    let nv = mask.len();
    let x: Vec<TruncatedSeries> = (0..nv).map(|i| var_series(nv, i, mask, n)).collect();
    let h: Vec<TruncatedSeries> = phi.iter().zip(&x).map(|(p, xi)| p.sub(xi)).collect();
    // psi = x - h(psi); each pass fixes one more degree, so pass k only
    // needs precision k + 1.
    let mut psi = x.clone();
    for k in 1..=n {
        let prec = (k + 1).min(n);
        let hk: Vec<TruncatedSeries> = h.iter().map(|s| s.retruncate(prec)).collect();
        let pk: Vec<TruncatedSeries> = psi.iter().map(|s| s.retruncate(prec)).collect();
        psi = (0..nv)
            .map(|i| {
                if mask[i] {
                    let body = x[i].sub(&ring.reduce_series(&hk[i].compose(&pk))).into_body();
                    TruncatedSeries::new(body, mask.to_vec(), n)
                } else {
                    x[i].clone()
                }
            })
            .collect();
    }
    psi
}

/// Checks `prod (x_i + g_i)^{a_i} = f` through degree `n`.
pub fn verify_product(f: &PreSnc, factors: &[SncFactor], n: u32) -> Result<()> {
    let ring = f.ring();
    let mask = f.mask().to_vec();
    let nv = mask.len();
    let mut prod = TruncatedSeries::new(Poly::one(nv), mask.clone(), n);
    for fac in factors {
        let base = TruncatedSeries::new(&Poly::var(nv, fac.var) + &fac.correction, mask.clone(), n);
        for _ in 0..fac.exponent {
            prod = ring.mul_series(&prod, &base);
        }
    }
    let f = TruncatedSeries::new(f.series().into_body(), mask, n);
    if !prod.sub(&f).is_zero() {
        return Err(Error::assertion("factor product differs from the series"));
    }
    Ok(())
}

/// Every certificate monomial must fail all cofactor divisibility tests.
pub fn verify_failure(lead: &Monomial, monomials: &[Monomial]) -> Result<()> {
    let cof = cofactors(lead);
    if monomials.is_empty() {
        return Err(Error::assertion("empty failure certificate"));
    }
    match monomials.iter().find(|m| divisible(m, &cof).is_some()) {
        Some(_) => Err(Error::assertion("certificate monomial is divisible by a cofactor")),
        None => Ok(()),
    }
}

impl SncFactor {
    pub fn is_trivial(&self) -> bool {
        self.correction.is_zero()
    }
}
