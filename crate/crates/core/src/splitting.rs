//! Splitting forms: homogeneous forms that factor into linear forms over a
//! finite extension. Monicization, specialization polynomials, root
//! analysis, splitting-field degrees, ramification loci and the cyclic
//! forms `cp(n)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::univariate::{self, UniPoly};
use crate::poly::{
    discriminant, gcd, int, rational_sqrt, resultant, sqrt_exact, squarefree_part, Monomial,
    Poly, Rational, TruncatedSeries, VarContext, VarKind,
};

/// Largest `n` accepted by [`cyclic_form`].
pub const CYCLIC_BOUND: usize = 6;

/// A form homogeneous in its center variables, with coefficients in the
/// parameters, together with the divisorial monomial split off from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingForm {
    ctx: VarContext,
    form: Poly,
    prefix: Monomial,
    vars: Vec<usize>,
}

impl SplittingForm {
    /// Center variables are those occurring in `form`, free ones first.
    pub fn new(ctx: VarContext, form: Poly) -> Result<Self> {
        let mut vars: Vec<usize> = form
            .variables()
            .into_iter()
            .filter(|&v| !ctx.is_parameter(v))
            .collect();
        vars.sort_by_key(|&v| (ctx.is_divisorial(v), v));
        Self::with_vars(ctx, form, vars)
    }

    /// `vars[0]` plays the role of `x1`.
    pub fn with_vars(ctx: VarContext, form: Poly, vars: Vec<usize>) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::ZeroInput);
        }
        if vars.is_empty() {
            return Err(Error::unsupported("splitting form without center variables"));
        }
        if let Some(&p) = vars.iter().find(|&&v| ctx.is_parameter(v)) {
            return Err(Error::ParameterVariable(ctx.name(p).to_string()));
        }
        if let Some(v) = form
            .variables()
            .into_iter()
            .find(|&v| !ctx.is_parameter(v) && !vars.contains(&v))
        {
            return Err(Error::unsupported(format!(
                "variable {} of the form is not a center variable",
                ctx.name(v)
            )));
        }
        let mask = ctx.center_mask();
        let d = form.order_in(&mask).expect("nonzero");
        if form.homogeneous_part(&mask, d) != form {
            return Err(Error::unsupported("splitting form is not homogeneous"));
        }
        let prefix = Monomial::one(ctx.len());
        Ok(SplittingForm { ctx, form, prefix, vars })
    }

    pub fn with_prefix(mut self, prefix: Monomial) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn form(&self) -> &Poly {
        &self.form
    }

    pub fn prefix(&self) -> &Monomial {
        &self.prefix
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn x1(&self) -> usize {
        self.vars[0]
    }

    pub fn degree(&self) -> u32 {
        self.form.order_in(&self.ctx.center_mask()).expect("nonzero")
    }

    /// Parameters occurring in the form.
    pub fn params(&self) -> Vec<usize> {
        self.form
            .variables()
            .into_iter()
            .filter(|&v| self.ctx.is_parameter(v))
            .collect()
    }

    /// Coefficient of `x1^d`, a polynomial in the parameters.
    pub fn lead_coefficient(&self) -> Poly {
        let m = Monomial::one(self.ctx.len()).with_exp(self.x1(), self.degree());
        self.form
            .coefficients_in(&self.ctx.center_mask())
            .remove(&m)
            .unwrap_or_else(|| Poly::zero(self.ctx.len()))
    }

    pub fn is_monic(&self) -> bool {
        self.lead_coefficient() == Poly::one(self.ctx.len())
    }

    /// The form with parameters replaced by the given values.
    pub fn at(&self, point: &[(usize, Rational)]) -> Result<SplittingForm> {
        let mut form = self.form.clone();
        for (v, c) in point {
            if !self.ctx.is_parameter(*v) {
                return Err(Error::unsupported(format!(
                    "{} is not a parameter",
                    self.ctx.name(*v)
                )));
            }
            form = form.eval_var(*v, c);
        }
        if form.is_zero() {
            return Err(Error::unsupported("form vanishes identically at the point"));
        }
        let prefix = self.prefix.clone();
        Ok(SplittingForm::with_vars(self.ctx.clone(), form, self.vars.clone())?.with_prefix(prefix))
    }

    pub fn render(&self) -> String {
        self.form.display(&self.ctx).to_string()
    }
}

/// The linear change `x_i -> x_i + shift_i * x1` followed by division by
/// `scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monicization {
    pub x1: usize,
    pub shifts: Vec<(usize, Rational)>,
    pub scale: Rational,
}

impl Monicization {
    pub fn is_identity(&self) -> bool {
        self.shifts.is_empty() && self.scale.is_one()
    }

    /// Images of the variables under the forward change.
    pub fn images(&self, nvars: usize) -> Vec<Poly> {
        self.images_signed(nvars, false)
    }

    /// Images under the inverse change.
    pub fn inverse_images(&self, nvars: usize) -> Vec<Poly> {
        self.images_signed(nvars, true)
    }

    fn images_signed(&self, nvars: usize, inverse: bool) -> Vec<Poly> {
        let mut out: Vec<Poly> = (0..nvars).map(|i| Poly::var(nvars, i)).collect();
        for (v, l) in &self.shifts {
            let l = if inverse { -l.clone() } else { l.clone() };
            out[*v] = &out[*v] + &Poly::var(nvars, self.x1).scale(&l);
        }
        out
    }
}

/// 0, 1, -1, 2, -2, ...
fn grid_value(i: usize) -> Rational {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        int(k)
    } else {
        int(-k)
    }
}

/// Makes the form monic in `x1` by shifting free variables along `x1`.
/// The search runs through an integer grid of growing width; the leading
/// coefficient has to become a nonzero constant.
pub fn monicize(f: &SplittingForm) -> Result<(SplittingForm, Monicization)> {
    let n = f.ctx.len();
    let x1 = f.x1();
    let free: Vec<usize> = f.vars[1..]
        .iter()
        .copied()
        .filter(|&v| !f.ctx.is_divisorial(v))
        .collect();
    let d = f.degree() as usize;
    let width = 2 * d + 3;
    let mut tuple = vec![0usize; free.len()];
    for k in 1..=width {
        if free.is_empty() && k > 1 {
            break;
        }
        // every tuple in [0, k)^m whose largest entry is k - 1
        tuple.iter_mut().for_each(|t| *t = 0);
        loop {
            let fresh = k == 1 || tuple.iter().any(|&t| t == k - 1);
            if fresh {
                let mut point: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
                for &v in &f.vars {
                    point[v] = Poly::zero(n);
                }
                point[x1] = Poly::one(n);
                for (v, t) in free.iter().zip(&tuple) {
                    point[*v] = Poly::constant(n, grid_value(*t));
                }
                let c = f.form.compose(&point);
                if c.is_constant() && !c.is_zero() {
                    let scale = c.constant_term();
                    let shifts: Vec<(usize, Rational)> = free
                        .iter()
                        .zip(&tuple)
                        .map(|(v, t)| (*v, grid_value(*t)))
                        .filter(|(_, l)| !l.is_zero())
                        .collect();
                    let change = Monicization { x1, shifts, scale };
                    let inv = Rational::one() / &change.scale;
                    let form = f.form.compose(&change.images(n)).scale(&inv);
                    let out = SplittingForm {
                        ctx: f.ctx.clone(),
                        form,
                        prefix: f.prefix.clone(),
                        vars: f.vars.clone(),
                    };
                    debug_assert!(out.is_monic());
                    return Ok((out, change));
                }
            }
            if !advance(&mut tuple, k) {
                break;
            }
        }
    }
    Err(Error::unsupported(format!(
        "no shift makes {} monic with a constant leading coefficient",
        f.render()
    )))
}

fn advance(tuple: &mut [usize], k: usize) -> bool {
    for t in tuple.iter_mut().rev() {
        *t += 1;
        if *t < k {
            return true;
        }
        *t = 0;
    }
    false
}

/// `Phi_j(x1) = F(x1; x_j = -1; other center variables 0)`.
pub fn specialization(f: &SplittingForm, j: usize) -> Result<Poly> {
    if !f.is_monic() {
        return Err(Error::unsupported("specialization needs a monic form"));
    }
    if j == f.x1() || !f.vars.contains(&j) {
        return Err(Error::unsupported(format!(
            "{} is not a specialization variable",
            f.ctx.name(j)
        )));
    }
    let n = f.ctx.len();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for &v in &f.vars[1..] {
        images[v] = Poly::zero(n);
    }
    images[j] = Poly::constant(n, int(-1));
    Ok(f.form.compose(&images))
}

/// `F(x1; x_j = beta_j)` with `beta` aligned to the variables after `x1`.
/// Used as a cross-check of [`specialization`].
pub fn generic_combination(f: &SplittingForm, beta: &[Rational]) -> Poly {
    let n = f.ctx.len();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for (v, b) in f.vars[1..].iter().zip(beta) {
        images[*v] = Poly::constant(n, b.clone());
    }
    f.form.compose(&images)
}

/// Factorization over Q of a univariate polynomial.
pub fn factor_univariate(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    univariate::factor(p)
}

/// Roots of a monic polynomial in `x1` over the parameter ring, grouped by
/// the field they live in.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootData {
    /// Roots in Q[params] with multiplicity.
    pub linear: Vec<(Poly, u32)>,
    /// Irreducible monic quadratics `x^2 + b x + c` as `(b, c)`.
    pub quadratic: Vec<(Poly, Poly, u32)>,
    /// Irreducible factors of higher degree (as polynomials in `x1`).
    pub higher: Vec<(Poly, u32)>,
}

impl RootData {
    pub fn is_supported(&self) -> bool {
        self.higher.is_empty()
    }
}

/// Splits a polynomial monic in `x1` into linear, quadratic and higher
/// irreducible factors. Without parameters this is factorization over Q;
/// with parameters, roots in Q[params] are found by Newton lifting from a
/// good integer base point.
pub fn analyze_roots(phi: &Poly, x1: usize, params: &[usize]) -> Result<RootData> {
    let n = phi.nvars();
    let mut out = RootData::default();
    let involved: Vec<usize> = params.iter().copied().filter(|&p| phi.involves(p)).collect();
    if involved.is_empty() {
        let u = UniPoly::from_poly(phi, x1)
            .ok_or_else(|| Error::assertion("specialization is not univariate"))?;
        for (g, m) in univariate::factor(&u)? {
            let c = g.coeffs();
            match g.degree() {
                0 => {}
                1 => out.linear.push((Poly::constant(n, -c[0].clone()), m)),
                2 => out.quadratic.push((
                    Poly::constant(n, c[1].clone()),
                    Poly::constant(n, c[0].clone()),
                    m,
                )),
                _ => out.higher.push((g.to_poly(n, x1), m)),
            }
        }
        return Ok(out);
    }
    let mut rest = phi.clone();
    for r in parametric_roots(phi, x1, &involved)? {
        let mut m = 0;
        let lin = &Poly::var(n, x1) - &r;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            m += 1;
        }
        if m == 0 {
            return Err(Error::assertion("lifted root does not divide"));
        }
        out.linear.push((r, m));
    }
    let deg = rest.degree_of(x1);
    if deg == 0 {
        return Ok(out);
    }
    let s = monic_in(&sqfree_in(&rest, x1), x1)?;
    let k = s.degree_of(x1);
    let mult = deg / k;
    if s.pow(mult) != rest {
        return Err(Error::unsupported(
            "specialization polynomial with mixed repeated irreducible factors",
        ));
    }
    if k == 2 {
        let coeffs = coeffs_in(&s, x1);
        out.quadratic.push((coeffs[1].clone(), coeffs[0].clone(), mult));
    } else {
        out.higher.push((s, mult));
    }
    Ok(out)
}

fn coeffs_in(f: &Poly, v: usize) -> Vec<Poly> {
    let n = f.nvars();
    let mut out = vec![Poly::zero(n); f.degree_of(v) as usize + 1];
    for (m, c) in f.terms() {
        out[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
    }
    out
}

fn monic_in(f: &Poly, v: usize) -> Result<Poly> {
    let lc = coeffs_in(f, v).pop().expect("nonzero");
    if !lc.is_constant() || lc.is_zero() {
        return Err(Error::assertion("factor of a monic polynomial is not monic"));
    }
    Ok(f.scale(&(Rational::one() / lc.constant_term())))
}

/// Square-free part with respect to `v`.
fn sqfree_in(f: &Poly, v: usize) -> Poly {
    let g = gcd(f, &f.derivative(v));
    if g.degree_of(v) == 0 {
        return f.clone();
    }
    f.div_exact(&g).expect("gcd divides")
}

fn parametric_roots(phi: &Poly, x1: usize, params: &[usize]) -> Result<Vec<Poly>> {
    let n = phi.nvars();
    let s = monic_in(&sqfree_in(phi, x1), x1)?;
    let mut pmask = vec![false; n];
    for &p in params {
        pmask[p] = true;
    }
    let bound = coeffs_in(&s, x1)
        .iter()
        .filter_map(|c| c.degree_in(&pmask))
        .max()
        .unwrap_or(0);
    let base = base_point(&s, x1, params)?;
    let mut shifted: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    let mut unshift = shifted.clone();
    for (p, c) in params.iter().zip(&base) {
        shifted[*p] = &Poly::var(n, *p) + &Poly::constant(n, c.clone());
        unshift[*p] = &Poly::var(n, *p) - &Poly::constant(n, c.clone());
    }
    let st = s.compose(&shifted);
    let dst = st.derivative(x1);
    let mut at_base = st.clone();
    for &p in params {
        at_base = at_base.eval_var(p, &Rational::zero());
    }
    let u = UniPoly::from_poly(&at_base, x1).expect("univariate at the base point");
    let mut roots = Vec::new();
    for r0 in univariate::rational_roots(&u)? {
        let mut r = TruncatedSeries::new(Poly::constant(n, r0), pmask.clone(), bound);
        for _ in 0..=bound + 1 {
            let val = TruncatedSeries::new(st.substitute(x1, r.body()), pmask.clone(), bound);
            if val.is_zero() {
                break;
            }
            let der = TruncatedSeries::new(dst.substitute(x1, r.body()), pmask.clone(), bound);
            let inv = der
                .inverse()
                .ok_or_else(|| Error::assertion("derivative vanishes at a simple root"))?;
            r = r.sub(&val.mul(&inv));
        }
        let cand = r.body().compose(&unshift);
        if phi.substitute(x1, &cand).is_zero() {
            roots.push(cand);
        }
    }
    Ok(roots)
}

/// Integer parameter values where `s` stays square-free.
fn base_point(s: &Poly, x1: usize, params: &[usize]) -> Result<Vec<Rational>> {
    let width = 21;
    let mut tuple = vec![0usize; params.len()];
    for k in 1..=width {
        tuple.iter_mut().for_each(|t| *t = 0);
        loop {
            if k == 1 || tuple.iter().any(|&t| t == k - 1) {
                let vals: Vec<Rational> = tuple.iter().map(|&t| grid_value(t)).collect();
                let mut g = s.clone();
                for (p, c) in params.iter().zip(&vals) {
                    g = g.eval_var(*p, c);
                }
                if let Some(u) = UniPoly::from_poly(&g, x1) {
                    if u.degree() as u32 == s.degree_of(x1) && !u.discriminant().is_zero() {
                        return Ok(vals);
                    }
                }
            }
            if !advance(&mut tuple, k) {
                break;
            }
        }
    }
    Err(Error::unsupported("no square-free base point for root lifting"))
}

/// Degree of the splitting field and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDegree {
    pub degree: u64,
    /// `Some(n)` when the form was recognized as `cp(n)`.
    pub cyclic: Option<usize>,
    /// Discriminants of the quadratic root fields, one per square class.
    pub quadratic_classes: Vec<Poly>,
}

/// Degree of the field generated by the roots of all specialization
/// polynomials, at a parameter point or generically. Supported shapes are
/// towers of quadratic fields and recognized cyclic forms.
pub fn splitting_field_degree(
    f: &SplittingForm,
    point: Option<&[(usize, Rational)]>,
) -> Result<FieldDegree> {
    let cyclic = recognize_cyclic(f);
    let g = match point {
        Some(p) => f.at(p)?,
        None => f.clone(),
    };
    let (m, _) = monicize(&g)?;
    let params = m.params();
    let mut classes: Vec<Poly> = Vec::new();
    let mut higher = false;
    for &j in &m.vars[1..] {
        let roots = analyze_roots(&specialization(&m, j)?, m.x1(), &params)?;
        higher |= !roots.is_supported();
        for (b, c, _) in &roots.quadratic {
            let disc = &(b * b) - &c.scale(&int(4));
            if !classes.iter().any(|k| is_square(&(k * &disc))) {
                classes.push(disc);
            }
        }
    }
    if higher {
        return match cyclic {
            Some(n) => Ok(FieldDegree { degree: n as u64, cyclic, quadratic_classes: classes }),
            None => Err(Error::unsupported(format!(
                "splitting field of {} is not a quadratic tower",
                f.render()
            ))),
        };
    }
    let rank = square_class_rank(&classes)?;
    Ok(FieldDegree { degree: 1u64 << rank, cyclic, quadratic_classes: classes })
}

fn is_square(p: &Poly) -> bool {
    sqrt_exact(p).is_some()
}

/// Dimension over F2 of the span of the classes modulo squares.
fn square_class_rank(classes: &[Poly]) -> Result<u32> {
    let m = classes.len();
    if m > 12 {
        return Err(Error::unsupported("too many quadratic root fields"));
    }
    let n = classes.first().map_or(0, |c| c.nvars());
    let mut kernel = 0u32;
    for mask in 0u32..(1 << m) {
        let mut prod = Poly::one(n);
        for (i, c) in classes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = &prod * c;
            }
        }
        if is_square(&prod) {
            kernel += 1;
        }
    }
    Ok(m as u32 - kernel.trailing_zeros())
}

/// Square-free integer `D` with `q = D * r^2` for a rational `r`.
pub fn square_class(q: &Rational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut n: BigInt = q.numer() * q.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    n = n.abs();
    let mut out = BigInt::from(sign);
    let mut p = 2u64;
    while p < 1_000_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &bp;
        }
        p += 1;
    }
    if n.is_one() {
        return Ok(out);
    }
    let r = rational_sqrt(&Rational::from_integer(n.clone()));
    if r.is_some() {
        return Ok(out);
    }
    if n < BigInt::from(10u64.pow(18)) {
        // no factor below 10^6 and below 10^18: a prime, or a product of two
        return Ok(out * n);
    }
    Err(Error::unsupported("discriminant too large to classify"))
}

/// Square-free product of the discriminants of the specialization
/// polynomials, as a polynomial in the parameters. A constant means the
/// locus is empty; zero means every point ramifies.
pub fn ramification_locus(f: &SplittingForm) -> Result<Poly> {
    let m = if f.is_monic() { f.clone() } else { monicize(f)?.0 };
    let n = m.ctx.len();
    let mut prod = Poly::one(n);
    for &j in &m.vars[1..] {
        let phi = specialization(&m, j)?;
        prod = &prod * &discriminant(&phi, m.x1());
    }
    if prod.is_zero() {
        return Ok(prod);
    }
    if prod.is_constant() {
        return Ok(Poly::one(n));
    }
    Ok(squarefree_part(&prod))
}

/// Number of distinct roots of `phi` as a polynomial in `v`.
fn distinct_roots(phi: &Poly, v: usize) -> u32 {
    phi.degree_of(v) - gcd(phi, &phi.derivative(v)).degree_of(v)
}

/// Whether the linear factors stay distinct at the parameter point: the
/// ramification locus does not vanish there and every specialization keeps
/// its generic number of distinct roots.
pub fn independent_factors_at(f: &SplittingForm, point: &[(usize, Rational)]) -> Result<bool> {
    let m = if f.is_monic() { f.clone() } else { monicize(f)?.0 };
    let locus = ramification_locus(&m)?;
    let mut value = locus;
    for (v, c) in point {
        value = value.eval_var(*v, c);
    }
    if !value.is_constant() {
        return Err(Error::unsupported("point does not fix every parameter"));
    }
    if value.is_zero() {
        return Ok(false);
    }
    let at = m.at(point)?;
    for &j in &m.vars[1..] {
        let generic = distinct_roots(&specialization(&m, j)?, m.x1());
        if distinct_roots(&specialization(&at, j)?, m.x1()) != generic {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `cp(n)`: the norm of `x0 + x1 u + ... + x_{n-1} u^{n-1}` from
/// `Q(z)[u]/(u^n - z)`, in variables `x0..x_{n-1}` and parameter `z`.
pub fn cyclic_form(n: usize) -> Result<SplittingForm> {
    if n == 0 || n > CYCLIC_BOUND {
        return Err(Error::DegreeBound { degree: n, bound: CYCLIC_BOUND });
    }
    let nv = n + 2;
    let (z, u) = (n, n + 1);
    let fu = &Poly::var(nv, u).pow(n as u32) - &Poly::var(nv, z);
    let mut lin = Poly::zero(nv);
    for i in 0..n {
        lin = &lin + &(&Poly::var(nv, i) * &Poly::var(nv, u).pow(i as u32));
    }
    let res = resultant(&fu, &lin, u);
    let mut map: Vec<Option<usize>> = (0..=n).map(Some).collect();
    map.push(None);
    let form = res
        .rename(&map, n + 1)
        .ok_or_else(|| Error::assertion("resultant still involves u"))?;
    let lead = form.coeff(&Monomial::one(n + 1).with_exp(0, n as u32));
    if lead.is_zero() {
        return Err(Error::assertion("cyclic form lost its x0^n term"));
    }
    let form = form.scale(&(Rational::one() / lead));
    let mut vars: Vec<(String, VarKind)> =
        (0..n).map(|i| (format!("x{i}"), VarKind::Free)).collect();
    vars.push(("z".to_string(), VarKind::Parameter));
    let ctx = VarContext::new(vars)?;
    SplittingForm::with_vars(ctx, form, (0..n).collect())
}

/// `Some(n)` if the form is `cp(n)` in its center variables and its single
/// parameter.
pub fn recognize_cyclic(f: &SplittingForm) -> Option<usize> {
    let n = f.vars.len();
    let params = f.params();
    if n > CYCLIC_BOUND || params.len() != 1 {
        return None;
    }
    let cp = cyclic_form(n).ok()?;
    let mut map: Vec<Option<usize>> = f.vars.iter().map(|&v| Some(v)).collect();
    map.push(Some(params[0]));
    let mapped = cp.form.rename(&map, f.ctx.len())?;
    (mapped == f.form).then_some(n)
}
