//! Normal-crossings detection at the origin: the invariant-shape test, the
//! splitting of the initial form into independent linear forms, and the
//! direct SNC factorization of the resulting pre-SNC series.

mod field;
mod snc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

pub use field::{eliminate, invert, CoefRing, Elimination};
pub use snc::{
    cofactors, minimal_set, residual_order, snc_factorize, verify_failure, verify_product,
    FactorizationResult, PreSnc, SncFactor,
};

use crate::error::{Error, Result};
use crate::invariant::{canonical_invariant_with, InvariantVector, Terminal};
use crate::poly::{int, rational_sqrt, Poly, Rational, VarContext, VarKind};
use crate::splitting::{
    analyze_roots, monicize, ramification_locus, specialization, square_class, SplittingForm,
};

/// Which normal-crossings locus is tested.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NcMode {
    #[default]
    AnyCodim,
    CodimOne,
    Reduced,
}

impl NcMode {
    pub fn parse(text: &str) -> Option<NcMode> {
        match text {
            "any-codim" => Some(NcMode::AnyCodim),
            "codim-1" => Some(NcMode::CodimOne),
            "reduced" => Some(NcMode::Reduced),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NcMode::AnyCodim => "any-codim",
            NcMode::CodimOne => "codim-1",
            NcMode::Reduced => "reduced",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcComponent {
    pub form: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NotNcCertificate {
    /// The invariant is not of the form (1,..,1,d,..,d,d+,..,d+).
    InvariantShape { invariant: String },
    /// The initial form is not a product of linear forms.
    NotLinear { initial_form: String },
    /// The linear factors, with the divisorial prefix, are dependent.
    DependentForms { forms: Vec<String> },
    /// Empty minimal set: the tail monomials of the failing degree, in the
    /// coordinates listed.
    SncFailure {
        degree: u32,
        monomials: Vec<String>,
        coordinates: Vec<(String, String)>,
    },
    /// The linear factors together with the divisorial coordinates are
    /// dependent.
    NotTransverse { forms: Vec<String>, divisor: Vec<String> },
    Codimension { codim: usize },
    NonReduced { component: String, multiplicity: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NcVerdict {
    /// Normal crossings, certified through degree `truncation`.
    NcCertified {
        truncation: u32,
        codim: usize,
        field: String,
        components: Vec<NcComponent>,
    },
    NotNc { certificate: NotNcCertificate },
    Unsupported { reason: String },
}

impl NcVerdict {
    pub fn is_nc(&self) -> bool {
        matches!(self, NcVerdict::NcCertified { .. })
    }

    pub fn is_not_nc(&self) -> bool {
        matches!(self, NcVerdict::NotNc { .. })
    }

    pub fn is_unsupported(&self) -> bool {
        matches!(self, NcVerdict::Unsupported { .. })
    }

    pub fn summary(&self) -> String {
        match self {
            NcVerdict::NcCertified { truncation, codim, field, .. } => {
                format!("NC-certified-to-{truncation} (codim {codim}, over {field})")
            }
            NcVerdict::NotNc { certificate } => format!("not NC: {}", certificate.describe()),
            NcVerdict::Unsupported { reason } => format!("unsupported: {reason}"),
        }
    }
}

impl NotNcCertificate {
    pub fn describe(&self) -> String {
        match self {
            NotNcCertificate::InvariantShape { invariant } => {
                format!("invariant {invariant} is not of normal-crossings shape")
            }
            NotNcCertificate::NotLinear { initial_form } => {
                format!("initial form {initial_form} is not a product of linear forms")
            }
            NotNcCertificate::DependentForms { forms } => {
                format!("linear forms {} are dependent", forms.join(", "))
            }
            NotNcCertificate::SncFailure { degree, monomials, .. } => format!(
                "no tail monomial of degree {degree} is divisible by a cofactor: {{{}}}",
                monomials.join(", ")
            ),
            NotNcCertificate::NotTransverse { forms, divisor } => format!(
                "linear forms {} are not transverse to the divisor {}",
                forms.join(", "),
                divisor.join(", ")
            ),
            NotNcCertificate::Codimension { codim } => format!("codimension {codim} > 1"),
            NotNcCertificate::NonReduced { component, multiplicity } => {
                format!("component {component} has multiplicity {multiplicity}")
            }
        }
    }
}

fn nc(truncation: u32, codim: usize, field: String, components: Vec<NcComponent>) -> NcVerdict {
    NcVerdict::NcCertified { truncation, codim, field, components }
}

fn not_nc(certificate: NotNcCertificate) -> Result<NcVerdict> {
    Ok(NcVerdict::NotNc { certificate })
}

/// Turns "unsupported" errors into the corresponding verdict.
fn soften(r: Result<NcVerdict>) -> Result<NcVerdict> {
    match r {
        Err(Error::Unsupported(reason)) => Ok(NcVerdict::Unsupported { reason }),
        Err(e @ (Error::DegreeBound { .. } | Error::NotPrincipal | Error::RecursionGuard(_))) => {
            Ok(NcVerdict::Unsupported { reason: e.to_string() })
        }
        other => other,
    }
}

/// `(r, d)` when the invariant reads `(1^r, d^t, d+^u)` with infinite tail.
/// All-ones invariants give `d = 1`.
pub fn nc_shape(inv: &InvariantVector) -> Option<(usize, Rational)> {
    if inv.terminal != Terminal::Infinity || inv.entries.is_empty() {
        return None;
    }
    let ones = inv.entries.iter().all(|e| e.value.is_one());
    let monotone = inv.entries.windows(2).all(|w| w[0].plus <= w[1].plus);
    if ones {
        return monotone.then(|| (inv.entries.iter().filter(|e| !e.plus).count(), Rational::one()));
    }
    let r = inv.entries.iter().take_while(|e| e.value.is_one() && !e.plus).count();
    let rest = &inv.entries[r..];
    let d = rest[0].value.clone();
    let ok = d.is_integer()
        && rest.iter().all(|e| e.value == d)
        && rest.windows(2).all(|w| w[0].plus <= w[1].plus);
    ok.then_some((r, d))
}

/// Verdict for a principal ideal `(h)` at the origin, with parameters
/// treated as generic.
pub fn is_nc_principal(h: &Poly, ctx: &VarContext, n: u32) -> Result<NcVerdict> {
    soften(principal(h, ctx, n))
}

fn principal(h: &Poly, ctx: &VarContext, n: u32) -> Result<NcVerdict> {
    if h.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mask = ctx.center_mask();
    if h.order_in(&mask) == Some(0) {
        return Ok(nc(n, 0, "Q".into(), vec![]));
    }
    // necessary condition; skipped when the invariant itself is out of reach
    match canonical_invariant_with(std::slice::from_ref(h), ctx, n) {
        Ok(inv) => match nc_shape(&inv.invariant) {
            Some((r, d)) if r == 0 || d.is_one() => {}
            _ => {
                return not_nc(NotNcCertificate::InvariantShape {
                    invariant: inv.invariant.to_string(),
                })
            }
        },
        Err(Error::Unsupported(_)) => {}
        Err(e) => return Err(e),
    }
    let mut core = h.clone();
    let mut components = Vec::new();
    for u in ctx.divisorial_vars() {
        let k = core.var_valuation(u);
        if k > 0 {
            core = core.div_var_power(u, k).expect("valuation");
            components.push((u, k));
        }
    }
    let prefix: Vec<usize> = components.iter().map(|(u, _)| *u).collect();
    let mut out: Vec<NcComponent> = components
        .iter()
        .map(|(u, k)| NcComponent { form: ctx.name(*u).to_string(), multiplicity: *k })
        .collect();
    let d = core.order_in(&mask).expect("nonzero");
    if d == 0 {
        return Ok(nc(n, 1, "Q".into(), out));
    }
    let cone = core.homogeneous_part(&mask, d);
    let sf = SplittingForm::new(ctx.clone(), cone.clone())?;
    let split = match split_linear(&sf)? {
        Some(s) => s,
        None => {
            return not_nc(NotNcCertificate::NotLinear {
                initial_form: cone.display(ctx).to_string(),
            })
        }
    };
    let LinearSplit { ring, ext, forms } = split;
    let en = ext.len();
    let render = |p: &Poly| p.display(&ext).to_string();
    let center: Vec<usize> = (0..ctx.len()).filter(|&v| !ctx.is_parameter(v)).collect();
    let form_rows: Vec<Vec<Poly>> = forms.iter().map(|(l, _)| linear_row(l, en)).collect();
    let unit_row = |v: usize| -> Vec<Poly> {
        (0..en).map(|i| if i == v { Poly::one(en) } else { Poly::zero(en) }).collect()
    };

    let mut rows = form_rows.clone();
    rows.extend(prefix.iter().map(|&u| unit_row(u)));
    match eliminate(&ring, &rows, &center) {
        Elimination::Independent(_) => {}
        Elimination::Dependent => {
            let mut listed: Vec<String> = forms.iter().map(|(l, _)| render(l)).collect();
            listed.extend(prefix.iter().map(|&u| ctx.name(u).to_string()));
            return not_nc(NotNcCertificate::DependentForms { forms: listed });
        }
        Elimination::NonUnit(p) => {
            return Err(Error::unsupported(format!(
                "independence of the linear forms needs {} to be a unit",
                render(&p)
            )))
        }
    }
    let divisorial = ctx.divisorial_vars();
    let mut rows: Vec<Vec<Poly>> = divisorial.iter().map(|&u| unit_row(u)).collect();
    rows.extend(form_rows.iter().cloned());
    let mut cols = center.clone();
    cols.sort_by_key(|&v| (ctx.is_divisorial(v), v));
    let pivots = match eliminate(&ring, &rows, &cols) {
        Elimination::Independent(p) => p[divisorial.len()..].to_vec(),
        // A branch tangent to a divisorial hyperplane would have to be that
        // hyperplane, which the prefix already removed.
        Elimination::Dependent => {
            return not_nc(NotNcCertificate::NotTransverse {
                forms: forms.iter().map(|(l, _)| render(l)).collect(),
                divisor: divisorial.iter().map(|&u| ctx.name(u).to_string()).collect(),
            })
        }
        Elimination::NonUnit(p) => {
            return Err(Error::unsupported(format!(
                "independence of the linear forms needs {} to be a unit",
                render(&p)
            )))
        }
    };

    // y_{p_i} = l_i; solve for x_P
    let a: Vec<Vec<Poly>> = form_rows
        .iter()
        .map(|row| pivots.iter().map(|&p| row[p].clone()).collect())
        .collect();
    let ainv = invert(&ring, &a)?;
    let mut rhs: Vec<Poly> = Vec::new();
    for row in &form_rows {
        let mut t = Poly::zero(en);
        for (v, c) in row.iter().enumerate() {
            if !c.is_zero() && !pivots.contains(&v) {
                t = &t + &ring.mul(c, &Poly::var(en, v));
            }
        }
        rhs.push(t);
    }
    let mut images: Vec<Poly> = (0..en).map(|i| Poly::var(en, i)).collect();
    for (k, &p) in pivots.iter().enumerate() {
        let mut img = Poly::zero(en);
        for (i, &pi) in pivots.iter().enumerate() {
            let y = &Poly::var(en, pi) - &rhs[i];
            img = &img + &ring.mul(&ainv[k][i], &y);
        }
        images[p] = img;
    }
    let f = ring.reduce(&core.extend(en).compose(&images));
    let pre = PreSnc::new(&f, ext.center_mask(), n, ring.clone())?;
    let mut expected = vec![0u32; en];
    for (&p, (_, m)) in pivots.iter().zip(&forms) {
        expected[p] = *m;
    }
    if pre.lead().exps() != expected.as_slice() {
        return Err(Error::assertion("lead monomial does not match the linear factors"));
    }
    match snc_factorize(&pre, n)? {
        FactorizationResult::Factors { .. } => {
            out.extend(
                forms
                    .iter()
                    .map(|(l, m)| NcComponent { form: render(l), multiplicity: *m }),
            );
            Ok(nc(n, 1, ring.name(), out))
        }
        FactorizationResult::Failure { degree, monomials } => {
            let names = ext.names();
            not_nc(NotNcCertificate::SncFailure {
                degree,
                monomials: monomials.iter().map(|m| m.render(names)).collect(),
                coordinates: pivots
                    .iter()
                    .zip(&forms)
                    .map(|(&p, (l, _))| (ext.name(p).to_string(), render(l)))
                    .collect(),
            })
        }
    }
}

fn linear_row(l: &Poly, en: usize) -> Vec<Poly> {
    let mut row = vec![Poly::zero(en); en];
    for (m, c) in l.terms() {
        // exactly one center variable per term
        let v = (0..en).find(|&v| m.exp(v) > 0 && row.len() > v);
        if let Some(v) = v {
            row[v].add_term(m.with_exp(v, m.exp(v) - 1), c.clone());
        }
    }
    row
}

struct LinearSplit {
    ring: CoefRing,
    ext: VarContext,
    forms: Vec<(Poly, u32)>,
}

/// Linear factors of a splitting form over Q[params] or a single quadratic
/// field. `None` when the form is not a product of linear forms.
fn split_linear(sf: &SplittingForm) -> Result<Option<LinearSplit>> {
    let ctx = sf.ctx();
    let (m, change) = monicize(sf)?;
    let x1 = m.x1();
    let params = m.params();
    let others = m.vars()[1..].to_vec();
    let mut data = Vec::new();
    let mut class: Option<BigInt> = None;
    for &j in &others {
        let rd = analyze_roots(&specialization(&m, j)?, x1, &params)?;
        if !rd.is_supported() {
            return Err(Error::unsupported(
                "initial form needs a root field of degree above 2",
            ));
        }
        for (b, c, _) in &rd.quadratic {
            if !b.is_constant() || !c.is_constant() {
                return Err(Error::unsupported(
                    "initial form splits only over a quadratic extension of the parameter field",
                ));
            }
            let disc = b.constant_term() * b.constant_term() - int(4) * c.constant_term();
            let d = square_class(&disc)?;
            match &class {
                None => class = Some(d),
                Some(e) if *e == d => {}
                Some(_) => {
                    return Err(Error::unsupported("initial form needs several quadratic fields"))
                }
            }
        }
        data.push(rd);
    }
    let nv = ctx.len();
    let mut ext = ctx.clone();
    let ring = match &class {
        None => CoefRing::Base,
        Some(d) => {
            let alpha = ext.push(format!("sqrt({d})"), VarKind::Parameter)?;
            CoefRing::Quadratic { alpha, d: d.clone() }
        }
    };
    let en = ext.len();
    let mut roots: Vec<Vec<Poly>> = Vec::new();
    for rd in &data {
        let mut list: Vec<Poly> = rd.linear.iter().map(|(r, _)| r.extend(en)).collect();
        if let CoefRing::Quadratic { alpha, d } = &ring {
            for (b, c, _) in &rd.quadratic {
                let (b, c) = (b.constant_term(), c.constant_term());
                let disc = &b * &b - int(4) * &c;
                let s = rational_sqrt(&(disc / Rational::from_integer(d.clone())))
                    .ok_or_else(|| Error::assertion("discriminant outside the root field"))?;
                let base = Poly::constant(en, -b / int(2));
                let off = Poly::var(en, *alpha).scale(&(s / int(2)));
                list.push(&base + &off);
                list.push(&base - &off);
            }
        }
        roots.push(list);
    }
    let f = m.form().extend(en);
    let mut forms = Vec::new();
    let mut total = 0;
    let mut idx = vec![0usize; roots.len()];
    loop {
        let mut ell = Poly::var(en, x1);
        let mut sub = Poly::zero(en);
        for (k, &j) in others.iter().enumerate() {
            let t = ring.mul(&roots[k][idx[k]], &Poly::var(en, j));
            ell = &ell + &t;
            sub = &sub - &t;
        }
        let mult = multiplicity(&ring, &f, x1, &sub);
        if mult > 0 {
            forms.push((ell, mult));
            total += mult;
        }
        let mut k = idx.len();
        let more = loop {
            if k == 0 {
                break false;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < roots[k].len() {
                break true;
            }
            idx[k] = 0;
        };
        if !more || total >= m.degree() {
            break;
        }
    }
    if total != m.degree() {
        return Ok(None);
    }
    let mut prod = Poly::one(en);
    for (l, k) in &forms {
        for _ in 0..*k {
            prod = ring.mul(&prod, l);
        }
    }
    if prod != f {
        return Err(Error::assertion("linear factors do not multiply back to the form"));
    }
    let back = change.inverse_images(en);
    let forms = forms
        .into_iter()
        .map(|(l, k)| (ring.reduce(&l.compose(&back)), k))
        .collect();
    debug_assert!(nv <= en);
    Ok(Some(LinearSplit { ring, ext, forms }))
}

/// Order of vanishing of `f` along `x1 = sub`.
fn multiplicity(ring: &CoefRing, f: &Poly, x1: usize, sub: &Poly) -> u32 {
    let mut g = f.clone();
    let mut k = 0;
    while !g.is_zero() && ring.reduce(&g.substitute(x1, sub)).is_zero() {
        k += 1;
        g = g.derivative(x1);
    }
    k
}

/// Verdict for an ideal at the origin: the order-one maximal contact block
/// is split off and the restriction to its zero locus must be principal.
pub fn is_nc_ideal(gens: &[Poly], ctx: &VarContext, n: u32, mode: NcMode) -> Result<NcVerdict> {
    soften(ideal(gens, ctx, n)).map(|v| apply_mode(v, mode))
}

fn ideal(gens: &[Poly], ctx: &VarContext, n: u32) -> Result<NcVerdict> {
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(Error::ZeroInput);
    }
    let mask = ctx.center_mask();
    if gens.iter().any(|g| g.order_in(&mask) == Some(0)) {
        return Ok(nc(n, 0, "Q".into(), vec![]));
    }
    if let Some(h) = gens.iter().find(|g| gens.iter().all(|o| o.div_exact(g).is_some())) {
        return principal(h, ctx, n);
    }
    let inv = canonical_invariant_with(&gens, ctx, n)?;
    let Some((r, d)) = nc_shape(&inv.invariant) else {
        return not_nc(NotNcCertificate::InvariantShape { invariant: inv.invariant.to_string() });
    };
    let block: Vec<usize> = inv
        .center
        .entries
        .iter()
        .filter(|e| e.exponent.is_one())
        .map(|e| e.var)
        .collect();
    let block_components: Vec<NcComponent> = block
        .iter()
        .map(|&v| NcComponent { form: ctx.name(v).to_string(), multiplicity: 1 })
        .collect();
    if d.is_one() {
        return Ok(nc(n, block.len(), "Q".into(), block_components));
    }
    if block.len() != r {
        return Err(Error::assertion("order-one block does not match the invariant"));
    }
    let mut restricted: Vec<Poly> = inv
        .transformed
        .iter()
        .map(|g| block.iter().fold(g.clone(), |acc, &b| acc.eval_var(b, &Rational::zero())))
        .filter(|g| !g.is_zero())
        .collect();
    restricted.sort_by_key(|g| (g.order_in(&mask), g.num_terms()));
    let Some(h) = restricted
        .iter()
        .find(|g| restricted.iter().all(|o| o.div_exact(g).is_some()))
        .cloned()
    else {
        return Err(Error::NotPrincipal);
    };
    match principal(&h, ctx, n)? {
        NcVerdict::NcCertified { truncation, codim, field, components } => {
            let mut all = block_components;
            all.extend(components);
            Ok(nc(truncation, codim + r, field, all))
        }
        other => Ok(other),
    }
}

fn apply_mode(v: NcVerdict, mode: NcMode) -> NcVerdict {
    let NcVerdict::NcCertified { codim, components, .. } = &v else {
        return v;
    };
    match mode {
        NcMode::CodimOne if *codim > 1 => {
            NcVerdict::NotNc { certificate: NotNcCertificate::Codimension { codim: *codim } }
        }
        NcMode::Reduced => match components.iter().find(|c| c.multiplicity > 1) {
            Some(c) => NcVerdict::NotNc {
                certificate: NotNcCertificate::NonReduced {
                    component: c.form.clone(),
                    multiplicity: c.multiplicity,
                },
            },
            None => v,
        },
        _ => v,
    }
}

/// Turns the given parameters into free coordinates centered at the given
/// values.
pub fn unfreeze_parameters(
    gens: &[Poly],
    ctx: &VarContext,
    point: &[(usize, Rational)],
) -> Result<(Vec<Poly>, VarContext)> {
    let nv = ctx.len();
    let mut local = ctx.clone();
    let mut images: Vec<Poly> = (0..nv).map(|i| Poly::var(nv, i)).collect();
    for (p, c) in point {
        if !ctx.is_parameter(*p) {
            return Err(Error::unsupported(format!("{} is not a parameter", ctx.name(*p))));
        }
        local.set_kind(*p, VarKind::Free);
        images[*p] = &Poly::var(nv, *p) + &Poly::constant(nv, c.clone());
    }
    Ok((gens.iter().map(|g| g.compose(&images)).collect(), local))
}

/// Verdicts along the parameter directions: the generic verdict, the
/// ramification locus of the initial form, and verdicts at sampled
/// parameter values where the parameters become coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct NcAlong {
    pub generic: NcVerdict,
    pub ramification: Option<String>,
    pub samples: Vec<(String, NcVerdict)>,
}

pub fn nc_along_parameters(
    h: &Poly,
    ctx: &VarContext,
    samples: &[Vec<(usize, Rational)>],
    n: u32,
) -> Result<NcAlong> {
    let generic = is_nc_principal(h, ctx, n)?;
    let mask = ctx.center_mask();
    let ramification = match h.order_in(&mask) {
        Some(d) if d > 0 => {
            let cone = h.homogeneous_part(&mask, d);
            SplittingForm::new(ctx.clone(), cone)
                .and_then(|sf| ramification_locus(&sf))
                .ok()
                .map(|p| p.display(ctx).to_string())
        }
        _ => None,
    };
    let mut out = Vec::new();
    for point in samples {
        let (gens, local) = unfreeze_parameters(std::slice::from_ref(h), ctx, point)?;
        let label = point
            .iter()
            .map(|(p, c)| format!("{}={}", ctx.name(*p), c))
            .collect::<Vec<_>>()
            .join(",");
        out.push((label, is_nc_principal(&gens[0], &local, n)?));
    }
    Ok(NcAlong { generic, ramification, samples: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_expr;

    fn ctx_of(vars: &[(&str, VarKind)]) -> VarContext {
        VarContext::new(vars.iter().map(|(n, k)| (n.to_string(), *k))).unwrap()
    }

    fn p(ctx: &VarContext, s: &str) -> Poly {
        parse_expr(s, ctx).unwrap()
    }

    #[test]
    fn node_is_nc() {
        let ctx = VarContext::free(&["x", "y"]);
        let v = is_nc_principal(&p(&ctx, "x*y + x^3 + y^3"), &ctx, 12).unwrap();
        assert!(v.is_nc(), "{v:?}");
    }

    #[test]
    fn triple_point_certificate() {
        let ctx = VarContext::free(&["x", "y", "z"]);
        let v = is_nc_principal(&p(&ctx, "x*y*z + x^4 + y^4 + z^4"), &ctx, 12).unwrap();
        let NcVerdict::NotNc { certificate: NotNcCertificate::SncFailure { degree, monomials, .. } } = v
        else {
            panic!("{v:?}");
        };
        assert_eq!(degree, 4);
        assert_eq!(monomials, vec!["z^4", "y^4", "x^4"]);
    }

    #[test]
    fn cusp_and_pinch_shapes() {
        let ctx = VarContext::free(&["x", "y", "z"]);
        let v = is_nc_principal(&p(&ctx, "x^2 + y^3"), &ctx, 8).unwrap();
        assert!(matches!(
            v,
            NcVerdict::NotNc { certificate: NotNcCertificate::InvariantShape { .. } }
        ));
        let v = is_nc_principal(&p(&ctx, "x^2 - y^2*z"), &ctx, 8).unwrap();
        assert!(v.is_not_nc());
    }

    #[test]
    fn quadratic_field_node() {
        let ctx = VarContext::free(&["x", "y"]);
        let v = is_nc_principal(&p(&ctx, "x^2 - 2*y^2 + x^3"), &ctx, 10).unwrap();
        let NcVerdict::NcCertified { field, components, .. } = &v else { panic!("{v:?}") };
        assert_eq!(field, "Q(sqrt(2))");
        assert_eq!(components.len(), 2);
        let v = is_nc_principal(&p(&ctx, "x^2 + y^2 + y^3"), &ctx, 10).unwrap();
        assert!(v.is_nc(), "{v:?}");
    }

    #[test]
    fn dependent_and_nonlinear_cones() {
        let ctx = VarContext::free(&["x", "y"]);
        let v = is_nc_principal(&p(&ctx, "x*y*(x + y)"), &ctx, 8).unwrap();
        assert!(
            matches!(v, NcVerdict::NotNc { certificate: NotNcCertificate::DependentForms { .. } }),
            "{v:?}"
        );
        let ctx = VarContext::free(&["x", "y", "z"]);
        let v = is_nc_principal(&p(&ctx, "x^3 + y^3 + z^3"), &ctx, 8).unwrap();
        assert!(
            matches!(v, NcVerdict::NotNc { certificate: NotNcCertificate::NotLinear { .. } }),
            "{v:?}"
        );
        let v = is_nc_principal(&p(&ctx, "x^3 + 2*y^3 + 4*z^3"), &ctx, 8).unwrap();
        assert!(v.is_unsupported() || v.is_not_nc(), "{v:?}");
    }

    #[test]
    fn divisorial_prefix() {
        let ctx = ctx_of(&[("x", VarKind::Free), ("u", VarKind::Divisorial)]);
        let v = is_nc_principal(&p(&ctx, "u^2*(x + x^2*u)"), &ctx, 8).unwrap();
        let NcVerdict::NcCertified { components, .. } = &v else { panic!("{v:?}") };
        assert_eq!(components[0], NcComponent { form: "u".into(), multiplicity: 2 });
        let v = is_nc_principal(&p(&ctx, "x + u"), &ctx, 8).unwrap();
        assert!(v.is_nc(), "{v:?}");
        let v = is_nc_principal(&p(&ctx, "x*(x + u) + x^3"), &ctx, 8).unwrap();
        assert!(!v.is_nc(), "{v:?}");
    }

    #[test]
    fn tangent_to_the_divisor() {
        let ctx = ctx_of(&[("y", VarKind::Free), ("z", VarKind::Free), ("s", VarKind::Divisorial)]);
        let v = is_nc_principal(&p(&ctx, "s + y*z"), &ctx, 8).unwrap();
        assert!(
            matches!(v, NcVerdict::NotNc { certificate: NotNcCertificate::NotTransverse { .. } }),
            "{v:?}"
        );
        assert!(is_nc_principal(&p(&ctx, "s + y + y*z"), &ctx, 8).unwrap().is_nc());
    }

    #[test]
    fn ideals() {
        let ctx = VarContext::free(&["u1", "u2", "u3"]);
        let v = is_nc_ideal(&[p(&ctx, "u1"), p(&ctx, "u2*u3")], &ctx, 8, NcMode::AnyCodim).unwrap();
        let NcVerdict::NcCertified { codim, .. } = v else { panic!() };
        assert_eq!(codim, 2);
        let v = is_nc_ideal(&[p(&ctx, "u1"), p(&ctx, "u2*u3")], &ctx, 8, NcMode::CodimOne).unwrap();
        assert!(v.is_not_nc());
        let ctx = VarContext::free(&["x", "y"]);
        let v = is_nc_ideal(&[p(&ctx, "x + y^2"), p(&ctx, "x*y")], &ctx, 8, NcMode::AnyCodim).unwrap();
        assert!(v.is_nc(), "{v:?}");
        let v = is_nc_ideal(&[p(&ctx, "x + y^2"), p(&ctx, "x*y")], &ctx, 8, NcMode::Reduced).unwrap();
        assert!(v.is_not_nc(), "{v:?}");
        let ctx = VarContext::free(&["u1", "x", "y", "z"]);
        let gens = [p(&ctx, "u1"), p(&ctx, "x*y*z + x^4 + y^4 + z^4")];
        let v = is_nc_ideal(&gens, &ctx, 8, NcMode::AnyCodim).unwrap();
        assert!(v.is_not_nc(), "{v:?}");
    }

    #[test]
    fn pinch_along_parameter() {
        let ctx = ctx_of(&[("x", VarKind::Free), ("y", VarKind::Free), ("z", VarKind::Parameter)]);
        let h = p(&ctx, "x^2 - y^2*z");
        let samples: Vec<Vec<(usize, Rational)>> =
            [1, 2, -3, 0].iter().map(|&c| vec![(2, int(c))]).collect();
        let along = nc_along_parameters(&h, &ctx, &samples, 8).unwrap();
        assert_eq!(along.ramification.as_deref(), Some("z"));
        let verdicts: Vec<bool> = along.samples.iter().map(|(_, v)| v.is_nc()).collect();
        assert_eq!(verdicts, vec![true, true, true, false]);
        assert!(along.samples[3].1.is_not_nc());
    }

    #[test]
    fn parametric_split() {
        let ctx = ctx_of(&[("x", VarKind::Free), ("y", VarKind::Free), ("z", VarKind::Parameter)]);
        let h = p(&ctx, "(x + z*y)*(x + (z + 1)*y) + x^3 + y^3");
        let v = is_nc_principal(&h, &ctx, 8).unwrap();
        assert!(v.is_nc(), "{v:?}");
        // the lead coefficient can only be made z + c, never a unit
        let h = p(&ctx, "(x + z*y)*y + x^3");
        assert!(is_nc_principal(&h, &ctx, 8).unwrap().is_unsupported());
    }
}
