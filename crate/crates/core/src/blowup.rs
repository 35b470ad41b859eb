//! The affine chart of the cobordant weighted blow-up and its transforms.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariant::{admissible, CoordinateChange, WeightedCenter};
use crate::poly::{lcm_int, Monomial, Poly, Rational, VarContext, VarKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Total,
    Controlled,
    Strict,
}

impl TransformKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TransformKind::Total => "total",
            TransformKind::Controlled => "controlled",
            TransformKind::Strict => "strict",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledPoint {
    pub label: String,
    #[serde(serialize_with = "ser_point")]
    pub coords: Vec<Rational>,
}

fn ser_point<S: serde::Serializer>(p: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.len()))?;
    for q in p {
        seq.serialize_element(&q.to_string())?;
    }
    seq.end()
}

/// Exceptional variable and the power of it divided out of each generator
/// when it was created.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalRecord {
    pub var: String,
    pub removed: Vec<u32>,
}

/// One applied blow-up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupRecord {
    pub center: WeightedCenter,
    pub w: u64,
    pub weights: Vec<(String, u64)>,
    pub exceptional: String,
    pub transform: TransformKind,
    pub removed: Vec<u32>,
}

/// Exponent data of a weighted blow-up: `w` and `w_i = w / a_i`, plus the
/// lcm of the exponent denominators (the stabilizer order contribution).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupWeights {
    pub w: u64,
    pub weights: Vec<(usize, u64)>,
    pub denominator: u64,
}

/// Smallest positive integer `w` with every `w / a_i` integral: the lcm of
/// the numerators of the `a_i` in lowest terms.
pub fn blowup_weights(center: &WeightedCenter) -> Result<BlowupWeights> {
    let mut w = BigInt::one();
    let mut den = BigInt::one();
    for e in &center.entries {
        if e.exponent <= Rational::zero() {
            return Err(Error::unsupported("center exponents must be positive"));
        }
        w = lcm_int(&w, e.exponent.numer());
        den = lcm_int(&den, e.exponent.denom());
    }
    let wr = Rational::from_integer(w.clone());
    let mut weights = Vec::new();
    for e in &center.entries {
        let wi = &wr / &e.exponent;
        debug_assert!(wi.is_integer());
        let wi = wi
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::unsupported("blow-up weight too large"))?;
        weights.push((e.var, wi));
    }
    let to64 = |b: &BigInt| b.to_u64().ok_or_else(|| Error::unsupported("blow-up weight too large"));
    Ok(BlowupWeights {
        w: to64(&w)?,
        weights,
        denominator: to64(&den)?,
    })
}

/// A node of the resolution: coordinates, ideal, divisor ledger, history,
/// sample points carried along, and loci removed from the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub id: usize,
    pub ctx: VarContext,
    pub ideal: Vec<Poly>,
    pub exceptional: Vec<ExceptionalRecord>,
    pub history: Vec<BlowupRecord>,
    pub group_order: u64,
    pub points: Vec<LabeledPoint>,
    /// Each entry is a set of functions whose common zero locus is not part
    /// of the chart (vertices of earlier blow-ups).
    pub excluded: Vec<Vec<Poly>>,
}

impl Chart {
    pub fn new(ctx: VarContext, ideal: Vec<Poly>) -> Self {
        Chart {
            id: 0,
            ctx,
            ideal,
            exceptional: Vec::new(),
            history: Vec::new(),
            group_order: 1,
            points: Vec::new(),
            excluded: Vec::new(),
        }
    }

    pub fn with_points(mut self, points: Vec<LabeledPoint>) -> Self {
        self.points = points;
        self
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    /// Whether the point lies on an excluded vertex.
    pub fn on_vertex(&self, point: &[Rational]) -> bool {
        self.excluded
            .iter()
            .any(|locus| locus.iter().all(|f| f.eval(point).is_zero()))
    }

    pub fn check_point(&self, point: &[Rational]) -> Result<()> {
        if self.on_vertex(point) {
            Err(Error::VertexPoint)
        } else {
            Ok(())
        }
    }

    /// Moves `point` to the origin. Divisorial variables with a nonzero
    /// coordinate are units near the point and become free.
    pub fn recenter(&self, point: &[Rational]) -> Result<Chart> {
        self.check_point(point)?;
        let n = self.nvars();
        let images: Vec<Poly> = (0..n)
            .map(|i| &Poly::var(n, i) + &Poly::constant(n, point[i].clone()))
            .collect();
        let mut out = self.map_functions(|f| f.compose(&images));
        for (i, q) in point.iter().enumerate() {
            if !q.is_zero() && out.ctx.kind(i) == VarKind::Divisorial {
                out.ctx.set_kind(i, VarKind::Free);
            }
        }
        for p in &mut out.points {
            for (c, q) in p.coords.iter_mut().zip(point) {
                *c -= q;
            }
        }
        Ok(out)
    }

    /// Rewrites the chart in the coordinates produced by `change`.
    pub fn change_coordinates(&self, change: &CoordinateChange) -> Chart {
        if change.is_identity() {
            return self.clone();
        }
        let mask = self.ctx.center_mask();
        let forward = change.forward_map(self.nvars());
        let mut out = self.map_functions(|f| change.apply(f, &mask));
        for p in &mut out.points {
            p.coords = forward.iter().map(|g| g.eval(&p.coords)).collect();
        }
        out
    }

    fn map_functions(&self, f: impl Fn(&Poly) -> Poly) -> Chart {
        let mut out = self.clone();
        out.ideal = self.ideal.iter().map(&f).collect();
        out.excluded = self
            .excluded
            .iter()
            .map(|locus| locus.iter().map(&f).collect())
            .collect();
        out
    }
}

/// Whether no point lies in `V(J)`.
pub fn center_disjoint_from_points(center: &WeightedCenter, points: &[Vec<Rational>]) -> bool {
    points.iter().all(|p| !center.contains_point(p))
}

fn check_center(chart: &Chart, center: &WeightedCenter) -> Result<()> {
    if center.is_empty() {
        return Err(Error::NotAdmissible("empty center".into()));
    }
    for e in &center.entries {
        if chart.ctx.is_parameter(e.var) {
            return Err(Error::ParameterVariable(e.name.clone()));
        }
    }
    if !admissible(&chart.ideal, center) {
        return Err(Error::NotAdmissible(format!(
            "ideal is not contained in the sections of {center}"
        )));
    }
    Ok(())
}

/// Blows up `center` and returns the chart carrying the total transform
/// together with the weight data.
pub fn cobordant_blowup(chart: &Chart, center: &WeightedCenter) -> Result<(Chart, BlowupWeights)> {
    check_center(chart, center)?;
    let bw = blowup_weights(center)?;
    let n = chart.nvars();
    let mut ctx = chart.ctx.clone();
    let sname = ctx.fresh_name("s");
    let s = ctx.push(sname.clone(), VarKind::Divisorial)?;
    let m = n + 1;

    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(m, i)).collect();
    for &(v, wi) in &bw.weights {
        let mono = Monomial::var(m, v).with_exp(s, wi as u32);
        images[v] = Poly::term(mono, Rational::one());
    }
    let pull = |f: &Poly| f.compose(&images);

    let vertex: Vec<Poly> = center.vars().iter().map(|&v| Poly::var(m, v)).collect();
    let mut excluded: Vec<Vec<Poly>> = chart.excluded.iter().map(|l| l.iter().map(pull).collect()).collect();
    excluded.push(vertex);

    let points = chart
        .points
        .iter()
        .filter(|p| !center.contains_point(&p.coords))
        .map(|p| {
            let mut coords = p.coords.clone();
            coords.push(Rational::one());
            LabeledPoint {
                label: p.label.clone(),
                coords,
            }
        })
        .collect();

    let out = Chart {
        id: chart.id + 1,
        ctx,
        ideal: chart.ideal.iter().map(pull).collect(),
        exceptional: chart.exceptional.clone(),
        history: chart.history.clone(),
        group_order: chart.group_order * bw.denominator,
        points,
        excluded,
    };
    Ok((out, bw))
}

/// Blow-up followed by the requested transform of every generator.
pub fn transform(chart: &Chart, center: &WeightedCenter, kind: TransformKind) -> Result<Chart> {
    let (mut out, bw) = cobordant_blowup(chart, center)?;
    let s = out.nvars() - 1;
    let sname = out.ctx.name(s).to_string();
    let mut removed = Vec::with_capacity(out.ideal.len());
    let mut ideal = Vec::with_capacity(out.ideal.len());
    for f in &out.ideal {
        let k = match kind {
            TransformKind::Total => 0,
            TransformKind::Controlled => bw.w as u32,
            TransformKind::Strict => f.var_valuation(s),
        };
        let g = f.div_var_power(s, k).ok_or_else(|| {
            Error::NotAdmissible(format!("total transform not divisible by {sname}^{k}"))
        })?;
        removed.push(k);
        ideal.push(g);
    }
    out.ideal = ideal;
    out.exceptional.push(ExceptionalRecord {
        var: sname.clone(),
        removed: removed.clone(),
    });
    out.history.push(BlowupRecord {
        center: center.clone(),
        w: bw.w,
        weights: bw
            .weights
            .iter()
            .map(|(v, wi)| (chart.ctx.name(*v).to_string(), *wi))
            .collect(),
        exceptional: sname,
        transform: kind,
        removed,
    });
    Ok(out)
}

pub fn controlled_transform(chart: &Chart, center: &WeightedCenter) -> Result<Chart> {
    transform(chart, center, TransformKind::Controlled)
}

pub fn strict_transform(chart: &Chart, center: &WeightedCenter) -> Result<Chart> {
    transform(chart, center, TransformKind::Strict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_expr, rat};

    fn pinch() -> (Chart, WeightedCenter) {
        let ctx = VarContext::free(&["x", "y", "z"]);
        let f = parse_expr("x^2 - y^2*z", &ctx).unwrap();
        let j = WeightedCenter::from_names(&ctx, &[("x", int(2)), ("y", int(3)), ("z", int(3))]).unwrap();
        (Chart::new(ctx, vec![f]), j)
    }

    #[test]
    fn pinch_point_weights() {
        let (chart, j) = pinch();
        let (total, bw) = cobordant_blowup(&chart, &j).unwrap();
        assert_eq!(bw.w, 6);
        assert_eq!(bw.weights, vec![(0, 3), (1, 2), (2, 2)]);
        let f = parse_expr("s1^6*(x^2 - y^2*z)", &total.ctx).unwrap();
        assert_eq!(total.ideal, vec![f]);
        assert_eq!(total.group_order, 1);

        let c = controlled_transform(&chart, &j).unwrap();
        assert_eq!(c.ideal[0], parse_expr("x^2 - y^2*z", &c.ctx).unwrap());
        assert_eq!(c.exceptional[0].removed, vec![6]);
        assert!(c.ctx.is_divisorial(3));
        let s = strict_transform(&chart, &j).unwrap();
        assert_eq!(s.ideal, c.ideal);
    }

    #[test]
    fn smooth_and_fractional_centers() {
        let ctx = VarContext::free(&["x", "y"]);
        let f = parse_expr("x^2 + y^2", &ctx).unwrap();
        let chart = Chart::new(ctx.clone(), vec![f]);
        let j1 = WeightedCenter::from_names(&ctx, &[("x", int(1)), ("y", int(1))]).unwrap();
        let (t, bw) = cobordant_blowup(&chart, &j1).unwrap();
        assert_eq!((bw.w, bw.weights.clone()), (1, vec![(0, 1), (1, 1)]));
        assert_eq!(t.ideal[0], parse_expr("s1^2*(x^2 + y^2)", &t.ctx).unwrap());
        let j2 = WeightedCenter::from_names(&ctx, &[("x", int(2)), ("y", int(2))]).unwrap();
        let c = controlled_transform(&chart, &j2).unwrap();
        assert_eq!(c.ideal[0], parse_expr("x^2 + y^2", &c.ctx).unwrap());

        let half = WeightedCenter::from_names(&ctx, &[("x", rat(1, 2))]).unwrap();
        let lin = Chart::new(ctx.clone(), vec![parse_expr("x^3", &ctx).unwrap()]);
        let (t, bw) = cobordant_blowup(&lin, &half).unwrap();
        assert_eq!((bw.w, bw.denominator), (1, 2));
        assert_eq!(t.group_order, 2);
        assert_eq!(t.ideal[0], parse_expr("s1^6*x^3", &t.ctx).unwrap());
    }

    #[test]
    fn not_admissible() {
        let ctx = VarContext::free(&["x"]);
        let chart = Chart::new(ctx.clone(), vec![Poly::var(1, 0)]);
        let j = WeightedCenter::from_names(&ctx, &[("x", int(2))]).unwrap();
        assert!(matches!(cobordant_blowup(&chart, &j), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn strict_divides_maximal_power() {
        let ctx = VarContext::free(&["x", "y"]);
        let chart = Chart::new(ctx.clone(), vec![parse_expr("x*y", &ctx).unwrap()]);
        let j = WeightedCenter::from_names(&ctx, &[("x", int(1))]).unwrap();
        let s = strict_transform(&chart, &j).unwrap();
        assert_eq!(s.ideal[0], parse_expr("x*y", &s.ctx).unwrap());
    }

    #[test]
    fn vertex_and_point_lifting() {
        let (chart, j) = pinch();
        let chart = chart.with_points(vec![
            LabeledPoint { label: "axis".into(), coords: vec![int(0), int(0), int(1)] },
            LabeledPoint { label: "origin".into(), coords: vec![int(0), int(0), int(0)] },
        ]);
        assert!(center_disjoint_from_points(&j, &[vec![int(0), int(0), int(1)]]));
        assert!(!center_disjoint_from_points(&j, &[vec![int(0), int(0), int(0)]]));
        let c = controlled_transform(&chart, &j).unwrap();
        assert_eq!(c.points.len(), 1);
        assert_eq!(c.points[0].coords, vec![int(0), int(0), int(1), int(1)]);
        assert!(c.on_vertex(&[int(0), int(0), int(0), int(5)]));
        assert!(!c.on_vertex(&[int(0), int(1), int(0), int(0)]));
        assert_eq!(c.recenter(&vec![int(0); 4]), Err(Error::VertexPoint));
        let local = c.recenter(&[int(0), int(0), int(1), int(1)]).unwrap();
        assert_eq!(local.ctx.kind(3), VarKind::Free);
    }
}
