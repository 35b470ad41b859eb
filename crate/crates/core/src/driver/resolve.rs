//! The principalization loop away from the normal-crossings locus.

use num_traits::{One, Zero};
use serde::Serialize;

use super::problem::Problem;
use super::trace::{fmt_inv, point_strings, ChartSummary};
use crate::blowup::{center_disjoint_from_points, transform, Chart, ExceptionalRecord, LabeledPoint, TransformKind};
use crate::error::{Error, Result};
use crate::invariant::{canonical_invariant_with, CanonicalInvariant, InvariantVector, WeightedCenter};
use crate::ncdetect::{is_nc_ideal, NcMode, NcVerdict};
use crate::poly::Rational;

/// Charts with more non-parameter variables than this only sample their
/// origin and the user points.
pub const STRATA_LIMIT: usize = 10;

pub const SAMPLED_MAX_CAVEAT: &str = "sampled-max: centers are chosen at the lex-largest invariant among chart origins, \
coordinate strata origins and user points; global maximality is not claimed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    #[serde(rename = "terminated-NC")]
    TerminatedNc,
    #[serde(rename = "step-limit")]
    StepLimit,
    #[serde(rename = "unsupported")]
    Unsupported,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::TerminatedNc => "terminated-NC",
            Outcome::StepLimit => "step-limit",
            Outcome::Unsupported => "unsupported",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateKind {
    Origin,
    Stratum,
    Sample,
}

/// A sampled point of a chart with its verdict and invariant.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateRecord {
    pub label: String,
    pub kind: CandidateKind,
    pub point: Vec<String>,
    pub verdict: NcVerdict,
    pub invariant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_error: Option<String>,
    #[serde(skip)]
    pub coords: Vec<Rational>,
    #[serde(skip)]
    pub canonical: Option<CanonicalInvariant>,
}

impl CandidateRecord {
    pub fn invariant_vector(&self) -> Option<&InvariantVector> {
        self.canonical.as_ref().map(|c| &c.invariant)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub chart: usize,
    pub selected: String,
    pub point: Vec<String>,
    pub invariant: String,
    pub center: WeightedCenter,
    pub coordinates: Vec<(String, String)>,
    pub w: u64,
    pub weights: Vec<(String, u64)>,
    pub transform: TransformKind,
    pub exceptional: ExceptionalRecord,
    pub ideal_after: Vec<String>,
    #[serde(skip)]
    pub invariant_vector: InvariantVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionTrace {
    pub caveats: Vec<String>,
    /// The chart before each blow-up, with its sampled candidates.
    pub charts: Vec<ChartSummary<CandidateRecord>>,
    pub steps: Vec<StepRecord>,
    pub outcome: Outcome,
    pub reason: Option<String>,
    /// Exceptional divisors of the last chart and the powers divided out.
    pub exceptional: Vec<ExceptionalRecord>,
}

impl ResolutionTrace {
    pub fn last_chart(&self) -> &ChartSummary<CandidateRecord> {
        self.charts.last().expect("a trace has at least one chart")
    }
}

fn candidate_points(chart: &Chart) -> Vec<(String, CandidateKind, Vec<Rational>)> {
    let n = chart.nvars();
    let mut out = vec![("origin".to_string(), CandidateKind::Origin, vec![Rational::zero(); n])];
    let movable: Vec<usize> = (0..n).filter(|&i| !chart.ctx.is_parameter(i)).collect();
    if movable.len() <= STRATA_LIMIT {
        for mask in 1u32..(1 << movable.len()) {
            let mut p = vec![Rational::zero(); n];
            let mut names = Vec::new();
            for (k, &v) in movable.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    p[v] = Rational::one();
                    names.push(chart.ctx.name(v).to_string());
                }
            }
            out.push((format!("stratum[{}]", names.join(",")), CandidateKind::Stratum, p));
        }
    }
    for lp in &chart.points {
        out.push((lp.label.clone(), CandidateKind::Sample, lp.coords.clone()));
    }
    out
}

/// Verdict and invariant at a point of the chart; `None` when the point is
/// on a removed vertex or off the subscheme.
pub fn evaluate_point(
    chart: &Chart,
    label: &str,
    kind: CandidateKind,
    point: &[Rational],
    n: u32,
    mode: NcMode,
) -> Result<Option<CandidateRecord>> {
    if chart.on_vertex(point) || chart.ideal.iter().any(|g| !g.eval(point).is_zero()) {
        return Ok(None);
    }
    let local = chart.recenter(point)?;
    let verdict = is_nc_ideal(&local.ideal, &local.ctx, n, mode)?;
    let (canonical, invariant_error) = match canonical_invariant_with(&local.ideal, &local.ctx, n) {
        Ok(c) => (Some(c), None),
        Err(e @ Error::Assertion(_)) => return Err(e),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(Some(CandidateRecord {
        label: label.to_string(),
        kind,
        point: point_strings(point),
        verdict,
        invariant: canonical.as_ref().map(|c| fmt_inv(&c.invariant)),
        invariant_error,
        coords: point.to_vec(),
        canonical,
    }))
}

pub fn evaluate_chart(chart: &Chart, n: u32, mode: NcMode) -> Result<Vec<CandidateRecord>> {
    let mut out = Vec::new();
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    for (label, kind, p) in candidate_points(chart) {
        if seen.contains(&p) {
            continue;
        }
        seen.push(p.clone());
        if let Some(rec) = evaluate_point(chart, &label, kind, &p, n, mode)? {
            out.push(rec);
        }
    }
    Ok(out)
}

/// First candidate with the lex-largest invariant among the non-NC ones.
fn select(cands: &[CandidateRecord]) -> Option<&CandidateRecord> {
    let mut best: Option<&CandidateRecord> = None;
    for c in cands.iter().filter(|c| c.verdict.is_not_nc()) {
        let inv = c.invariant_vector()?;
        if best.is_none_or(|b| inv > b.invariant_vector().expect("selected with invariant")) {
            best = Some(c);
        }
    }
    best
}

/// Runs the loop: classify sampled points, blow up the maximal admissible
/// center at the worst non-NC point, repeat until every sampled point of
/// the subscheme is NC or the step limit is reached.
pub fn run_resolve_except_nc(problem: &Problem) -> Result<ResolutionTrace> {
    let cfg = &problem.config;
    let n = cfg.truncation;
    let mut chart = Chart::new(problem.ctx.clone(), problem.ideal.clone()).with_points(problem.points.clone());
    let mut charts = Vec::new();
    let mut steps: Vec<StepRecord> = Vec::new();

    let finish = |charts, steps, outcome, reason, chart: &Chart| {
        Ok(ResolutionTrace {
            caveats: vec![
                SAMPLED_MAX_CAVEAT.to_string(),
                format!("nc-truncation: NC verdicts are certified through degree {n}"),
            ],
            charts,
            steps,
            outcome,
            reason,
            exceptional: chart.exceptional.clone(),
        })
    };

    loop {
        if let Some(deg) = chart.ideal.iter().filter_map(|g| g.total_degree()).max() {
            if deg as usize > cfg.degree_bound {
                let reason = Error::DegreeBound { degree: deg as usize, bound: cfg.degree_bound }.to_string();
                charts.push(ChartSummary::new(&chart, Vec::new()));
                return finish(charts, steps, Outcome::Unsupported, Some(reason), &chart);
            }
        }
        let cands = evaluate_chart(&chart, n, problem.nc_mode)?;
        let unsupported = cands.iter().find_map(|c| match &c.verdict {
            NcVerdict::Unsupported { reason } => Some(format!("{}: {reason}", c.label)),
            _ => None,
        });
        let missing = cands.iter().find_map(|c| match (&c.verdict, &c.invariant_error) {
            (NcVerdict::NotNc { .. }, Some(e)) => Some(format!("{}: invariant: {e}", c.label)),
            _ => None,
        });
        let selected = select(&cands).cloned();
        charts.push(ChartSummary::new(&chart, cands.clone()));
        if let Some(reason) = unsupported.or(missing) {
            return finish(charts, steps, Outcome::Unsupported, Some(reason), &chart);
        }
        let Some(sel) = selected else {
            return finish(charts, steps, Outcome::TerminatedNc, None, &chart);
        };
        if steps.len() >= cfg.max_steps {
            return finish(charts, steps, Outcome::StepLimit, None, &chart);
        }
        let ci = sel.canonical.clone().expect("selected candidate has an invariant");
        if let Some(prev) = steps.last() {
            if ci.invariant >= prev.invariant_vector {
                return Err(Error::assertion(format!(
                    "invariant did not drop: {} after {}",
                    fmt_inv(&ci.invariant),
                    fmt_inv(&prev.invariant_vector)
                )));
            }
        }

        // NC-certified points ride along through the coordinate changes so
        // the center can be checked against them.
        let user = chart.points.len();
        let mut probe = chart.clone();
        for c in cands.iter().filter(|c| c.verdict.is_nc()) {
            probe.points.push(LabeledPoint { label: c.label.clone(), coords: c.coords.clone() });
        }
        let local = probe.recenter(&sel.coords)?.change_coordinates(&ci.change);
        let certified = &local.points[user..];
        for p in certified {
            if !center_disjoint_from_points(&ci.center, std::slice::from_ref(&p.coords)) {
                return Err(Error::assertion(format!(
                    "center {} contains the NC-certified point {}",
                    ci.center, p.label
                )));
            }
        }
        let mut local = local;
        local.points.truncate(user);
        let next = transform(&local, &ci.center, cfg.transform)?;
        let record = next.history.last().expect("transform records its blow-up").clone();
        steps.push(StepRecord {
            chart: chart.id,
            selected: sel.label.clone(),
            point: sel.point.clone(),
            invariant: fmt_inv(&ci.invariant),
            center: ci.center.clone(),
            coordinates: ci.change.describe(&chart.ctx),
            w: record.w,
            weights: record.weights.clone(),
            transform: record.transform,
            exceptional: next.exceptional.last().expect("transform records its divisor").clone(),
            ideal_after: next.ideal.iter().map(|g| g.display(&next.ctx).to_string()).collect(),
            invariant_vector: ci.invariant.clone(),
        });
        chart = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn run(text: &str) -> ResolutionTrace {
        run_resolve_except_nc(&Problem::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn pinch_point_one_step() {
        let t = run("vars: x, y, z\nideal: x^2 - y^2*z\npoints:\n  witness = (0, 0, 1)\n");
        assert_eq!(t.outcome, Outcome::TerminatedNc);
        assert_eq!(t.steps.len(), 1);
        let s = &t.steps[0];
        assert_eq!(s.invariant, "(2,3,3)");
        assert_eq!(s.center.to_string(), "(x^2, y^3, z^3)");
        assert_eq!(s.w, 6);
        assert_eq!(s.exceptional.removed, vec![6]);
        let first = &t.charts[0];
        let w = first.candidates.iter().find(|c| c.label == "witness");
        // (0,0,1) coincides with a stratum origin, which is evaluated first
        let witness = w.or_else(|| first.candidates.iter().find(|c| c.label == "stratum[z]")).unwrap();
        assert!(witness.verdict.is_nc());
        let last = t.last_chart();
        assert!(!last.candidates.is_empty());
        for c in &last.candidates {
            assert!(c.verdict.is_nc(), "{}: {}", c.label, c.verdict.summary());
            assert!(c.invariant_vector().unwrap() < &s.invariant_vector);
        }
        assert_eq!(t.exceptional.len(), 1);
    }

    #[test]
    fn cusp_surface_center() {
        let t = run("vars: x, y, w\nideal: x^2 + y^3 + w^4\n");
        assert_eq!(t.steps[0].invariant, "(2,3,4)");
        assert_eq!(t.steps[0].center.to_string(), "(x^2, y^3, w^4)");
        assert_eq!(t.steps[0].w, 12);
        assert_eq!(t.outcome, Outcome::TerminatedNc);
    }

    #[test]
    fn nc_input_needs_no_steps() {
        let t = run("vars: u1, u2, u3\nideal: u1\n  u2*u3\n");
        assert_eq!(t.outcome, Outcome::TerminatedNc);
        assert!(t.steps.is_empty());
        assert!(t.charts[0].candidates.iter().all(|c| c.verdict.is_nc()));
    }

    #[test]
    fn step_limit_zero() {
        let t = run("vars: x, y\nideal: y^2 - x^3\noptions:\n  max-steps = 0\n");
        assert_eq!(t.outcome, Outcome::StepLimit);
        assert!(t.steps.is_empty());
    }

    #[test]
    fn cusp_resolves_with_decreasing_invariants() {
        let t = run("vars: x, y\nideal: y^2 - x^3\n");
        assert_eq!(t.outcome, Outcome::TerminatedNc);
        for w in t.steps.windows(2) {
            assert!(w[1].invariant_vector < w[0].invariant_vector);
        }
    }

    #[test]
    fn divisorial_mixed_tail_is_unsupported() {
        // after one step the transform is s*(x^4 + y^4 + z^4) + xyz, whose
        // invariant at (1,0,0,0) needs a maximal contact along s
        let t = run("vars: x, y, z\nideal: x*y*z + x^4 + y^4 + z^4\n");
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.outcome, Outcome::Unsupported);
        assert!(t.reason.as_deref().unwrap().contains("divisorial"));
        let tangent = t.last_chart().candidates.iter().find(|c| c.label == "stratum[x]").unwrap();
        assert!(tangent.verdict.is_not_nc());
    }

    #[test]
    fn vertex_points_are_skipped() {
        let t = run("vars: x, y, z\nideal: x^2 - y^2*z\n");
        let last = t.last_chart();
        assert!(last.candidates.iter().all(|c| c.label != "origin"));
        assert_eq!(last.removed_vertices.len(), 1);
        let p = &t.charts[1];
        assert_eq!(p.vars.len(), 4);
        let _ = int(0);
    }
}
