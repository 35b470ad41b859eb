//! Mode dispatch: each mode produces a text report and a JSON trace.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use super::problem::Problem;
use super::resolve::{run_resolve_except_nc, Outcome, ResolutionTrace};
use super::trace::{fmt_inv, point_strings, poly_strings, var_echo, ProblemEcho, VarEcho};
use crate::blowup::{blowup_weights, transform, Chart, ExceptionalRecord, TransformKind};
use crate::error::{Error, Result};
use crate::invariant::{admissible, canonical_invariant_with, Level, WeightedCenter};
use crate::ncdetect::{is_nc_ideal, NcVerdict};
use crate::poly::{Rational, VarContext};
use crate::splitting::{
    independent_factors_at, monicize, ramification_locus, splitting_field_degree, FieldDegree,
    SplittingForm,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Invariant,
    Center,
    Blowup,
    Ncfactor,
    Split,
    Resolve,
}

impl Mode {
    pub const ALL: [Mode; 6] = [
        Mode::Invariant,
        Mode::Center,
        Mode::Blowup,
        Mode::Ncfactor,
        Mode::Split,
        Mode::Resolve,
    ];

    pub fn parse(text: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.as_str() == text)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Invariant => "invariant",
            Mode::Center => "center",
            Mode::Blowup => "blowup",
            Mode::Ncfactor => "ncfactor",
            Mode::Split => "split",
            Mode::Resolve => "resolve",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Unsupported,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: String,
    pub status: Status,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    mode: Mode,
    problem: ProblemEcho,
    status: &'static str,
    result: &'a T,
}

/// Errors that describe inputs outside the supported class rather than
/// malformed input or a broken invariant.
fn is_soft(e: &Error) -> bool {
    e.exit_code() == 2
}

#[derive(Serialize)]
struct Unsupported {
    reason: String,
}

pub fn run_mode(mode: Mode, problem: &Problem) -> Result<Report> {
    let result = match mode {
        Mode::Invariant => invariant_mode(problem, false),
        Mode::Center => invariant_mode(problem, true),
        Mode::Blowup => blowup_mode(problem),
        Mode::Ncfactor => ncfactor_mode(problem),
        Mode::Split => split_mode(problem),
        Mode::Resolve => resolve_mode(problem),
    };
    match result {
        Ok(r) => Ok(r),
        Err(e) if is_soft(&e) => {
            let reason = e.to_string();
            let json = envelope(mode, problem, Status::Unsupported, &Unsupported { reason: reason.clone() });
            Ok(Report {
                text: format!("unsupported: {reason}\n"),
                json,
                status: Status::Unsupported,
            })
        }
        Err(e) => Err(e),
    }
}

fn envelope<T: Serialize>(mode: Mode, problem: &Problem, status: Status, result: &T) -> String {
    let env = Envelope {
        mode,
        problem: ProblemEcho::new(problem),
        status: match status {
            Status::Ok => "ok",
            Status::Unsupported => "unsupported",
        },
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("trace types serialize");
    s.push('\n');
    s
}

/// The origin first, then the sample points in file order.
fn locations(problem: &Problem) -> Vec<(String, Vec<Rational>)> {
    let mut out = vec![("origin".to_string(), vec![Rational::zero(); problem.ctx.len()])];
    out.extend(problem.points.iter().map(|p| (p.label.clone(), p.coords.clone())));
    out
}

fn chart_at(problem: &Problem, point: &[Rational]) -> Result<Chart> {
    Chart::new(problem.ctx.clone(), problem.ideal.clone()).recenter(point)
}

fn on_subscheme(problem: &Problem, point: &[Rational]) -> bool {
    problem.ideal.iter().all(|g| g.eval(point).is_zero())
}

#[derive(Serialize)]
struct CenterData {
    w: u64,
    weights: Vec<(String, u64)>,
    stabilizer_order: u64,
    integral: bool,
    admissible: bool,
}

#[derive(Serialize)]
struct InvariantAt {
    label: String,
    point: Vec<String>,
    invariant: String,
    normalized: String,
    center: WeightedCenter,
    coordinates: Vec<(String, String)>,
    levels: Vec<Level>,
    #[serde(skip_serializing_if = "Option::is_none")]
    center_data: Option<CenterData>,
}

fn invariant_mode(problem: &Problem, center: bool) -> Result<Report> {
    let n = problem.config.truncation;
    let mut rows = Vec::new();
    let mut text = String::new();
    for (label, p) in locations(problem) {
        let chart = chart_at(problem, &p)?;
        let ci = canonical_invariant_with(&chart.ideal, &chart.ctx, n)?;
        let center_data = if center && !ci.center.is_empty() {
            let bw = blowup_weights(&ci.center)?;
            Some(CenterData {
                w: bw.w,
                weights: bw.weights.iter().map(|(v, wi)| (chart.ctx.name(*v).to_string(), *wi)).collect(),
                stabilizer_order: bw.denominator,
                integral: ci.center.is_integral(),
                admissible: admissible(&ci.transformed, &ci.center),
            })
        } else {
            None
        };
        let inv = fmt_inv(&ci.invariant);
        let _ = write!(text, "{label}: {inv}, center {}", ci.center);
        if let Some(d) = &center_data {
            let ws: Vec<String> = d.weights.iter().map(|(v, wi)| format!("{v}:{wi}")).collect();
            let _ = write!(text, ", w = {}, weights [{}], admissible {}", d.w, ws.join(", "), d.admissible);
        }
        text.push('\n');
        rows.push(InvariantAt {
            label,
            point: point_strings(&p),
            invariant: inv,
            normalized: fmt_inv(&ci.invariant.normalize()),
            center: ci.center.clone(),
            coordinates: ci.change.describe(&chart.ctx),
            levels: ci.levels.clone(),
            center_data,
        });
    }
    let mode = if center { Mode::Center } else { Mode::Invariant };
    Ok(Report {
        json: envelope(mode, problem, Status::Ok, &rows),
        text,
        status: Status::Ok,
    })
}

#[derive(Serialize)]
struct BlowupResult {
    label: String,
    point: Vec<String>,
    invariant: String,
    center: WeightedCenter,
    w: u64,
    weights: Vec<(String, u64)>,
    transform: TransformKind,
    vars: Vec<VarEcho>,
    ideal: Vec<String>,
    exceptional: ExceptionalRecord,
    group_order: u64,
}

/// Blows up the maximal admissible center at the first sample point, or at
/// the origin when there is none.
fn blowup_mode(problem: &Problem) -> Result<Report> {
    let (label, p) = match problem.points.first() {
        Some(lp) => (lp.label.clone(), lp.coords.clone()),
        None => ("origin".to_string(), vec![Rational::zero(); problem.ctx.len()]),
    };
    let chart = chart_at(problem, &p)?;
    let ci = canonical_invariant_with(&chart.ideal, &chart.ctx, problem.config.truncation)?;
    if ci.center.is_empty() {
        return Err(Error::unsupported(format!("nothing to blow up at {label}: the ideal is the unit ideal there")));
    }
    let local = chart.change_coordinates(&ci.change);
    let next = transform(&local, &ci.center, problem.config.transform)?;
    let rec = next.history.last().expect("blow-up recorded").clone();
    let ex = next.exceptional.last().expect("divisor recorded").clone();
    let ideal = poly_strings(&next.ideal, &next.ctx);
    let text = format!(
        "{label}: center {} (w = {}), {} transform divided {} by {:?}\nideal: {}\n",
        ci.center,
        rec.w,
        rec.transform.as_str(),
        ex.var,
        ex.removed,
        ideal.join(", ")
    );
    let out = BlowupResult {
        label,
        point: point_strings(&p),
        invariant: fmt_inv(&ci.invariant),
        center: ci.center,
        w: rec.w,
        weights: rec.weights,
        transform: rec.transform,
        vars: var_echo(&next.ctx),
        ideal,
        exceptional: ex,
        group_order: next.group_order,
    };
    Ok(Report {
        json: envelope(Mode::Blowup, problem, Status::Ok, &out),
        text,
        status: Status::Ok,
    })
}

#[derive(Serialize)]
struct VerdictAt {
    label: String,
    point: Vec<String>,
    on_subscheme: bool,
    verdict: Option<NcVerdict>,
}

fn ncfactor_mode(problem: &Problem) -> Result<Report> {
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut status = Status::Ok;
    for (label, p) in locations(problem) {
        if !on_subscheme(problem, &p) {
            let _ = writeln!(text, "{label}: not on the subscheme");
            rows.push(VerdictAt { label, point: point_strings(&p), on_subscheme: false, verdict: None });
            continue;
        }
        let chart = chart_at(problem, &p)?;
        let v = is_nc_ideal(&chart.ideal, &chart.ctx, problem.config.truncation, problem.nc_mode)?;
        if v.is_unsupported() {
            status = Status::Unsupported;
        }
        let _ = writeln!(text, "{label}: {}", v.summary());
        if let NcVerdict::NcCertified { components, .. } = &v {
            for c in components {
                let _ = writeln!(text, "  ({})^{}", c.form, c.multiplicity);
            }
        }
        rows.push(VerdictAt { label, point: point_strings(&p), on_subscheme: true, verdict: Some(v) });
    }
    Ok(Report {
        json: envelope(Mode::Ncfactor, problem, status, &rows),
        text,
        status,
    })
}

#[derive(Serialize)]
struct DegreeData {
    degree: u64,
    cyclic: Option<usize>,
    quadratic_classes: Vec<String>,
}

fn degree_data(d: &FieldDegree, ctx: &VarContext) -> DegreeData {
    DegreeData {
        degree: d.degree,
        cyclic: d.cyclic,
        quadratic_classes: poly_strings(&d.quadratic_classes, ctx),
    }
}

#[derive(Serialize)]
struct SplitAt {
    label: String,
    parameters: Vec<(String, String)>,
    field: DegreeData,
    independent_factors: bool,
}

#[derive(Serialize)]
struct SplitResult {
    form: String,
    degree: u32,
    center_vars: Vec<String>,
    parameters: Vec<String>,
    monic_form: String,
    shifts: Vec<(String, String)>,
    generic: DegreeData,
    ramification_locus: String,
    points: Vec<SplitAt>,
}

fn split_mode(problem: &Problem) -> Result<Report> {
    let [form] = problem.ideal.as_slice() else {
        return Err(Error::Usage(format!(
            "split mode needs exactly one generator, the ideal has {}",
            problem.ideal.len()
        )));
    };
    let ctx = &problem.ctx;
    let f = SplittingForm::new(ctx.clone(), form.clone())?;
    let (m, change) = monicize(&f)?;
    let generic = splitting_field_degree(&f, None)?;
    let locus = ramification_locus(&f)?;
    let params = f.params();
    let mut points = Vec::new();
    for lp in &problem.points {
        let values: Vec<(usize, Rational)> = params.iter().map(|&v| (v, lp.coords[v].clone())).collect();
        let d = splitting_field_degree(&f, Some(&values))?;
        let independent = independent_factors_at(&f, &values)?;
        points.push(SplitAt {
            label: lp.label.clone(),
            parameters: values.iter().map(|(v, q)| (ctx.name(*v).to_string(), q.to_string())).collect(),
            field: degree_data(&d, ctx),
            independent_factors: independent,
        });
    }
    let locus_text = if locus.is_zero() {
        "everywhere".to_string()
    } else if locus.is_constant() {
        "empty".to_string()
    } else {
        locus.display(ctx).to_string()
    };
    let mut text = format!("form {} of degree {}\n", f.render(), f.degree());
    let _ = write!(text, "splitting field degree {}", generic.degree);
    if let Some(k) = generic.cyclic {
        let _ = write!(text, ", cyclic of order {k}");
    }
    let _ = writeln!(text, ", ramification locus {locus_text}");
    for p in &points {
        let vals: Vec<String> = p.parameters.iter().map(|(v, q)| format!("{v}={q}")).collect();
        let _ = writeln!(
            text,
            "{} ({}): degree {}, independent factors {}",
            p.label,
            vals.join(", "),
            p.field.degree,
            p.independent_factors
        );
    }
    let out = SplitResult {
        form: f.render(),
        degree: f.degree(),
        center_vars: f.vars().iter().map(|&v| ctx.name(v).to_string()).collect(),
        parameters: params.iter().map(|&v| ctx.name(v).to_string()).collect(),
        monic_form: m.render(),
        shifts: change.shifts.iter().map(|(v, q)| (ctx.name(*v).to_string(), q.to_string())).collect(),
        generic: degree_data(&generic, ctx),
        ramification_locus: locus_text,
        points,
    };
    Ok(Report {
        json: envelope(Mode::Split, problem, Status::Ok, &out),
        text,
        status: Status::Ok,
    })
}

pub fn render_resolution(trace: &ResolutionTrace) -> String {
    let mut text = String::new();
    for (i, s) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            text,
            "step {}: chart {} at {} inv {} center {} w = {} ({} transform, {} divided by {:?})",
            i + 1,
            s.chart,
            s.selected,
            s.invariant,
            s.center,
            s.w,
            s.transform.as_str(),
            s.exceptional.var,
            s.exceptional.removed
        );
        let _ = writeln!(text, "  ideal: {}", s.ideal_after.join(", "));
    }
    let last = trace.last_chart();
    for c in &last.candidates {
        let _ = writeln!(
            text,
            "  {} {:?}: {} inv {}",
            c.label,
            c.point,
            c.verdict.summary(),
            c.invariant.as_deref().unwrap_or("n/a")
        );
    }
    let _ = write!(text, "outcome: {}", trace.outcome.as_str());
    if let Some(r) = &trace.reason {
        let _ = write!(text, " ({r})");
    }
    text.push('\n');
    for c in &trace.caveats {
        let _ = writeln!(text, "note: {c}");
    }
    text
}

fn resolve_mode(problem: &Problem) -> Result<Report> {
    let trace = run_resolve_except_nc(problem)?;
    let status = if trace.outcome == Outcome::Unsupported {
        Status::Unsupported
    } else {
        Status::Ok
    };
    Ok(Report {
        text: render_resolution(&trace),
        json: envelope(Mode::Resolve, problem, status, &trace),
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::cyclic_form;

    fn report(mode: Mode, text: &str) -> Report {
        run_mode(mode, &Problem::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn invariant_report() {
        let r = report(Mode::Invariant, "vars: x, y, w\nideal: x^2 + y^3 + w^4\n");
        assert_eq!(r.text, "origin: (2,3,4), center (x^2, y^3, w^4)\n");
        assert_eq!(r.status, Status::Ok);
    }

    #[test]
    fn center_report_has_weights() {
        let r = report(Mode::Center, "vars: x, y, z\nideal: x^2 - y^2*z\n");
        assert!(r.text.contains("w = 6, weights [x:3, y:2, z:2], admissible true"), "{}", r.text);
    }

    #[test]
    fn blowup_report() {
        let r = report(Mode::Blowup, "vars: x, y, z\nideal: x^2 - y^2*z\n");
        assert!(r.text.contains("divided s1 by [6]"), "{}", r.text);
        assert!(r.json.contains("\"group_order\": 1"));
    }

    #[test]
    fn ncfactor_triple_point_certificate() {
        let r = report(Mode::Ncfactor, "vars: x, y, z\nideal: x*y*z + x^4 + y^4 + z^4\n");
        assert!(r.text.contains("{z^4, y^4, x^4}"), "{}", r.text);
        assert_eq!(r.status, Status::Ok);
    }

    #[test]
    fn split_cp3() {
        let cp = cyclic_form(3).unwrap();
        let text = format!("vars: x0, x1, x2, z: parameter\nideal: {}\n", cp.render());
        let r = report(Mode::Split, &text);
        assert!(
            r.text.contains("splitting field degree 3, cyclic of order 3, ramification locus z"),
            "{}",
            r.text
        );
    }

    #[test]
    fn split_needs_one_generator() {
        let p = Problem::parse("vars: x, y\nideal: x\n  y\n").unwrap();
        assert_eq!(run_mode(Mode::Split, &p).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn unsupported_is_reported() {
        let r = report(Mode::Split, "vars: x, y\nideal: x^2 + y\n");
        assert_eq!(r.status, Status::Unsupported);
        assert!(r.json.contains("\"status\": \"unsupported\""));
    }

    #[test]
    fn traces_are_deterministic() {
        let text = "vars: x, y, z\nideal: x^2 - y^2*z\npoints:\n  witness = (0, 0, 1)\n";
        for m in Mode::ALL {
            let a = report(m, text);
            let b = report(m, text);
            assert_eq!(a.json, b.json, "{}", m.as_str());
        }
    }
}
