//! Problem files.
//!
//! A problem file is UTF-8 text split into sections. A section starts with a
//! header line `vars:`, `ideal:`, `divisor:`, `points:` or `options:`; text
//! after the colon on a header line counts as the first entry. `#` starts a
//! comment, blank lines are ignored.
//!
//! ```text
//! vars:
//!   x: free
//!   y, z
//!   t: parameter
//! ideal:
//!   x^2 - y^2*z
//! divisor: u
//! points:
//!   witness = (0, 0, 1, 0)
//!   other = x=1/2, z=1
//! options:
//!   truncation = 8
//!   max-steps = 12
//!   nc-mode = any-codim
//!   transform = controlled
//!   degree-bound = 32
//! ```
//!
//! Variables default to `free`; kinds are `free`, `divisorial` (`div`) and
//! `parameter` (`param`). Names listed under `divisor:` become divisorial.
//! A point is either a full tuple in variable order or a list of
//! `name=value` assignments, unlisted coordinates being zero.

use serde::Serialize;

use crate::blowup::{LabeledPoint, TransformKind};
use crate::error::{Error, Result};
use crate::ncdetect::NcMode;
use crate::poly::{parse_expr, parse_rational, Poly, Rational, VarContext, VarKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub truncation: u32,
    pub max_steps: usize,
    pub degree_bound: usize,
    pub transform: TransformKind,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            truncation: 8,
            max_steps: 12,
            degree_bound: 32,
            transform: TransformKind::Controlled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub ctx: VarContext,
    pub ideal: Vec<Poly>,
    pub points: Vec<LabeledPoint>,
    pub nc_mode: NcMode,
    pub config: Config,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Vars,
    Ideal,
    Divisor,
    Points,
    Options,
}

fn header(line: &str) -> Option<(Section, &str)> {
    let (head, rest) = line.split_once(':')?;
    let s = match head.trim() {
        "vars" => Section::Vars,
        "ideal" => Section::Ideal,
        "divisor" => Section::Divisor,
        "points" => Section::Points,
        "options" => Section::Options,
        _ => return None,
    };
    Some((s, rest.trim()))
}

fn input(line: usize, message: impl Into<String>) -> Error {
    Error::Input {
        line,
        message: message.into(),
    }
}

/// Re-labels an error from a sub-parser with the line it came from.
fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Input { line: 0, message } => input(line, message),
        Error::Input { .. } => e,
        other => input(line, other.to_string()),
    }
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem> {
        let mut section = None;
        let mut vars: Vec<(usize, String)> = Vec::new();
        let mut ideal: Vec<(usize, String)> = Vec::new();
        let mut divisor: Vec<(usize, String)> = Vec::new();
        let mut points: Vec<(usize, String)> = Vec::new();
        let mut options: Vec<(usize, String)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let body = match header(line) {
                Some((s, rest)) => {
                    section = Some(s);
                    if rest.is_empty() {
                        continue;
                    }
                    rest
                }
                None => line,
            };
            let bucket = match section {
                Some(Section::Vars) => &mut vars,
                Some(Section::Ideal) => &mut ideal,
                Some(Section::Divisor) => &mut divisor,
                Some(Section::Points) => &mut points,
                Some(Section::Options) => &mut options,
                None => return Err(input(lineno, "text before the first section header")),
            };
            bucket.push((lineno, body.to_string()));
        }

        let ctx = parse_vars(&vars, &divisor)?;
        if ideal.is_empty() {
            return Err(input(text.lines().count().max(1), "missing `ideal:` section"));
        }
        let mut gens = Vec::new();
        for (line, e) in &ideal {
            gens.push(parse_expr(e, &ctx).map_err(|err| at_line(*line, err))?);
        }
        if gens.iter().all(|g| g.is_zero()) {
            return Err(input(ideal[0].0, "the ideal is zero"));
        }
        let mut pts = Vec::new();
        for (line, p) in &points {
            let (label, coords) = p
                .split_once('=')
                .ok_or_else(|| input(*line, "expected `label = point`"))?;
            let label = label.trim();
            if label.is_empty() {
                return Err(input(*line, "empty point label"));
            }
            if pts.iter().any(|q: &LabeledPoint| q.label == label) {
                return Err(input(*line, format!("duplicate point label `{label}`")));
            }
            let coords = parse_point(coords, &ctx).map_err(|e| at_line(*line, e))?;
            pts.push(LabeledPoint {
                label: label.to_string(),
                coords,
            });
        }
        let (nc_mode, config) = parse_options(&options)?;
        Ok(Problem {
            ctx,
            ideal: gens,
            points: pts,
            nc_mode,
            config,
        })
    }

    /// Appends a point given as `name=value,...` or a tuple.
    pub fn add_point(&mut self, label: &str, text: &str) -> Result<()> {
        let coords = parse_point(text, &self.ctx)?;
        self.points.push(LabeledPoint {
            label: label.to_string(),
            coords,
        });
        Ok(())
    }

    pub fn ideal_strings(&self) -> Vec<String> {
        self.ideal
            .iter()
            .map(|g| g.display(&self.ctx).to_string())
            .collect()
    }
}

fn parse_vars(vars: &[(usize, String)], divisor: &[(usize, String)]) -> Result<VarContext> {
    let mut entries: Vec<(String, VarKind)> = Vec::new();
    for (line, text) in vars {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, kind) = match item.split_once(':') {
                Some((n, k)) => (
                    n.trim(),
                    VarKind::parse(k).ok_or_else(|| input(*line, format!("unknown kind `{}`", k.trim())))?,
                ),
                None => (item, VarKind::Free),
            };
            if !is_identifier(name) {
                return Err(input(*line, format!("bad variable name `{name}`")));
            }
            if entries.iter().any(|(n, _)| n == name) {
                return Err(input(*line, format!("duplicate variable `{name}`")));
            }
            entries.push((name.to_string(), kind));
        }
    }
    if entries.is_empty() {
        return Err(input(1, "missing `vars:` section"));
    }
    for (line, text) in divisor {
        for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match entries.iter_mut().find(|(n, _)| n == name) {
                Some((_, VarKind::Parameter)) => {
                    return Err(input(*line, format!("parameter `{name}` cannot be divisorial")))
                }
                Some((_, k)) => *k = VarKind::Divisorial,
                None => return Err(input(*line, format!("unknown variable `{name}`"))),
            }
        }
    }
    VarContext::new(entries)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn rational(text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| input(0, format!("bad rational `{}`", text.trim())))
}

/// `(a, b, c)` in variable order, or `x=a, z=c`.
pub fn parse_point(text: &str, ctx: &VarContext) -> Result<Vec<Rational>> {
    let text = text.trim();
    let n = ctx.len();
    if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let coords: Vec<Rational> = inner.split(',').map(rational).collect::<Result<_>>()?;
        if coords.len() != n {
            return Err(input(
                0,
                format!("point has {} coordinates, expected {n}", coords.len()),
            ));
        }
        return Ok(coords);
    }
    let mut coords = vec![Rational::from_integer(0.into()); n];
    let mut seen = vec![false; n];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| input(0, format!("expected `name=value`, got `{item}`")))?;
        let v = ctx.require(name.trim())?;
        if seen[v] {
            return Err(input(0, format!("coordinate `{}` given twice", name.trim())));
        }
        seen[v] = true;
        coords[v] = rational(value)?;
    }
    Ok(coords)
}

fn parse_options(options: &[(usize, String)]) -> Result<(NcMode, Config)> {
    let mut mode = NcMode::default();
    let mut cfg = Config::default();
    for (line, text) in options {
        let (key, value) = text
            .split_once('=')
            .ok_or_else(|| input(*line, "expected `key = value`"))?;
        let value = value.trim();
        let number = || {
            value
                .parse::<u32>()
                .map_err(|_| input(*line, format!("expected a non-negative integer, got `{value}`")))
        };
        match key.trim() {
            "truncation" => {
                cfg.truncation = number()?;
                if cfg.truncation < 2 {
                    return Err(input(*line, "truncation must be at least 2"));
                }
            }
            "max-steps" => cfg.max_steps = number()? as usize,
            "degree-bound" => cfg.degree_bound = number()? as usize,
            "nc-mode" => {
                mode = NcMode::parse(value)
                    .ok_or_else(|| input(*line, format!("unknown nc-mode `{value}`")))?
            }
            "transform" => {
                cfg.transform = match value {
                    "controlled" => TransformKind::Controlled,
                    "strict" => TransformKind::Strict,
                    _ => return Err(input(*line, format!("unknown transform `{value}`"))),
                }
            }
            other => return Err(input(*line, format!("unknown option `{other}`"))),
        }
    }
    Ok((mode, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn full_file() {
        let p = Problem::parse(
            "# pinch\nvars:\n  x: free\n  y, z\n  u: div\nideal:\n  x^2 - y^2*z\ndivisor:\npoints:\n  w = (0, 0, 1, 0)\n  v = y=1/2\noptions:\n  truncation = 6\n  nc-mode = reduced\n  transform = strict\n",
        )
        .unwrap();
        assert_eq!(p.ctx.names(), &["x", "y", "z", "u"]);
        assert!(p.ctx.is_divisorial(3));
        assert_eq!(p.ideal_strings(), vec!["-y^2*z + x^2"]);
        assert_eq!(p.points[0].coords, vec![int(0), int(0), int(1), int(0)]);
        assert_eq!(p.points[1].coords[1], Rational::new(1.into(), 2.into()));
        assert_eq!(p.nc_mode, NcMode::Reduced);
        assert_eq!(p.config.truncation, 6);
        assert_eq!(p.config.transform, TransformKind::Strict);
        assert_eq!(p.config.max_steps, 12);
    }

    #[test]
    fn inline_sections() {
        let p = Problem::parse("vars: u1, u2, u3\nideal: u1\n  u2*u3\ndivisor: u1\n").unwrap();
        assert_eq!(p.ideal.len(), 2);
        assert!(p.ctx.is_divisorial(0));
    }

    #[test]
    fn errors_cite_lines() {
        let cases = [
            ("vars: x\nideal:\n  x +* 1\n", 3),
            ("vars: x\nideal: x\npoints:\n  p = (1, 2)\n", 4),
            ("vars: x\nideal: x\noptions:\n  speed = 3\n", 4),
            ("x\nvars: x\n", 1),
            ("vars: x, x\nideal: x\n", 1),
            ("vars: x\nideal: y\n", 2),
            ("vars: x\ndivisor: y\nideal: x\n", 2),
        ];
        for (text, line) in cases {
            match Problem::parse(text) {
                Err(Error::Input { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn zero_ideal_rejected() {
        assert!(Problem::parse("vars: x\nideal: 0\n").is_err());
    }
}
