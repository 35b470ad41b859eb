//! Serializable pieces shared by the mode traces. Key order follows field
//! order and rationals are written as strings, so equal inputs give
//! byte-identical JSON.

use serde::Serialize;

use super::problem::{Config, Problem};
use crate::blowup::{Chart, LabeledPoint};
use crate::invariant::InvariantVector;
use crate::ncdetect::NcMode;
use crate::poly::{Poly, Rational, VarContext};

/// `(2,3,3)`. The terminal marker is left out; comparisons use the
/// vectors themselves.
pub fn fmt_inv(inv: &InvariantVector) -> String {
    inv.to_string()
}

pub fn point_strings(p: &[Rational]) -> Vec<String> {
    p.iter().map(|q| q.to_string()).collect()
}

pub fn poly_strings(gens: &[Poly], ctx: &VarContext) -> Vec<String> {
    gens.iter().map(|g| g.display(ctx).to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VarEcho {
    pub name: String,
    pub kind: String,
}

pub fn var_echo(ctx: &VarContext) -> Vec<VarEcho> {
    (0..ctx.len())
        .map(|i| VarEcho {
            name: ctx.name(i).to_string(),
            kind: ctx.kind(i).as_str().to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProblemEcho {
    pub vars: Vec<VarEcho>,
    pub ideal: Vec<String>,
    pub points: Vec<LabeledPoint>,
    pub nc_mode: NcMode,
    pub config: Config,
}

impl ProblemEcho {
    pub fn new(p: &Problem) -> Self {
        ProblemEcho {
            vars: var_echo(&p.ctx),
            ideal: p.ideal_strings(),
            points: p.points.clone(),
            nc_mode: p.nc_mode,
            config: p.config.clone(),
        }
    }
}

/// A chart as it appears in a trace, with whatever was evaluated on it.
#[derive(Clone, Debug, Serialize)]
pub struct ChartSummary<C> {
    pub id: usize,
    pub vars: Vec<VarEcho>,
    pub ideal: Vec<String>,
    pub group_order: u64,
    pub removed_vertices: Vec<Vec<String>>,
    pub candidates: Vec<C>,
}

impl<C> ChartSummary<C> {
    pub fn new(chart: &Chart, candidates: Vec<C>) -> Self {
        ChartSummary {
            id: chart.id,
            vars: var_echo(&chart.ctx),
            ideal: poly_strings(&chart.ideal, &chart.ctx),
            group_order: chart.group_order,
            removed_vertices: chart
                .excluded
                .iter()
                .map(|l| poly_strings(l, &chart.ctx))
                .collect(),
            candidates,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{InvEntry, Terminal};
    use crate::poly::{int, rat};

    #[test]
    fn invariant_strings() {
        let e = |q: Rational, p| InvEntry::new(q, p);
        let v = InvariantVector::finite(vec![e(int(2), false), e(rat(5, 2), true)]);
        assert_eq!(fmt_inv(&v), "(2,5/2+)");
        let w = InvariantVector::new(vec![e(int(1), false)], Terminal::Infinity);
        assert_eq!(fmt_inv(&w), "(1)");
        assert_eq!(fmt_inv(&InvariantVector::unit()), "()");
    }
}
