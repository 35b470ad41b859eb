//! Problem files, the resolution loop away from the NC locus, and the
//! per-mode reports with their JSON traces.

mod modes;
mod problem;
mod resolve;
mod trace;

pub use modes::{render_resolution, run_mode, Mode, Report, Status};
pub use problem::{parse_point, Config, Problem};
pub use resolve::{
    evaluate_chart, evaluate_point, run_resolve_except_nc, CandidateKind, CandidateRecord, Outcome,
    ResolutionTrace, StepRecord, SAMPLED_MAX_CAVEAT, STRATA_LIMIT,
};
pub use trace::{fmt_inv, ChartSummary, ProblemEcho};
