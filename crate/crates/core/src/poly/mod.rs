//! Exact rational arithmetic, sparse multivariate polynomials and the
//! operations every other module computes on.

mod context;
mod gcd;
mod ops;
mod parse;
mod polynomial;
mod rational;
mod resultant;
mod series;
pub mod univariate;

pub use context::{VarContext, VarKind};
pub use gcd::{gcd, rational_sqrt, sqrt_exact, squarefree_part};
pub use ops::{
    derivative_ideal, initial_form, is_var_times_unit, substitute_adapted, weighted_order,
    WeightedOrder,
};
pub use parse::parse_expr;
pub use polynomial::{Monomial, Poly};
pub use rational::{int, is_integer, lcm_int, parse_rational, rat, Rational};
pub use resultant::{det_bareiss, discriminant, resultant};
pub use series::TruncatedSeries;
