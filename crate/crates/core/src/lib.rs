//! Exact-arithmetic machinery for normal-crossings-preserving resolution of
//! polynomial ideals by weighted blow-ups.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: rationals, variable contexts, sparse polynomials, truncated
//!   series, weighted orders, initial forms and derivative ideals.
//! * [`invariant`]: admissibility of weighted centers, maximal contact,
//!   coefficient ideals and the canonical (logarithmic) invariant.
//! * [`blowup`]: the single affine chart of the cobordant blow-up and the
//!   total, controlled and strict transforms.
//! * [`ncdetect`]: pre-SNC series, residual orders, minimal sets, the direct
//!   SNC factorization loop and normal-crossings verdicts.
//! * [`splitting`]: splitting forms: monicization, specialization
//!   polynomials, factorization over Q, splitting-field degrees,
//!   ramification loci and the cyclic forms `cp(n)`.
//! * [`driver`]: problem files, the resolution loop and JSON traces.

pub mod blowup;
pub mod driver;
pub mod error;
pub mod invariant;
pub mod ncdetect;
pub mod poly;
pub mod splitting;

pub use blowup::{Chart, TransformKind};
pub use error::{Error, Result};
pub use invariant::{InvEntry, InvariantVector, ReesAlgebra, WeightedCenter};
pub use ncdetect::{FactorizationResult, NcVerdict, PreSnc};
pub use poly::{parse_expr, Monomial, Poly, Rational, TruncatedSeries, VarContext, VarKind};
pub use splitting::SplittingForm;
