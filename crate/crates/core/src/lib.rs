//! Exact minimum sample sizes for estimating the mean of an integer-valued
//! random variable to within an absolute, relative or mixed margin.
//!
//! Coverage probability is minimized over a parameter interval by evaluating
//! it on a finite candidate set instead of a grid. All interval and lattice
//! arithmetic is done on exact rationals; only probabilities are floats.
//!
//! ```
//! use exactss_core::{
//!     family::Bernoulli, min_sample_size, ErrorCriterion, EstimatorKind, Rational,
//!     SampleSizeQuery,
//! };
//!
//! let q = SampleSizeQuery::new(
//!     &Bernoulli,
//!     ErrorCriterion::absolute("0.2".parse().unwrap()).unwrap(),
//!     EstimatorKind::Unbiased,
//!     Rational::ZERO,
//!     Rational::ONE,
//!     "0.05".parse().unwrap(),
//! );
//! let res = min_sample_size(&q).unwrap();
//! assert!(res.coverage_at_n_min.unwrap() > 0.95);
//! ```
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod candidates;
pub mod coverage;
pub mod criterion;
pub mod error;
pub mod family;
pub mod minimizer;
pub mod oracle;
pub mod rational;
pub mod search;

pub use candidates::{candidates_for, CandidatePoint, CandidateSet, Provenance, SetKind, Tags};
pub use coverage::{acceptance, bounds_abs, bounds_rel, coverage, Acceptance};
pub use criterion::{ErrorCriterion, EstimatorKind};
pub use error::{Error, ParseRationalError, Result};
pub use family::{builtin, DistributionFamily, FamilyRegistry};
pub use minimizer::{min_coverage, min_coverage_value, CoverageReport, Evaluation};
pub use oracle::{grid_min_coverage, indicator_coverage, GridSpec};
pub use rational::Rational;
pub use search::{min_sample_size, min_sample_size_with_progress, SampleSizeQuery, SampleSizeResult, TraceEntry};
