use alloc::format;
use alloc::vec::Vec;

use crate::criterion::{ErrorCriterion, EstimatorKind};
use crate::error::{Error, Result};
use crate::family::DistributionFamily;
use crate::minimizer::min_coverage_value;
use crate::rational::Rational;

pub const DEFAULT_N_START: u64 = 2;
pub const DEFAULT_N_MAX: u64 = 1_000_000;
/// Extra margin over `1 − δ` required when the guard band is on.
pub const GUARD_BAND: f64 = 1e-12;

/// Smallest `n` whose minimum coverage over `[a, b]` exceeds `1 − δ`.
#[derive(Clone, Copy)]
pub struct SampleSizeQuery<'a> {
    pub family: &'a dyn DistributionFamily,
    pub criterion: ErrorCriterion,
    pub estimator: EstimatorKind,
    pub a: Rational,
    pub b: Rational,
    pub delta: Rational,
    pub n_start: u64,
    pub n_max: u64,
    pub guard_band: bool,
}

impl<'a> SampleSizeQuery<'a> {
    pub fn new(
        family: &'a dyn DistributionFamily,
        criterion: ErrorCriterion,
        estimator: EstimatorKind,
        a: Rational,
        b: Rational,
        delta: Rational,
    ) -> Self {
        SampleSizeQuery {
            family,
            criterion,
            estimator,
            a,
            b,
            delta,
            n_start: DEFAULT_N_START,
            n_max: DEFAULT_N_MAX,
            guard_band: false,
        }
    }

    pub fn with_n_start(mut self, n_start: u64) -> Self {
        self.n_start = n_start;
        self
    }

    pub fn with_n_max(mut self, n_max: u64) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_guard_band(mut self, on: bool) -> Self {
        self.guard_band = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta.is_positive() && self.delta < Rational::ONE) {
            return Err(Error::InvalidQuery(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        if self.n_start == 0 {
            return Err(Error::ZeroSampleSize);
        }
        if self.n_start > self.n_max {
            return Err(Error::InvalidQuery(format!(
                "n_start = {} exceeds n_max = {}",
                self.n_start, self.n_max
            )));
        }
        self.criterion.validate()
    }

    /// The float that minimum coverage must strictly exceed.
    pub fn threshold(&self) -> f64 {
        let base = (Rational::ONE - self.delta).to_f64();
        if self.guard_band {
            base + GUARD_BAND
        } else {
            base
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub n: u64,
    pub min_coverage: f64,
    pub argmin_theta: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSizeResult {
    /// `None` when no `n <= n_max` qualifies.
    pub n_min: Option<u64>,
    pub coverage_at_n_min: Option<f64>,
    pub argmin_theta: Option<Rational>,
    /// Every `n` examined, in order, with no gaps.
    pub trace: Vec<TraceEntry>,
}

impl SampleSizeResult {
    pub fn found(&self) -> Option<&TraceEntry> {
        self.n_min.and_then(|_| self.trace.last())
    }
}

pub fn min_sample_size(query: &SampleSizeQuery<'_>) -> Result<SampleSizeResult> {
    min_sample_size_with_progress(query, |_| {})
}

/// Linear scan from `n_start`; `progress` sees each trace entry as it is made.
///
/// Minimum coverage is not monotone in `n`, so every `n` below the answer is
/// evaluated and certified failing.
pub fn min_sample_size_with_progress(
    query: &SampleSizeQuery<'_>,
    mut progress: impl FnMut(&TraceEntry),
) -> Result<SampleSizeResult> {
    query.validate()?;
    let threshold = query.threshold();
    let mut trace = Vec::new();
    for n in query.n_start..=query.n_max {
        let (min, theta) = min_coverage_value(
            query.family,
            n,
            &query.criterion,
            &query.estimator,
            query.a,
            query.b,
        )?;
        let entry = TraceEntry {
            n,
            min_coverage: min,
            argmin_theta: theta,
        };
        progress(&entry);
        trace.push(entry);
        if min > threshold {
            return Ok(SampleSizeResult {
                n_min: Some(n),
                coverage_at_n_min: Some(min),
                argmin_theta: Some(theta),
                trace,
            });
        }
    }
    Ok(SampleSizeResult {
        n_min: None,
        coverage_at_n_min: None,
        argmin_theta: None,
        trace,
    })
}
