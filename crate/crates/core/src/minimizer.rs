use alloc::vec::Vec;

use crate::candidates::{candidates_for, CandidateSet};
use crate::coverage::{acceptance, probability_of};
use crate::criterion::{ErrorCriterion, EstimatorKind};
use crate::error::Result;
use crate::family::{check_theta, DistributionFamily};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub theta: Rational,
    pub coverage: f64,
}

/// Minimum coverage over `[a, b]` for one `n`, with every evaluation made.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub n: u64,
    pub min_coverage: f64,
    /// Smallest θ attaining the minimum.
    pub argmin_theta: Rational,
    /// One entry per candidate point, in increasing θ.
    pub evaluations: Vec<Evaluation>,
    pub candidate_set: CandidateSet,
}

/// Exact minimum of the coverage probability over `[a, b]`, found by
/// evaluating it on the candidate set of `(criterion, estimator)`.
pub fn min_coverage(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    a: Rational,
    b: Rational,
) -> Result<CoverageReport> {
    let set = prepare(family, n, criterion, estimator, a, b)?;
    let values = evaluate_all(family, n, criterion, estimator, &set)?;
    let (i, min) = argmin(&values);
    let evaluations = set
        .thetas()
        .zip(values)
        .map(|(theta, coverage)| Evaluation { theta, coverage })
        .collect();
    Ok(CoverageReport {
        n,
        min_coverage: min,
        argmin_theta: set.points()[i].theta,
        evaluations,
        candidate_set: set,
    })
}

/// `(min_coverage, argmin_theta)` without keeping the evaluations.
pub fn min_coverage_value(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    a: Rational,
    b: Rational,
) -> Result<(f64, Rational)> {
    let set = prepare(family, n, criterion, estimator, a, b)?;
    let values = evaluate_all(family, n, criterion, estimator, &set)?;
    let (i, min) = argmin(&values);
    Ok((min, set.points()[i].theta))
}

fn prepare(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    a: Rational,
    b: Rational,
) -> Result<CandidateSet> {
    criterion.validate()?;
    let set = candidates_for(n, criterion, estimator, a, b)?;
    // the parameter space is an interval, so checking the ends covers [a, b]
    check_theta(family, a)?;
    check_theta(family, b)?;
    Ok(set)
}

/// Coverage at each point, in set order. Runs in parallel when enabled; the
/// output order never depends on scheduling.
fn evaluate_all(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    set: &CandidateSet,
) -> Result<Vec<f64>> {
    let eval = |theta: Rational| -> Result<f64> {
        let acc = acceptance(n, criterion, estimator, theta)?;
        Ok(probability_of(family, n, acc, theta.to_f64()))
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        const PARALLEL_THRESHOLD: usize = 256;
        if set.len() >= PARALLEL_THRESHOLD {
            return set.points().par_iter().map(|p| eval(p.theta)).collect();
        }
    }
    set.points().iter().map(|p| eval(p.theta)).collect()
}

/// First index attaining the minimum.
fn argmin(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < best.1 {
            best = (i, v);
        }
    }
    best
}
