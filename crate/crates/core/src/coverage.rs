//! Coverage probability `C(θ) = Pr{|estimate − θ| < margin | θ}` through the
//! integer boundary functions `g`, `h`.

use alloc::format;

use crate::criterion::{ErrorCriterion, EstimatorKind};
use crate::error::{Error, Result};
use crate::family::{check_theta, prob_between_f64, DistributionFamily};
use crate::rational::Rational;

/// `(⌊n(θ−ε)⌋ + 1, ⌈n(θ+ε)⌉ − 1)`: the outcomes `k` with `|k/n − θ| < ε`.
pub fn bounds_abs(n: u64, eps: Rational, theta: Rational) -> (i64, i64) {
    let n = Rational::from(n);
    let g = (n * (theta - eps)).floor() + 1;
    let h = (n * (theta + eps)).ceil() - 1;
    (to_i64(g), to_i64(h))
}

/// `(⌊nθ(1−ε)⌋ + 1, ⌈nθ(1+ε)⌉ − 1)`: the outcomes `k` with `|k/n − θ| < εθ`.
pub fn bounds_rel(n: u64, eps: Rational, theta: Rational) -> (i64, i64) {
    let nt = Rational::from(n) * theta;
    let g = (nt * (Rational::ONE - eps)).floor() + 1;
    let h = (nt * (Rational::ONE + eps)).ceil() - 1;
    (to_i64(g), to_i64(h))
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("boundary index exceeds i64")
}

/// Outcomes of `Y_n` for which the estimate is within the margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Acceptance {
    /// Every outcome is accepted.
    Certain,
    /// `lo <= Y_n <= hi`; a missing side is unbounded.
    Range { lo: Option<i64>, hi: Option<i64> },
}

impl Acceptance {
    fn two_sided((g, h): (i64, i64)) -> Self {
        Acceptance::Range {
            lo: Some(g),
            hi: Some(h),
        }
    }

    fn at_most(h: i64) -> Self {
        Acceptance::Range { lo: None, hi: Some(h) }
    }

    fn at_least(g: i64) -> Self {
        Acceptance::Range { lo: Some(g), hi: None }
    }
}

/// The acceptance region at `theta`, without checking the family's domain.
///
/// For the range-preserving estimator `theta` must lie in `[a, b]`.
pub fn acceptance(
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    theta: Rational,
) -> Result<Acceptance> {
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    criterion.validate()?;
    match *estimator {
        EstimatorKind::Unbiased => Ok(match *criterion {
            ErrorCriterion::Absolute { eps } => Acceptance::two_sided(bounds_abs(n, eps, theta)),
            ErrorCriterion::Relative { eps } => Acceptance::two_sided(bounds_rel(n, eps, theta)),
            ErrorCriterion::Mixed { eps_a, eps_r } => {
                if theta <= eps_a / eps_r {
                    Acceptance::two_sided(bounds_abs(n, eps_a, theta))
                } else {
                    Acceptance::two_sided(bounds_rel(n, eps_r, theta))
                }
            }
        }),
        EstimatorKind::RangePreserving { a, b } => {
            if a >= b {
                return Err(Error::InvalidInterval { a, b });
            }
            if theta < a || theta > b {
                return Err(Error::Domain {
                    theta,
                    allowed: format!("the estimator range [{a}, {b}]"),
                });
            }
            Ok(match *criterion {
                ErrorCriterion::Absolute { eps } => clamped_abs(n, eps, a, b, theta),
                ErrorCriterion::Relative { eps } => clamped_rel(n, eps, a, b, theta),
                ErrorCriterion::Mixed { eps_a, eps_r } => {
                    if theta <= eps_a / eps_r {
                        clamped_abs(n, eps_a, a, b, theta)
                    } else {
                        clamped_rel(n, eps_r, a, b, theta)
                    }
                }
            })
        }
    }
}

// Clamping to [a, b] accepts every outcome on the side whose margin reaches
// past the boundary, so each side of the two-sided range drops out
// independently once θ is within ε of the corresponding endpoint.
fn clamped_abs(n: u64, eps: Rational, a: Rational, b: Rational, theta: Rational) -> Acceptance {
    clamped(a + eps, b - eps, theta, bounds_abs(n, eps, theta))
}

fn clamped_rel(n: u64, eps: Rational, a: Rational, b: Rational, theta: Rational) -> Acceptance {
    let lower = a / (Rational::ONE - eps);
    let upper = b / (Rational::ONE + eps);
    clamped(lower, upper, theta, bounds_rel(n, eps, theta))
}

/// `lower`: below it the lower side is free; `upper`: above it the upper side is free.
fn clamped(lower: Rational, upper: Rational, theta: Rational, (g, h): (i64, i64)) -> Acceptance {
    if lower <= upper {
        if theta < lower {
            Acceptance::at_most(h)
        } else if theta > upper {
            Acceptance::at_least(g)
        } else {
            Acceptance::two_sided((g, h))
        }
    } else if theta <= upper {
        Acceptance::at_most(h)
    } else if theta >= lower {
        Acceptance::at_least(g)
    } else {
        Acceptance::Certain
    }
}

/// Coverage probability of the estimator at `theta`.
pub fn coverage(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    theta: Rational,
) -> Result<f64> {
    let acc = acceptance(n, criterion, estimator, theta)?;
    let t = check_theta(family, theta)?;
    Ok(probability_of(family, n, acc, t))
}

pub(crate) fn probability_of(
    family: &dyn DistributionFamily,
    n: u64,
    acc: Acceptance,
    theta: f64,
) -> f64 {
    match acc {
        Acceptance::Certain => 1.0,
        Acceptance::Range { lo, hi } => prob_between_f64(family, n, lo, hi, theta),
    }
}
