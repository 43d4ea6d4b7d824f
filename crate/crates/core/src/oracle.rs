//! Brute-force reference: coverage by summing the pmf over outcomes whose
//! estimate falls inside the margin, and interval minima by grid scan.
//!
//! Nothing here uses `g`, `h` or the range-preserving case analysis; each
//! outcome `k` is judged on its own, with exact rational comparisons.

use alloc::format;
use alloc::vec::Vec;

use crate::candidates::candidates_for;
use crate::criterion::{ErrorCriterion, EstimatorKind};
use crate::error::{Error, Result};
use crate::family::{check_theta, DistributionFamily};
use crate::rational::Rational;

/// Upper limit on grid size, to fail fast on absurd steps.
pub const MAX_GRID_POINTS: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub step: Rational,
    /// Also scan the candidate points of `(criterion, estimator)`.
    pub include_candidates: bool,
}

impl GridSpec {
    pub fn new(step: Rational, include_candidates: bool) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::InvalidQuery(format!("grid step must be positive, got {step}")));
        }
        Ok(GridSpec {
            step,
            include_candidates,
        })
    }

    /// `(b − a) / divisions`
    pub fn divisions(a: Rational, b: Rational, divisions: u64, include_candidates: bool) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidInterval { a, b });
        }
        if divisions == 0 {
            return Err(Error::InvalidQuery("grid needs at least one division".into()));
        }
        Self::new((b - a) / Rational::from(divisions), include_candidates)
    }

    /// `{a + j·step} ∩ [a, b]`
    pub fn points(&self, a: Rational, b: Rational) -> Result<Vec<Rational>> {
        if a >= b {
            return Err(Error::InvalidInterval { a, b });
        }
        if self.step > b - a {
            return Err(Error::InvalidQuery(format!(
                "grid step {} is wider than the interval [{a}, {b}]",
                self.step
            )));
        }
        let count = ((b - a) / self.step).floor();
        if count >= i128::from(MAX_GRID_POINTS) {
            return Err(Error::InvalidQuery(format!(
                "grid step {} gives more than {MAX_GRID_POINTS} points",
                self.step
            )));
        }
        Ok((0..=count)
            .map(|j| a + Rational::from_integer(j) * self.step)
            .collect())
    }
}

/// `k/n` against a fixed fraction `p/q`, pre-scaled to `k·q` vs `n·p`.
#[derive(Clone, Copy)]
struct Threshold {
    q: i128,
    np: i128,
}

impl Threshold {
    fn new(n: i128, (p, q): (i128, i128)) -> Self {
        Threshold {
            q,
            np: n.checked_mul(p).expect("oracle threshold overflow"),
        }
    }

    /// Sign of `k/n − p/q`.
    fn cmp(self, k: i64) -> core::cmp::Ordering {
        (i128::from(k) * self.q).cmp(&self.np)
    }
}

/// Acceptance test for a single outcome, fixed for one `(n, θ)`.
struct Judge {
    lo: Threshold,
    hi: Threshold,
    clamp: Option<(Threshold, Threshold, bool, bool)>,
}

/// `(θ − margin, θ + margin)` as unreduced fractions, falling back to reduced
/// arithmetic if the fast path would overflow.
fn window(criterion: &ErrorCriterion, theta: Rational) -> ((i128, i128), (i128, i128)) {
    let (p, q) = (theta.numer(), theta.denom());
    let fast = || -> Option<((i128, i128), (i128, i128))> {
        // margin as e/f
        let (e, f) = match *criterion {
            ErrorCriterion::Absolute { eps } => (eps.numer(), eps.denom()),
            ErrorCriterion::Relative { eps } => {
                (eps.numer().checked_mul(p)?, eps.denom().checked_mul(q)?)
            }
            ErrorCriterion::Mixed { eps_a, eps_r } => {
                let (ea, fa) = (eps_a.numer(), eps_a.denom());
                let (er, fr) = (eps_r.numer().checked_mul(p)?, eps_r.denom().checked_mul(q)?);
                // either margin suffices, so the wider one counts
                if ea.checked_mul(fr)? >= er.checked_mul(fa)? {
                    (ea, fa)
                } else {
                    (er, fr)
                }
            }
        };
        let den = q.checked_mul(f)?;
        let pf = p.checked_mul(f)?;
        let eq = e.checked_mul(q)?;
        Some(((pf.checked_sub(eq)?, den), (pf.checked_add(eq)?, den)))
    };
    fast().unwrap_or_else(|| {
        let margin = match *criterion {
            ErrorCriterion::Absolute { eps } => eps,
            ErrorCriterion::Relative { eps } => eps * theta,
            ErrorCriterion::Mixed { eps_a, eps_r } => eps_a.max(eps_r * theta),
        };
        let (lo, hi) = (theta - margin, theta + margin);
        ((lo.numer(), lo.denom()), (hi.numer(), hi.denom()))
    })
}

/// `p/q < r/s` for positive denominators.
fn frac_lt((p, q): (i128, i128), (r, s): (i128, i128)) -> bool {
    match (p.checked_mul(s), r.checked_mul(q)) {
        (Some(x), Some(y)) => x < y,
        _ => Rational::new(p, q) < Rational::new(r, s),
    }
}

impl Judge {
    fn new(n: u64, criterion: &ErrorCriterion, estimator: &EstimatorKind, theta: Rational) -> Self {
        let n = i128::from(n);
        let (lo, hi) = window(criterion, theta);
        let inside = |x: Rational| {
            let x = (x.numer(), x.denom());
            frac_lt(lo, x) && frac_lt(x, hi)
        };
        let clamp = match *estimator {
            EstimatorKind::Unbiased => None,
            EstimatorKind::RangePreserving { a, b } => Some((
                Threshold::new(n, (a.numer(), a.denom())),
                Threshold::new(n, (b.numer(), b.denom())),
                inside(a),
                inside(b),
            )),
        };
        Judge {
            lo: Threshold::new(n, lo),
            hi: Threshold::new(n, hi),
            clamp,
        }
    }

    fn accepts(&self, k: i64) -> bool {
        use core::cmp::Ordering::*;
        if let Some((a, b, a_ok, b_ok)) = self.clamp {
            if a.cmp(k) == Less {
                return a_ok;
            }
            if b.cmp(k) == Greater {
                return b_ok;
            }
        }
        self.lo.cmp(k) == Greater && self.hi.cmp(k) == Less
    }
}

fn validate(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    theta: Rational,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    criterion.validate()?;
    if let EstimatorKind::RangePreserving { a, b } = *estimator {
        if a >= b {
            return Err(Error::InvalidInterval { a, b });
        }
        if theta < a || theta > b {
            return Err(Error::Domain {
                theta,
                allowed: format!("the estimator range [{a}, {b}]"),
            });
        }
    }
    check_theta(family, theta)
}

/// `Σ_k Pr{Y_n = k | θ} · 1{estimate k/n, clamped if applicable, is within the margin}`.
pub fn indicator_coverage(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    theta: Rational,
) -> Result<f64> {
    let t = validate(family, n, criterion, estimator, theta)?;
    Ok(indicator_unchecked(family, n, criterion, estimator, theta, t))
}

fn indicator_unchecked(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    theta: Rational,
    t: f64,
) -> f64 {
    let judge = Judge::new(n, criterion, estimator, theta);
    let (k_min, k_max) = family.support(n);
    let k_max = k_max.unwrap_or_else(|| family.tail_cutoff(n, t));

    // Sum maximal runs of accepted outcomes.
    let mut total = 0.0;
    let mut run_start = None;
    for k in k_min..=k_max + 1 {
        let ok = k <= k_max && judge.accepts(k);
        match (ok, run_start) {
            (true, None) => run_start = Some(k),
            (false, Some(s)) => {
                total += family.range_sum(n, t, s, k - 1);
                run_start = None;
            }
            _ => {}
        }
    }
    total.clamp(0.0, 1.0)
}

/// Minimum of [`indicator_coverage`] over the grid (and candidate points when
/// requested); ties go to the smallest θ.
pub fn grid_min_coverage(
    family: &dyn DistributionFamily,
    n: u64,
    criterion: &ErrorCriterion,
    estimator: &EstimatorKind,
    a: Rational,
    b: Rational,
    grid: GridSpec,
) -> Result<(f64, Rational)> {
    let mut thetas = grid.points(a, b)?;
    if grid.include_candidates {
        let set = candidates_for(n, criterion, estimator, a, b)?;
        thetas.extend(set.thetas());
        thetas.sort_unstable();
        thetas.dedup();
    }
    validate(family, n, criterion, estimator, a)?;
    validate(family, n, criterion, estimator, b)?;

    let eval = |theta: &Rational| {
        indicator_unchecked(family, n, criterion, estimator, *theta, theta.to_f64())
    };
    #[cfg(feature = "parallel")]
    let values: Vec<f64> = {
        use rayon::prelude::*;
        thetas.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<f64> = thetas.iter().map(eval).collect();

    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    Ok((values[best], thetas[best]))
}
