use alloc::format;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Margin of error with exact rational parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCriterion {
    /// `|θ̂ − θ| < eps`
    Absolute { eps: Rational },
    /// `|θ̂ − θ| < eps·θ`
    Relative { eps: Rational },
    /// Absolute margin `eps_a` for `θ <= eps_a/eps_r`, relative margin `eps_r` above.
    Mixed { eps_a: Rational, eps_r: Rational },
}

impl ErrorCriterion {
    pub fn absolute(eps: Rational) -> Result<Self> {
        check_abs(eps)?;
        Ok(Self::Absolute { eps })
    }

    pub fn relative(eps: Rational) -> Result<Self> {
        check_rel(eps)?;
        Ok(Self::Relative { eps })
    }

    pub fn mixed(eps_a: Rational, eps_r: Rational) -> Result<Self> {
        check_abs(eps_a)?;
        check_rel(eps_r)?;
        // the crossover must be representable
        eps_a
            .checked_div(&eps_r)
            .ok_or_else(|| Error::InvalidCriterion("margins too large to combine".into()))?;
        Ok(Self::Mixed { eps_a, eps_r })
    }

    /// Re-checks the invariants of a value built directly from the variants.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Absolute { eps } => check_abs(eps),
            Self::Relative { eps } => check_rel(eps),
            Self::Mixed { eps_a, eps_r } => Self::mixed(eps_a, eps_r).map(|_| ()),
        }
    }

    /// `eps_a / eps_r` for the mixed criterion.
    pub fn crossover(&self) -> Option<Rational> {
        match *self {
            Self::Mixed { eps_a, eps_r } => Some(eps_a / eps_r),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Absolute { .. } => "absolute",
            Self::Relative { .. } => "relative",
            Self::Mixed { .. } => "mixed",
        }
    }
}

fn check_abs(eps: Rational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidCriterion(format!(
            "absolute margin must be positive, got {eps}"
        )))
    }
}

fn check_rel(eps: Rational) -> Result<()> {
    if eps.is_positive() && eps < Rational::ONE {
        Ok(())
    } else {
        Err(Error::InvalidCriterion(format!(
            "relative margin must lie in (0, 1), got {eps}"
        )))
    }
}

/// Which estimator of θ is judged against the margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    /// The sample mean `Y_n / n`.
    Unbiased,
    /// The sample mean clamped to `[a, b]`.
    RangePreserving { a: Rational, b: Rational },
}

impl EstimatorKind {
    pub fn range_preserving(a: Rational, b: Rational) -> Result<Self> {
        if a < b {
            Ok(Self::RangePreserving { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Unbiased => "unbiased",
            Self::RangePreserving { .. } => "range-preserving",
        }
    }
}
