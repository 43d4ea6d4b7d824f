use exactss_core::{builtin, DistributionFamily, Error, ErrorCriterion, EstimatorKind, Rational};

use crate::cli::Query;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Discrepancy(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(Error::Domain { .. } | Error::Hypothesis(_)) => 3,
            CliError::Core(_) => 2,
            CliError::Discrepancy(_) => 4,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

/// A query with every input checked and converted.
#[derive(Clone, Copy)]
pub struct Resolved {
    pub family: &'static dyn DistributionFamily,
    pub criterion: ErrorCriterion,
    pub estimator: EstimatorKind,
    pub a: Rational,
    pub b: Rational,
}

impl Resolved {
    pub fn from_query(q: &Query) -> Result<Self, CliError> {
        let family = builtin(&q.family)?;
        let criterion = match (q.abs_eps, q.rel_eps) {
            (Some(e), None) => ErrorCriterion::absolute(e)?,
            (None, Some(e)) => ErrorCriterion::relative(e)?,
            (Some(ea), Some(er)) => ErrorCriterion::mixed(ea, er)?,
            (None, None) => {
                return Err(CliError::Config(
                    "give a margin with --abs-eps, --rel-eps or both".into(),
                ))
            }
        };
        if q.a >= q.b {
            return Err(Error::InvalidInterval { a: q.a, b: q.b }.into());
        }
        let estimator = if q.range_preserving {
            EstimatorKind::range_preserving(q.a, q.b)?
        } else {
            EstimatorKind::Unbiased
        };
        Ok(Resolved {
            family,
            criterion,
            estimator,
            a: q.a,
            b: q.b,
        })
    }
}

/// Reads the worker count from `EXACTSS_THREADS`, if set.
pub fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var("EXACTSS_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!(
                "EXACTSS_THREADS must be a positive integer, got {s:?}"
            ))),
        },
        Err(e) => Err(CliError::Config(format!("EXACTSS_THREADS: {e}"))),
    }
}
