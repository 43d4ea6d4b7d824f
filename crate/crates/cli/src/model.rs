//! Serializable output records. Exact values are `"num/den"` strings; floats
//! appear only as `*_float` approximations or probabilities.

use exactss_core::{CandidatePoint, ErrorCriterion, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::Resolved;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Exact).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Criterion {
    Absolute { eps: Exact },
    Relative { eps: Exact },
    Mixed { eps_a: Exact, eps_r: Exact },
}

impl From<ErrorCriterion> for Criterion {
    fn from(c: ErrorCriterion) -> Self {
        match c {
            ErrorCriterion::Absolute { eps } => Criterion::Absolute { eps: Exact(eps) },
            ErrorCriterion::Relative { eps } => Criterion::Relative { eps: Exact(eps) },
            ErrorCriterion::Mixed { eps_a, eps_r } => Criterion::Mixed {
                eps_a: Exact(eps_a),
                eps_r: Exact(eps_r),
            },
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QueryEcho {
    pub family: String,
    pub criterion: Criterion,
    pub estimator: String,
    pub a: Exact,
    pub b: Exact,
}

impl From<&Resolved> for QueryEcho {
    fn from(r: &Resolved) -> Self {
        QueryEcho {
            family: r.family.name().into(),
            criterion: r.criterion.into(),
            estimator: r.estimator.label().into(),
            a: Exact(r.a),
            b: Exact(r.b),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub n: u64,
    pub min_coverage: f64,
    pub argmin_theta: Exact,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SampleSizeOut {
    pub query: QueryEcho,
    pub delta: Exact,
    pub n_start: u64,
    pub n_max: u64,
    pub guard_band: bool,
    /// `null` when no n up to `n_max` qualifies.
    pub n_min: Option<u64>,
    pub coverage_at_n_min: Option<f64>,
    pub argmin_theta: Option<Exact>,
    pub argmin_theta_float: Option<f64>,
    pub examined: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<TraceRow>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PointOut {
    pub theta: Exact,
    pub theta_float: f64,
    pub provenance: Vec<String>,
}

impl From<&CandidatePoint> for PointOut {
    fn from(p: &CandidatePoint) -> Self {
        PointOut {
            theta: Exact(p.theta),
            theta_float: p.theta.to_f64(),
            provenance: p.tags.iter().map(|t| t.as_str().to_string()).collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CandidatesOut {
    pub query: QueryEcho,
    pub n: u64,
    pub set_kind: String,
    pub cardinality: usize,
    pub cardinality_bound: Exact,
    pub within_bound: bool,
    pub points: Vec<PointOut>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct EvaluationOut {
    pub theta: Exact,
    pub theta_float: f64,
    pub coverage: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MinCoverageOut {
    pub query: QueryEcho,
    pub n: u64,
    pub min_coverage: f64,
    pub argmin_theta: Exact,
    pub argmin_theta_float: f64,
    pub evaluations: Vec<EvaluationOut>,
    pub candidate_set: CandidatesOut,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub theta: Exact,
    pub theta_float: f64,
    pub coverage: f64,
    pub is_candidate: bool,
    pub provenance: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CurveOut {
    pub query: QueryEcho,
    pub n: u64,
    pub step: Exact,
    pub points: Vec<CurvePoint>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub n: u64,
    pub candidate_min: f64,
    pub candidate_argmin: Exact,
    pub oracle_min: f64,
    pub oracle_argmin: Exact,
    /// `|candidate_min − oracle_min|`
    pub discrepancy: f64,
    pub within_tolerance: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerifyOut {
    pub query: QueryEcho,
    pub step: Exact,
    pub include_candidates: bool,
    pub tolerance: f64,
    pub rows: Vec<VerifyRow>,
    pub passed: bool,
}
