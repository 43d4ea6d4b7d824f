use std::fmt::Write as _;

use exactss_core::{
    candidates_for, coverage, grid_min_coverage, min_coverage, min_coverage_value,
    min_sample_size, CandidateSet, GridSpec, Rational, SampleSizeQuery,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{CurveArgs, FixedN, Format, SampleSizeArgs, VerifyArgs};
use crate::config::{CliError, Resolved};
use crate::model::*;

/// Bytes to emit, and an error to report after emitting them.
pub struct Rendered {
    pub bytes: Vec<u8>,
    pub failure: Option<CliError>,
}

impl Rendered {
    fn ok(bytes: Vec<u8>) -> Self {
        Rendered { bytes, failure: None }
    }
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value).map_err(std::io::Error::from)?;
    out.push(b'\n');
    Ok(out)
}

fn csv_rows<const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

fn tags(provenance: &[String]) -> String {
    provenance.join("|")
}

fn query_lines(out: &mut String, q: &QueryEcho) {
    let crit = match &q.criterion {
        Criterion::Absolute { eps } => format!("absolute, eps = {}", eps.0),
        Criterion::Relative { eps } => format!("relative, eps = {}", eps.0),
        Criterion::Mixed { eps_a, eps_r } => {
            format!("mixed, eps_a = {}, eps_r = {}", eps_a.0, eps_r.0)
        }
    };
    let _ = writeln!(out, "family        {}", q.family);
    let _ = writeln!(out, "criterion     {crit}");
    let _ = writeln!(out, "estimator     {}", q.estimator);
    let _ = writeln!(out, "interval      [{}, {}]", q.a.0, q.b.0);
}

fn exact_and_float(r: Rational) -> String {
    format!("{r} ({})", r.to_f64())
}

pub fn sample_size(args: &SampleSizeArgs) -> Result<Rendered, CliError> {
    let q = Resolved::from_query(&args.query)?;
    let query = SampleSizeQuery::new(q.family, q.criterion, q.estimator, q.a, q.b, args.delta)
        .with_n_start(args.n_start)
        .with_n_max(args.n_max)
        .with_guard_band(args.guard_band);
    query.validate()?;
    let res = min_sample_size(&query)?;
    let rows: Vec<TraceRow> = res
        .trace
        .iter()
        .map(|t| TraceRow {
            n: t.n,
            min_coverage: t.min_coverage,
            argmin_theta: Exact(t.argmin_theta),
        })
        .collect();
    let out = SampleSizeOut {
        query: (&q).into(),
        delta: Exact(args.delta),
        n_start: args.n_start,
        n_max: args.n_max,
        guard_band: args.guard_band,
        n_min: res.n_min,
        coverage_at_n_min: res.coverage_at_n_min,
        argmin_theta: res.argmin_theta.map(Exact),
        argmin_theta_float: res.argmin_theta.map(|t| t.to_f64()),
        examined: rows.len() as u64,
        trace: args.trace.then(|| rows.clone()),
    };
    let bytes = match args.emit.format {
        Format::Json => json(&out)?,
        // the CSV form is always the full trace; the last row is n_min when found
        Format::Csv => csv_rows(
            ["n", "min_coverage", "argmin_theta"],
            rows.iter()
                .map(|t| [t.n.to_string(), t.min_coverage.to_string(), t.argmin_theta.0.to_string()]),
        )?,
        Format::Text => {
            let mut s = String::new();
            query_lines(&mut s, &out.query);
            let _ = writeln!(s, "delta         {}", args.delta);
            match (res.n_min, res.coverage_at_n_min, res.argmin_theta) {
                (Some(n), Some(c), Some(t)) => {
                    let _ = writeln!(s, "n_min         {n}");
                    let _ = writeln!(s, "coverage      {c}");
                    let _ = writeln!(s, "argmin_theta  {}", exact_and_float(t));
                }
                _ => {
                    let _ = writeln!(
                        s,
                        "n_min         not found for n in [{}, {}]",
                        args.n_start, args.n_max
                    );
                }
            }
            if args.trace {
                let _ = writeln!(s, "\n{:>8}  {:<22}  argmin_theta", "n", "min_coverage");
                for t in &rows {
                    let _ = writeln!(s, "{:>8}  {:<22}  {}", t.n, t.min_coverage, t.argmin_theta.0);
                }
            }
            s.into_bytes()
        }
    };
    Ok(Rendered::ok(bytes))
}

fn candidates_out(q: &Resolved, set: &CandidateSet) -> CandidatesOut {
    CandidatesOut {
        query: q.into(),
        n: set.n(),
        set_kind: set.kind().as_str().into(),
        cardinality: set.len(),
        cardinality_bound: Exact(set.cardinality_bound()),
        within_bound: set.within_bound(),
        points: set.points().iter().map(PointOut::from).collect(),
    }
}

pub fn candidates(args: &FixedN) -> Result<Rendered, CliError> {
    let q = Resolved::from_query(&args.query)?;
    let set = candidates_for(args.n, &q.criterion, &q.estimator, q.a, q.b)?;
    let out = candidates_out(&q, &set);
    let bytes = match args.emit.format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            ["theta_exact", "theta_float", "provenance"],
            out.points
                .iter()
                .map(|p| [p.theta.0.to_string(), p.theta_float.to_string(), tags(&p.provenance)]),
        )?,
        Format::Text => {
            let mut s = String::new();
            query_lines(&mut s, &out.query);
            let _ = writeln!(s, "n             {}", out.n);
            let _ = writeln!(s, "set           {}", out.set_kind);
            let _ = writeln!(
                s,
                "size          {} (bound {}, {})",
                out.cardinality,
                out.cardinality_bound.0,
                if out.within_bound { "within" } else { "exceeded" }
            );
            let _ = writeln!(s, "\n{:<24}  {:<22}  provenance", "theta", "theta_float");
            for p in &out.points {
                let _ = writeln!(
                    s,
                    "{:<24}  {:<22}  {}",
                    p.theta.0.to_string(),
                    p.theta_float,
                    tags(&p.provenance)
                );
            }
            s.into_bytes()
        }
    };
    Ok(Rendered::ok(bytes))
}

pub fn min_coverage_cmd(args: &FixedN) -> Result<Rendered, CliError> {
    let q = Resolved::from_query(&args.query)?;
    let rep = min_coverage(q.family, args.n, &q.criterion, &q.estimator, q.a, q.b)?;
    let out = MinCoverageOut {
        query: (&q).into(),
        n: rep.n,
        min_coverage: rep.min_coverage,
        argmin_theta: Exact(rep.argmin_theta),
        argmin_theta_float: rep.argmin_theta.to_f64(),
        evaluations: rep
            .evaluations
            .iter()
            .map(|e| EvaluationOut {
                theta: Exact(e.theta),
                theta_float: e.theta.to_f64(),
                coverage: e.coverage,
            })
            .collect(),
        candidate_set: candidates_out(&q, &rep.candidate_set),
    };
    let bytes = match args.emit.format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            ["theta_float", "theta_exact", "coverage"],
            out.evaluations
                .iter()
                .map(|e| [e.theta_float.to_string(), e.theta.0.to_string(), e.coverage.to_string()]),
        )?,
        Format::Text => {
            let mut s = String::new();
            query_lines(&mut s, &out.query);
            let _ = writeln!(s, "n             {}", out.n);
            let _ = writeln!(s, "min_coverage  {}", out.min_coverage);
            let _ = writeln!(s, "argmin_theta  {}", exact_and_float(rep.argmin_theta));
            let _ = writeln!(s, "candidates    {}", out.evaluations.len());
            s.into_bytes()
        }
    };
    Ok(Rendered::ok(bytes))
}

pub fn coverage_curve(args: &CurveArgs) -> Result<Rendered, CliError> {
    let q = Resolved::from_query(&args.query)?;
    let set = candidates_for(args.n, &q.criterion, &q.estimator, q.a, q.b)?;
    let mut thetas = GridSpec::new(args.step, false)?.points(q.a, q.b)?;
    thetas.extend(set.thetas());
    thetas.sort_unstable();
    thetas.dedup();

    let values: Vec<f64> = thetas
        .par_iter()
        .map(|&t| coverage(q.family, args.n, &q.criterion, &q.estimator, t))
        .collect::<Result<_, _>>()?;
    let points: Vec<CurvePoint> = thetas
        .iter()
        .zip(values)
        .map(|(&theta, coverage)| {
            let found = set.points().binary_search_by(|p| p.theta.cmp(&theta)).ok();
            let provenance = found
                .map(|i| set.points()[i].tags.iter().map(|t| t.as_str().to_string()).collect())
                .unwrap_or_default();
            CurvePoint {
                theta: Exact(theta),
                theta_float: theta.to_f64(),
                coverage,
                is_candidate: found.is_some(),
                provenance,
            }
        })
        .collect();
    let out = CurveOut {
        query: (&q).into(),
        n: args.n,
        step: Exact(args.step),
        points,
    };
    let bytes = match args.emit.format {
        Format::Json => json(&out)?,
        Format::Csv | Format::Text => csv_rows(
            ["theta_exact", "theta_float", "coverage", "is_candidate", "provenance"],
            out.points.iter().map(|p| {
                [
                    p.theta.0.to_string(),
                    p.theta_float.to_string(),
                    p.coverage.to_string(),
                    p.is_candidate.to_string(),
                    tags(&p.provenance),
                ]
            }),
        )?,
    };
    Ok(Rendered::ok(bytes))
}

pub fn verify(args: &VerifyArgs) -> Result<Rendered, CliError> {
    let q = Resolved::from_query(&args.query)?;
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(CliError::Config(format!("--tol must be nonnegative, got {}", args.tol)));
    }
    let include = !args.grid_only;
    let grid = match args.step {
        Some(step) => GridSpec::new(step, include)?,
        None => GridSpec::divisions(q.a, q.b, 10_000, include)?,
    };
    let (lo, hi) = args.n;
    let mut rows = Vec::new();
    for n in lo..=hi {
        let (cmin, carg) = min_coverage_value(q.family, n, &q.criterion, &q.estimator, q.a, q.b)?;
        let (omin, oarg) = grid_min_coverage(q.family, n, &q.criterion, &q.estimator, q.a, q.b, grid)?;
        let discrepancy = (cmin - omin).abs();
        rows.push(VerifyRow {
            n,
            candidate_min: cmin,
            candidate_argmin: Exact(carg),
            oracle_min: omin,
            oracle_argmin: Exact(oarg),
            discrepancy,
            within_tolerance: discrepancy <= args.tol,
        });
    }
    let failed: Vec<u64> = rows.iter().filter(|r| !r.within_tolerance).map(|r| r.n).collect();
    let out = VerifyOut {
        query: (&q).into(),
        step: Exact(grid.step),
        include_candidates: include,
        tolerance: args.tol,
        rows,
        passed: failed.is_empty(),
    };
    let bytes = match args.emit.format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(
            [
                "n",
                "candidate_min",
                "candidate_argmin",
                "oracle_min",
                "oracle_argmin",
                "discrepancy",
                "within_tolerance",
            ],
            out.rows.iter().map(|r| {
                [
                    r.n.to_string(),
                    r.candidate_min.to_string(),
                    r.candidate_argmin.0.to_string(),
                    r.oracle_min.to_string(),
                    r.oracle_argmin.0.to_string(),
                    r.discrepancy.to_string(),
                    r.within_tolerance.to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            query_lines(&mut s, &out.query);
            let _ = writeln!(
                s,
                "grid          step {}{}",
                grid.step,
                if include { " plus candidate points" } else { "" }
            );
            let _ = writeln!(s, "tolerance     {}", args.tol);
            let _ = writeln!(
                s,
                "\n{:>6}  {:<22}  {:<22}  {:<10}  result",
                "n", "candidate_min", "oracle_min", "discrepancy"
            );
            for r in &out.rows {
                let _ = writeln!(
                    s,
                    "{:>6}  {:<22}  {:<22}  {:<10.3e}  {}",
                    r.n,
                    r.candidate_min,
                    r.oracle_min,
                    r.discrepancy,
                    if r.within_tolerance { "ok" } else { "MISMATCH" }
                );
            }
            s.into_bytes()
        }
    };
    let failure = (!failed.is_empty()).then(|| {
        CliError::Discrepancy(format!(
            "candidate-set and grid minima differ by more than {} at n = {:?}",
            args.tol, failed
        ))
    });
    Ok(Rendered { bytes, failure })
}
