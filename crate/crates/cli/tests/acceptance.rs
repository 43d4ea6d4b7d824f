//! Every subcommand, run twice on one config, must print identical bytes.
//! Configs are sized so the parallel paths are taken.

use std::process::{Command, ExitCode};
use std::time::Instant;

fn run(args: &[&str], threads: Option<&str>) -> (Vec<u8>, Option<i32>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_exactss"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("EXACTSS_THREADS", t),
        None => cmd.env_remove("EXACTSS_THREADS"),
    };
    let out = cmd.output().expect("binary runs");
    (out.stdout, out.status.code())
}

fn configs() -> Vec<Vec<&'static str>> {
    let mut all = Vec::new();
    for format in ["text", "json", "csv"] {
        let with = |rest: &[&'static str]| {
            let mut v = rest.to_vec();
            v.extend(["--format", format]);
            v
        };
        all.push(with(&[
            "sample-size", "--abs-eps", "0.1", "--a", "0", "--b", "1", "--delta", "0.05", "--trace",
        ]));
        all.push(with(&[
            "sample-size", "--family", "poisson", "--rel-eps", "0.3", "--range-preserving",
            "--a", "1", "--b", "6", "--delta", "0.1",
        ]));
        all.push(with(&["min-coverage", "--n", "400", "--abs-eps", "0.02", "--rel-eps", "0.1", "--a", "0", "--b", "1"]));
        all.push(with(&[
            "coverage-curve", "--n", "300", "--rel-eps", "0.1", "--range-preserving",
            "--a", "0.05", "--b", "0.95", "--step", "0.001",
        ]));
        all.push(with(&["candidates", "--n", "500", "--abs-eps", "0.01", "--a", "0.1", "--b", "0.9"]));
        all.push(with(&[
            "verify", "--n", "20..24", "--family", "poisson", "--abs-eps", "0.4",
            "--range-preserving", "--a", "0.5", "--b", "4", "--step", "0.0005",
        ]));
    }
    all
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failures = Vec::new();
    let configs = configs();
    for args in &configs {
        let first = run(args, None);
        let second = run(args, None);
        let single = run(args, Some("1"));
        if first.1 != Some(0) {
            failures.push(format!("{} exited {:?}", args.join(" "), first.1));
        } else if first.0.is_empty() {
            failures.push(format!("{} printed nothing", args.join(" ")));
        } else if first != second {
            failures.push(format!("{} differs between runs", args.join(" ")));
        } else if first != single {
            failures.push(format!("{} differs with one thread", args.join(" ")));
        }
    }
    let ok = failures.is_empty();
    let detail = if ok {
        format!("{} configs, each run three times", configs.len())
    } else {
        failures.join("; ")
    };
    println!(
        "[{}] byte-identical output across runs: {detail} ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    println!("acceptance: {} of 1 criteria passed", usize::from(ok));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
