//! Command implementations behind the `sarbandit` binary.

use std::io::Write;

use sarbandit_core::complexity::{
    bound_theorem1, bound_theorem2, complexity_m_best, complexity_multibandit, gaps_m_best, Gap,
};
use sarbandit_core::config::{builtin_experiments, ExperimentConfig, Means};
use sarbandit_core::{ComplexityReport, Error, Result, SweepResult};

pub const CSV_HEADER: [&str; 12] = [
    "experiment",
    "strategy",
    "params",
    "m",
    "n",
    "trials",
    "errors",
    "p_hat",
    "ci_low",
    "ci_high",
    "bound",
    "seed",
];

/// Exit code for configuration and usage errors.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for failures while running a valid configuration.
pub const EXIT_RUNTIME: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

pub fn experiments_list() -> String {
    let mut s = String::new();
    for (i, c) in builtin_experiments().iter().enumerate() {
        let Means::Arms(means) = &c.means else {
            continue;
        };
        let budget = c
            .resolve_budget()
            .map_or_else(|e| e.to_string(), |n| n.to_string());
        s.push_str(&format!(
            "{}  {}  K={}  m={}..{}  budget(auto)={}\n",
            i + 1,
            c.name,
            means.len(),
            c.m_values.first().copied().unwrap_or(0),
            c.m_values.last().copied().unwrap_or(0),
            budget,
        ));
    }
    s
}

pub fn write_sweep_csv<W: Write>(result: &SweepResult, seed: u64, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(CSV_HEADER).map_err(io_err)?;
    for row in &result.rows {
        let e = &row.estimate;
        w.write_record([
            row.experiment.clone(),
            row.strategy.name().to_owned(),
            row.strategy.params(),
            row.m.to_string(),
            row.n.to_string(),
            e.trials.to_string(),
            e.errors.to_string(),
            e.p_hat.to_string(),
            e.ci_low.to_string(),
            e.ci_high.to_string(),
            row.bound.map(|b| b.to_string()).unwrap_or_default(),
            seed.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn write_summary<W: Write>(result: &SweepResult, mut out: W) -> Result<()> {
    writeln!(
        out,
        "{:<10} {:<16} {:>3} {:>7} {:>8} {:>9} {:>21}",
        "experiment", "strategy", "m", "n", "trials", "p_hat", "95% CI"
    )
    .map_err(io_err)?;
    for row in &result.rows {
        let e = &row.estimate;
        writeln!(
            out,
            "{:<10} {:<16} {:>3} {:>7} {:>8} {:>9.5} [{:>8.5}, {:>8.5}]",
            row.experiment,
            row.strategy.to_string(),
            row.m,
            row.n,
            e.trials,
            e.p_hat,
            e.ci_low,
            e.ci_high
        )
        .map_err(io_err)?;
    }
    Ok(())
}

/// Runs the sweep, writing the CSV to `csv_out` and a summary table to `summary`.
pub fn run_command<W: Write, S: Write>(
    config: &ExperimentConfig,
    csv_out: W,
    summary: S,
) -> Result<()> {
    let result = config.sweep()?;
    write_sweep_csv(&result, config.seed, csv_out)?;
    write_summary(&result, summary)
}

fn fmt_or_inf(r: &Result<f64>) -> String {
    r.as_ref()
        .map_or_else(|_| "inf".to_owned(), |v| v.to_string())
}

/// Hardness measures and the clamped SAR error bound for every `m` of the
/// config (one row for multi-bandit configs).
pub fn bounds_command<W: Write>(config: &ExperimentConfig, out: W) -> Result<()> {
    config.validate()?;
    let n = config.resolve_budget()?;
    let mut w = csv_writer(out);
    w.write_record([
        "experiment",
        "m",
        "n",
        "count",
        "h1",
        "h2",
        "bound",
        "sandwich_low",
        "sandwich_high",
    ])
    .map_err(io_err)?;

    let mut emit =
        |m: usize, report: Result<ComplexityReport>, bound: &dyn Fn(f64) -> Result<f64>| {
            let (count, h1, h2, b, lo, hi) = match report {
                Ok(r) => {
                    let (lo, hi) = r.sandwich();
                    let b = bound(r.h2).map(|b| b.min(1.0));
                    (
                        r.count().to_string(),
                        r.h1.to_string(),
                        r.h2.to_string(),
                        fmt_or_inf(&b),
                        lo.to_string(),
                        hi.to_string(),
                    )
                }
                Err(_) => {
                    let inf = || "inf".to_owned();
                    ("0".to_owned(), inf(), inf(), inf(), inf(), inf())
                }
            };
            w.write_record([
                config.name.clone(),
                m.to_string(),
                n.to_string(),
                count,
                h1,
                h2,
                b,
                lo,
                hi,
            ])
            .map_err(io_err)
        };

    if config.is_multi_bandit() {
        let multi = config.multi_instance()?;
        let (mm, k) = (multi.num_problems(), multi.arms_per_problem());
        emit(1, complexity_multibandit(&multi), &|h2| {
            bound_theorem2(n, mm, k, h2)
        })?;
    } else {
        let means = config.instance()?.true_means();
        for &m in &config.m_values {
            emit(m, complexity_m_best(&means, m), &|h2| {
                bound_theorem1(n, means.len(), h2)
            })?;
        }
    }
    w.flush().map_err(io_err)
}

/// Human-readable gap table per `m` (arms shown 1-based).
pub fn complexity_command<W: Write>(
    config: &ExperimentConfig,
    only_m: Option<usize>,
    mut out: W,
) -> Result<()> {
    config.validate()?;
    if config.is_multi_bandit() {
        let multi = config.multi_instance()?;
        for (p, means) in multi.true_means().iter().enumerate() {
            writeln!(out, "{}  problem {}", config.name, p + 1).map_err(io_err)?;
            write_gap_table(means, 1, &mut out)?;
        }
        write_report(&complexity_multibandit(&multi), &mut out)?;
        return Ok(());
    }
    let means = config.instance()?.true_means();
    let ms: Vec<usize> = match only_m {
        Some(m) => vec![m],
        None => config.m_values.clone(),
    };
    for m in ms {
        writeln!(out, "{}  K={}  m={}", config.name, means.len(), m).map_err(io_err)?;
        write_gap_table(&means, m, &mut out)?;
        write_report(&complexity_m_best(&means, m), &mut out)?;
    }
    Ok(())
}

fn write_gap_table<W: Write>(means: &[f64], m: usize, out: &mut W) -> Result<()> {
    let profile = gaps_m_best(means, m)?;
    writeln!(out, "  {:>4}  {:>12}  {:>16}", "arm", "mean", "gap").map_err(io_err)?;
    for (i, (mu, gap)) in means.iter().zip(&profile.gaps).enumerate() {
        let g = match gap {
            Gap::Value(v) => format!("{v:.10}"),
            Gap::Interchangeable => "interchangeable".to_owned(),
        };
        writeln!(out, "  {:>4}  {:>12.10}  {:>16}", i + 1, mu, g).map_err(io_err)?;
    }
    Ok(())
}

fn write_report<W: Write>(report: &Result<ComplexityReport>, out: &mut W) -> Result<()> {
    match report {
        Ok(r) => {
            let (lo, hi) = r.sandwich();
            writeln!(
                out,
                "  H1 = {:.6}  H2 = {:.6}  contributing gaps = {}  [H2, log(2 count) H2] = [{:.6}, {:.6}]\n",
                r.h1,
                r.h2,
                r.count(),
                lo,
                hi
            )
        }
        Err(e) => writeln!(out, "  {e}\n"),
    }
    .map_err(io_err)
}
