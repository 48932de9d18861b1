//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run a subset with `cargo test --test acceptance -- 2 7`.

use std::process::Command;
use std::time::{Duration, Instant};

use sarbandit_core::algorithms::{
    run, run_sar_multibandit, sar_schedule, sr_schedule, Decision, StrategySpec,
};
use sarbandit_core::complexity::{bound_theorem1, complexity_m_best};
use sarbandit_core::config::builtin_experiment;
use sarbandit_core::simulation::{estimate_error, exact_error_enumeration};
use sarbandit_core::{BanditInstance, MultiBanditInstance, RngStream, SweepResult, Task};

const ALL_M_BEST: [StrategySpec; 4] = [
    StrategySpec::Sar,
    StrategySpec::Sr,
    StrategySpec::Uniform,
    StrategySpec::GapE { c: 2.0, h1: None },
];

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome {
            pass,
            summary: summary.into(),
            details: Vec::new(),
        }
    }
}

fn binomial_se(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

fn within_limit(elapsed: Duration, limit: Duration, outcome: Outcome) -> Outcome {
    if elapsed <= limit {
        outcome
    } else {
        Outcome {
            pass: false,
            summary: format!(
                "{} but took {elapsed:.1?} (limit {limit:?})",
                outcome.summary
            ),
            ..outcome
        }
    }
}

fn draw_grid_means(rng: &mut RngStream, k: usize, steps: u64) -> Vec<f64> {
    (0..k)
        .map(|_| rng.next_range(0, steps) as f64 / steps as f64)
        .collect()
}

fn oracle_equivalence() -> Outcome {
    const CASES: usize = 25;
    const TRIALS: u64 = 100_000;
    let start = Instant::now();
    let mut rng = RngStream::new(0xacce_0001, 0);
    let mut matched = 0;
    let mut details = Vec::new();
    for case in 0..CASES {
        let k = rng.next_range(2, 3) as usize;
        let means = draw_grid_means(&mut rng, k, 10);
        let n = rng.next_range(k as u64 + 1, 10);
        let task = Task::m_best(BanditInstance::bernoulli(&means).unwrap(), 1).unwrap();
        let mut ok = true;
        for (s, spec) in ALL_M_BEST.iter().enumerate() {
            let exact = exact_error_enumeration(&task, spec, n).unwrap();
            let mc = estimate_error(&task, spec, n, TRIALS, (case * 4 + s) as u64).unwrap();
            let tol = 3.0 * binomial_se(exact, TRIALS);
            if (mc.p_hat - exact).abs() > tol {
                ok = false;
                details.push(format!(
                    "case {case} {spec} means {means:?} n={n}: exact {exact:.5} mc {:.5} tol {tol:.5}",
                    mc.p_hat
                ));
            }
        }
        matched += usize::from(ok);
    }
    let outcome = Outcome {
        pass: matched >= 24,
        summary: format!("{matched}/{CASES} cases within 3 SE of exact enumeration (need 24)"),
        details,
    };
    within_limit(start.elapsed(), Duration::from_secs(120), outcome)
}

fn error_bound_validity() -> Outcome {
    const TRIALS: u64 = 100_000;
    const FROZEN_BOUND: f64 = 0.01018;
    let start = Instant::now();
    let means = [0.9, 0.5, 0.1];
    let h2 = complexity_m_best(&means, 1).unwrap().h2;
    let bound = bound_theorem1(1000, 3, h2).unwrap();
    let task = Task::m_best(BanditInstance::bernoulli(&means).unwrap(), 1).unwrap();
    let est = estimate_error(&task, &StrategySpec::Sar, 1000, TRIALS, 0xacce_0002).unwrap();
    let limit = FROZEN_BOUND + 3.0 * est.std_error();
    let bound_matches = (bound - FROZEN_BOUND).abs() < 5e-6;
    let outcome = Outcome::new(
        bound_matches && est.p_hat <= limit,
        format!("p_hat {:.5} <= {limit:.5} (bound {bound:.6})", est.p_hat),
    );
    within_limit(start.elapsed(), Duration::from_secs(60), outcome)
}

fn sandwich() -> Outcome {
    let start = Instant::now();
    let mut rng = RngStream::new(0xacce_0003, 0);
    let mut violations = Vec::new();
    for case in 0..1000 {
        let k = rng.next_range(2, 30) as usize;
        let mut means: Vec<f64> = Vec::with_capacity(k);
        while means.len() < k {
            let mu = rng.next_unit();
            if !means.contains(&mu) {
                means.push(mu);
            }
        }
        let m = rng.next_range(1, k as u64 - 1) as usize;
        let report = complexity_m_best(&means, m).unwrap();
        let (low, high) = report.sandwich();
        if !(low <= report.h1 && report.h1 <= high) {
            violations.push(format!(
                "case {case}: K={k} m={m} H2={low} H1={} upper={high}",
                report.h1
            ));
        }
    }
    let outcome = Outcome {
        pass: violations.is_empty(),
        summary: format!(
            "{} of 1000 instances violate H2 <= H1 <= log(2 count) H2",
            violations.len()
        ),
        details: violations,
    };
    within_limit(start.elapsed(), Duration::from_secs(1), outcome)
}

fn budget_law() -> Outcome {
    let mut rng = RngStream::new(0xacce_0004, 0);
    let mut failures = Vec::new();
    let mut check = |what: &str, ok: bool, ctx: String| {
        if !ok {
            failures.push(format!("{what}: {ctx}"));
        }
    };
    for case in 0..1000 {
        let k = rng.next_range(2, 30) as usize;
        let m = rng.next_range(1, k as u64 - 1) as usize;
        let n = rng.next_range(k as u64 + 1, 5000);
        let ctx = format!("case {case} n={n} K={k} m={m}");
        let means: Vec<f64> = (0..k).map(|_| rng.next_unit()).collect();
        let task = Task::m_best(BanditInstance::bernoulli(&means).unwrap(), m).unwrap();
        let arms = task.flat_arms();
        check(
            "sar schedule",
            sar_schedule(n, k).unwrap().planned_pulls(k) <= n,
            ctx.clone(),
        );
        check(
            "sr schedule",
            sr_schedule(n, k, m).unwrap().planned_pulls(k) <= n,
            ctx.clone(),
        );
        for spec in [StrategySpec::Sar, StrategySpec::Sr, StrategySpec::Uniform] {
            let mut stream = RngStream::new(0xacce_0004, case);
            let r = run(spec.build(&task, n).unwrap(), &arms, &mut stream);
            let counted = r.pulls.iter().sum::<u64>() == r.total_pulls;
            let ok = match spec {
                StrategySpec::Uniform => r.total_pulls == n,
                _ => r.total_pulls <= n,
            };
            check(
                spec.name(),
                counted && ok,
                format!("{ctx} pulls={}", r.total_pulls),
            );
        }

        let problems = rng.next_range(1, 5) as usize;
        let kp = rng.next_range(2, 8) as usize;
        let n = rng.next_range((problems * kp) as u64 + 1, 5000);
        let ctx = format!("case {case} n={n} M={problems} K={kp}");
        let multi = MultiBanditInstance::new(
            (0..problems)
                .map(|_| {
                    let row: Vec<f64> = (0..kp).map(|_| rng.next_unit()).collect();
                    BanditInstance::bernoulli(&row).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let task = Task::MultiBandit(multi);
        let arms = task.flat_arms();
        let pairs = problems * kp;
        check(
            "multi schedule",
            sar_schedule(n, pairs).unwrap().planned_pulls(pairs) <= n,
            ctx.clone(),
        );
        for spec in [StrategySpec::Sar, StrategySpec::Uniform] {
            let mut stream = RngStream::new(0xacce_0104, case);
            let r = run(spec.build(&task, n).unwrap(), &arms, &mut stream);
            let counted = r.pulls.iter().sum::<u64>() == r.total_pulls;
            let ok = match spec {
                StrategySpec::Uniform => r.total_pulls == n,
                _ => r.total_pulls <= n,
            };
            check(
                &format!("multi {}", spec.name()),
                counted && ok,
                format!("{ctx} pulls={}", r.total_pulls),
            );
        }
    }
    Outcome {
        pass: failures.is_empty(),
        summary: format!("{} budget violations over 1000 triples", failures.len()),
        details: failures,
    }
}

/// Distinct means on a fine grid whose m-th and (m+1)-th largest differ.
fn unique_optimum_means(rng: &mut RngStream, k: usize, m: usize) -> Vec<f64> {
    loop {
        let means = draw_grid_means(rng, k, 1000);
        let mut sorted = means.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        if sorted[m - 1] > sorted[m] {
            return means;
        }
    }
}

fn point_mass_soundness() -> Outcome {
    const RUNS: u64 = 5;
    let mut rng = RngStream::new(0xacce_0005, 0);
    let mut failures = Vec::new();
    for case in 0..200u64 {
        let k = rng.next_range(2, 20) as usize;
        let m = rng.next_range(1, k as u64 - 1) as usize;
        let n = rng.next_range(k as u64 + 1, k as u64 + 300);
        let means = unique_optimum_means(&mut rng, k, m);
        let task = Task::m_best(BanditInstance::point_mass(&means).unwrap(), m).unwrap();
        let c = 0.1 + 4.0 * rng.next_unit();
        let specs = [
            StrategySpec::Sar,
            StrategySpec::Sr,
            StrategySpec::Uniform,
            StrategySpec::GapE { c, h1: None },
        ];
        for spec in specs {
            let est = estimate_error(&task, &spec, n, RUNS, case).unwrap();
            if est.errors != 0 {
                failures.push(format!(
                    "m-best case {case} {spec} m={m} n={n} means {means:?}"
                ));
            }
        }

        let problems = rng.next_range(1, 5) as usize;
        let kp = rng.next_range(2, 6) as usize;
        let n = rng.next_range((problems * kp) as u64 + 1, (problems * kp) as u64 + 300);
        let rows: Vec<Vec<f64>> = (0..problems)
            .map(|_| unique_optimum_means(&mut rng, kp, 1))
            .collect();
        let multi = MultiBanditInstance::new(
            rows.iter()
                .map(|r| BanditInstance::point_mass(r).unwrap())
                .collect(),
        )
        .unwrap();
        let task = Task::MultiBandit(multi);
        for spec in [StrategySpec::Sar, StrategySpec::Uniform] {
            let est = estimate_error(&task, &spec, n, RUNS, case).unwrap();
            if est.errors != 0 {
                failures.push(format!("multi case {case} {spec} n={n} rows {rows:?}"));
            }
        }
    }
    Outcome {
        pass: failures.is_empty(),
        summary: format!(
            "{} incorrect selections over 200 m-best and 200 multi-bandit instances",
            failures.len()
        ),
        details: failures,
    }
}

fn pooled_se(p: f64, q: f64, trials: u64) -> f64 {
    (binomial_se(p, trials).powi(2) + binomial_se(q, trials).powi(2)).sqrt()
}

fn p_hats(result: &SweepResult, name: &str) -> Vec<(usize, f64)> {
    result
        .rows
        .iter()
        .filter(|r| r.strategy.name() == name)
        .map(|r| (r.m, r.estimate.p_hat))
        .collect()
}

fn qualitative_reproduction() -> Outcome {
    const TRIALS: u64 = 5000;
    let start = Instant::now();
    let mut details = Vec::new();
    let mut failed = Vec::new();
    for number in [1, 4, 5] {
        let mut config = builtin_experiment(number).unwrap();
        config.trials = TRIALS;
        let result = config.sweep().unwrap();
        let (sar, sr, uniform, gap_e) = (
            p_hats(&result, "sar"),
            p_hats(&result, "sr"),
            p_hats(&result, "uniform"),
            p_hats(&result, "gap_e"),
        );

        let sar_worse: Vec<usize> = sar
            .iter()
            .zip(&uniform)
            .filter(|((_, s), (_, u))| *s > u + 2.0 * pooled_se(*s, *u, TRIALS))
            .map(|((m, _), _)| *m)
            .collect();
        let sr_worse: Vec<usize> = sr
            .iter()
            .zip(&uniform)
            .filter(|((m, s), (_, u))| *m > 1 && *s > u + 2.0 * pooled_se(*s, *u, TRIALS))
            .map(|((m, _), _)| *m)
            .collect();
        let count = sar.len() as f64;
        let mean = |v: &[(usize, f64)]| v.iter().map(|(_, p)| p).sum::<f64>() / count;
        let (mean_gap_e, mean_sar) = (mean(&gap_e), mean(&sar));
        let var_sum: f64 = gap_e
            .iter()
            .zip(&sar)
            .map(|((_, g), (_, s))| pooled_se(*g, *s, TRIALS).powi(2))
            .sum();
        let margin = 2.0 * var_sum.sqrt() / count;

        let exp = &config.name;
        let (a, b, c) = (
            sar_worse.is_empty(),
            !sr_worse.is_empty(),
            mean_gap_e <= mean_sar + margin,
        );
        details.push(format!(
            "{exp} n={}: (a) {} SAR worse than uniform at m={sar_worse:?}",
            result.rows[0].n,
            verdict(a)
        ));
        details.push(format!(
            "{exp}: (b) {} SR worse than uniform at m={sr_worse:?}",
            verdict(b)
        ));
        details.push(format!(
            "{exp}: (c) {} mean Gap-E {mean_gap_e:.5} vs mean SAR {mean_sar:.5} + {margin:.5}",
            verdict(c)
        ));
        for (part, ok) in [("a", a), ("b", b), ("c", c)] {
            if !ok {
                failed.push(format!("{exp}({part})"));
            }
        }
    }
    let summary = if failed.is_empty() {
        "all ordering claims hold on exp1, exp4, exp5".to_owned()
    } else {
        format!("ordering claims fail: {}", failed.join(", "))
    };
    let outcome = Outcome {
        pass: failed.is_empty(),
        summary,
        details,
    };
    within_limit(start.elapsed(), Duration::from_secs(15 * 60), outcome)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}

fn multibandit_trace() -> Outcome {
    let multi = MultiBanditInstance::new(vec![
        BanditInstance::point_mass(&[0.9, 0.1]).unwrap(),
        BanditInstance::point_mass(&[0.6, 0.4]).unwrap(),
    ])
    .unwrap();
    let schedule = sar_schedule(40, 4).unwrap().cumulative;
    let result = run_sar_multibandit(&multi, 40, &mut RngStream::new(0, 0)).unwrap();
    // (decision, arm, problem), both 1-based.
    let events: Vec<(Decision, usize, usize)> = result
        .events
        .iter()
        .map(|e| (e.decision, e.arm % 2 + 1, e.arm / 2 + 1))
        .collect();
    let expected = vec![
        (Decision::Reject, 2, 1),
        (Decision::Accept, 1, 1),
        (Decision::Reject, 2, 2),
        (Decision::Accept, 1, 2),
    ];
    let pass = schedule == [6, 8, 12]
        && events == expected
        && result.total_pulls == 38
        && result.selected == [0, 0];
    Outcome::new(
        pass,
        format!(
            "schedule {schedule:?}, events {events:?}, total pulls {}",
            result.total_pulls
        ),
    )
}

fn csv_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let invocations: [&[&str]; 2] = [
        &["run", "--experiment", "4", "--trials", "300"],
        &[
            "run",
            "--experiment",
            "3",
            "--trials",
            "200",
            "--seed",
            "99",
        ],
    ];
    let mut identical = 0;
    for (i, args) in invocations.iter().enumerate() {
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|rep| {
                let path = dir.path().join(format!("run{i}_{rep}.csv"));
                let status = Command::new(env!("CARGO_BIN_EXE_sarbandit"))
                    .args(*args)
                    .arg("--out")
                    .arg(&path)
                    .output()
                    .unwrap()
                    .status;
                assert!(status.success(), "sarbandit {args:?} failed");
                std::fs::read(&path).unwrap()
            })
            .collect();
        identical += usize::from(!outputs[0].is_empty() && outputs[0] == outputs[1]);
    }
    Outcome::new(
        identical == invocations.len(),
        format!(
            "{identical}/{} repeated invocations byte-identical",
            invocations.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 8] = [
        ("1", "oracle equivalence", oracle_equivalence),
        ("2", "error bound validity", error_bound_validity),
        ("3", "hardness sandwich", sandwich),
        ("4", "budget law", budget_law),
        ("5", "point-mass soundness", point_mass_soundness),
        ("6", "qualitative reproduction", qualitative_reproduction),
        ("7", "multi-bandit trace", multibandit_trace),
        ("8", "csv determinism", csv_determinism),
    ];
    let selected: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| criteria.iter().any(|(id, _, _)| id == a))
        .collect();

    let mut failed = 0;
    for (id, name, check) in criteria {
        if !selected.is_empty() && !selected.iter().any(|s| s == id) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id} {name}: {status} {} [{:.1?}]",
            outcome.summary,
            start.elapsed()
        );
        for line in outcome.details.iter().take(20) {
            println!("    {line}");
        }
        failed += usize::from(!outcome.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
