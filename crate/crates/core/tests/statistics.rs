//! Statistical properties of the Monte Carlo harness, checked against exact
//! enumeration.

use sarbandit_core::algorithms::{run, StrategySpec};
use sarbandit_core::simulation::{estimate_error, exact_error_enumeration};
use sarbandit_core::{BanditInstance, MultiBanditInstance, RngStream, Task};

const SPECS: [StrategySpec; 4] = [
    StrategySpec::Sar,
    StrategySpec::Sr,
    StrategySpec::Uniform,
    StrategySpec::GapE { c: 2.0, h1: None },
];

fn m_best(means: &[f64], m: usize) -> Task {
    Task::m_best(BanditInstance::bernoulli(means).unwrap(), m).unwrap()
}

fn se(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

#[test]
fn monte_carlo_matches_enumeration() {
    const TRIALS: u64 = 100_000;
    let cases: [(&[f64], usize, u64); 6] = [
        (&[0.7, 0.4], 1, 9),
        (&[0.6, 0.5, 0.2], 1, 12),
        (&[0.6, 0.5, 0.2], 2, 10),
        (&[0.8, 0.5, 0.5, 0.3], 2, 12),
        (&[0.9, 0.6, 0.4, 0.1], 3, 14),
        (&[0.5, 0.5, 0.4], 1, 8),
    ];
    for (i, (means, m, n)) in cases.into_iter().enumerate() {
        let task = m_best(means, m);
        for (s, spec) in SPECS.iter().enumerate() {
            let exact = exact_error_enumeration(&task, spec, n).unwrap();
            let est = estimate_error(&task, spec, n, TRIALS, 100 + (4 * i + s) as u64).unwrap();
            let tol = 3.0 * se(exact, TRIALS) + 1e-12;
            assert!(
                (est.p_hat - exact).abs() <= tol,
                "{spec} on {means:?} m={m} n={n}: mc {} exact {exact}",
                est.p_hat
            );
        }
    }

    let multi = Task::MultiBandit(
        MultiBanditInstance::new(vec![
            BanditInstance::bernoulli(&[0.7, 0.3]).unwrap(),
            BanditInstance::bernoulli(&[0.4, 0.6]).unwrap(),
        ])
        .unwrap(),
    );
    for (s, spec) in [StrategySpec::Sar, StrategySpec::Uniform]
        .iter()
        .enumerate()
    {
        let exact = exact_error_enumeration(&multi, spec, 12).unwrap();
        let est = estimate_error(&multi, spec, 12, TRIALS, 900 + s as u64).unwrap();
        assert!(
            (est.p_hat - exact).abs() <= 3.0 * se(exact, TRIALS) + 1e-12,
            "{spec}"
        );
    }
}

#[test]
fn wilson_interval_coverage() {
    const TRIALS: u64 = 2000;
    let mut rng = RngStream::new(2024, 0);
    let mut covered = 0;
    for case in 0..200u64 {
        let k = rng.next_range(2, 4) as usize;
        let means: Vec<f64> = (0..k).map(|_| rng.next_range(1, 9) as f64 / 10.0).collect();
        let m = rng.next_range(1, k as u64 - 1) as usize;
        let n = rng.next_range(k as u64 + 1, 10);
        let spec = SPECS[(case % 4) as usize];
        let task = m_best(&means, m);
        let exact = exact_error_enumeration(&task, &spec, n).unwrap();
        let est = estimate_error(&task, &spec, n, TRIALS, case).unwrap();
        covered += usize::from(est.ci_low <= exact && exact <= est.ci_high);
    }
    assert!(covered >= 180, "coverage {covered}/200");
}

#[test]
fn sar_error_shrinks_with_budget() {
    const TRIALS: u64 = 50_000;
    let task = m_best(&[0.9, 0.5, 0.1], 1);
    let small = estimate_error(&task, &StrategySpec::Sar, 30, TRIALS, 1).unwrap();
    let large = estimate_error(&task, &StrategySpec::Sar, 120, TRIALS, 2).unwrap();
    let pooled = (small.std_error().powi(2) + large.std_error().powi(2)).sqrt();
    assert!(small.p_hat >= large.p_hat - 3.0 * pooled);
    assert!(
        small.p_hat > large.p_hat,
        "{} vs {}",
        small.p_hat,
        large.p_hat
    );
}

#[test]
fn identical_streams_give_identical_runs() {
    let task = m_best(&[0.6, 0.55, 0.5, 0.45, 0.4], 2);
    let arms = task.flat_arms();
    for spec in SPECS {
        let a = run(
            spec.build(&task, 200).unwrap(),
            &arms,
            &mut RngStream::new(7, 3),
        );
        let b = run(
            spec.build(&task, 200).unwrap(),
            &arms,
            &mut RngStream::new(7, 3),
        );
        assert_eq!(a, b, "{spec}");
    }
}

#[test]
fn selection_result_invariants() {
    let mut rng = RngStream::new(55, 0);
    for trial in 0..300 {
        let k = rng.next_range(2, 12) as usize;
        let m = rng.next_range(1, k as u64 - 1) as usize;
        let n = rng.next_range(k as u64 + 1, 400);
        let means: Vec<f64> = (0..k).map(|_| rng.next_unit()).collect();
        let task = m_best(&means, m);
        let arms = task.flat_arms();
        for spec in SPECS {
            let r = run(
                spec.build(&task, n).unwrap(),
                &arms,
                &mut RngStream::new(55, trial),
            );
            assert!(r.total_pulls <= n);
            assert_eq!(r.selected.len(), m);
            let mut sorted = r.selected.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), m, "{spec} selected duplicates");
            let mut seen: Vec<usize> = r.events.iter().map(|e| e.arm).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(
                seen.len(),
                r.events.len(),
                "{spec} deactivated an arm twice"
            );
        }
    }
}
