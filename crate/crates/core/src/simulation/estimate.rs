use rayon::prelude::*;

use crate::algorithms::{run, StrategySpec};
use crate::error::{Error, Result};
use crate::model::Task;
use crate::rng::RngStream;

pub const DEFAULT_TRIALS: u64 = 10_000;

/// z-quantile of a two-sided 95% interval.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorEstimate {
    pub p_hat: f64,
    pub trials: u64,
    pub errors: u64,
    /// Wilson score 95% interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub master_seed: u64,
}

impl ErrorEstimate {
    pub fn from_counts(errors: u64, trials: u64, master_seed: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(errors, trials);
        Self {
            p_hat: errors as f64 / trials as f64,
            trials,
            errors,
            ci_low,
            ci_high,
            master_seed,
        }
    }

    /// Binomial standard error at the estimate.
    pub fn std_error(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.trials as f64).sqrt()
    }
}

/// Wilson score interval at 95% confidence, clamped into `[0, 1]` and
/// guaranteed to contain the point estimate.
pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

/// Runs `trials` independent runs of `spec` on `task` with budget `n`; trial
/// `t` draws from `RngStream::new(master_seed, t)`. The error count does not
/// depend on how rayon schedules the trials.
pub fn estimate_error(
    task: &Task,
    spec: &StrategySpec,
    n: u64,
    trials: u64,
    master_seed: u64,
) -> Result<ErrorEstimate> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let prototype = spec.build(task, n)?;
    let arms = task.flat_arms();
    let judge = task.judge();
    let errors = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = RngStream::new(master_seed, t);
            let result = run(prototype.clone(), &arms, &mut rng);
            u64::from(!judge.is_correct(&result.selected))
        })
        .sum();
    Ok(ErrorEstimate::from_counts(errors, trials, master_seed))
}
