use crate::algorithms::StrategySpec;
use crate::complexity::{
    bound_theorem1, bound_theorem2, complexity_m_best, complexity_multibandit,
};
use crate::error::Result;
use crate::model::{BanditInstance, Task};
use crate::rng::derive_seed;

use super::estimate::{estimate_error, ErrorEstimate};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub experiment: String,
    pub strategy: StrategySpec,
    /// Arms to identify; 1 for multi-bandit rows (one best arm per problem).
    pub m: usize,
    pub n: u64,
    pub estimate: ErrorEstimate,
    /// Unclamped error bound, attached to SAR rows when the hardness is defined.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Seed of one sweep cell, a function of the master seed, the strategy's
/// position in the request and `m` only.
pub fn cell_seed(master_seed: u64, strategy_ordinal: usize, m: usize) -> u64 {
    derive_seed(master_seed, &[strategy_ordinal as u64, m as u64])
}

/// One error estimate per `(strategy, m)`, strategy-major.
pub fn sweep_over_m(
    experiment: &str,
    instance: &BanditInstance,
    strategies: &[StrategySpec],
    m_values: &[usize],
    n: u64,
    trials: u64,
    master_seed: u64,
) -> Result<SweepResult> {
    let mut rows = Vec::with_capacity(strategies.len() * m_values.len());
    let means = instance.true_means();
    for (ordinal, spec) in strategies.iter().enumerate() {
        for &m in m_values {
            let task = Task::m_best(instance.clone(), m)?;
            let estimate =
                estimate_error(&task, spec, n, trials, cell_seed(master_seed, ordinal, m))?;
            let bound = match spec {
                StrategySpec::Sar => complexity_m_best(&means, m)
                    .ok()
                    .and_then(|r| bound_theorem1(n, means.len(), r.h2).ok()),
                _ => None,
            };
            rows.push(SweepRow {
                experiment: experiment.to_owned(),
                strategy: *spec,
                m,
                n,
                estimate,
                bound,
            });
        }
    }
    Ok(SweepResult { rows })
}

/// Multi-bandit counterpart of [`sweep_over_m`]: one row per strategy.
pub fn sweep_multibandit(
    experiment: &str,
    task: &Task,
    strategies: &[StrategySpec],
    n: u64,
    trials: u64,
    master_seed: u64,
) -> Result<SweepResult> {
    let Task::MultiBandit(multi) = task else {
        return Err(crate::Error::invalid(
            "sweep_multibandit needs a multi-bandit task",
        ));
    };
    let mut rows = Vec::with_capacity(strategies.len());
    for (ordinal, spec) in strategies.iter().enumerate() {
        let estimate = estimate_error(task, spec, n, trials, cell_seed(master_seed, ordinal, 1))?;
        let bound = match spec {
            StrategySpec::Sar => complexity_multibandit(multi).ok().and_then(|r| {
                bound_theorem2(n, multi.num_problems(), multi.arms_per_problem(), r.h2).ok()
            }),
            _ => None,
        };
        rows.push(SweepRow {
            experiment: experiment.to_owned(),
            strategy: *spec,
            m: 1,
            n,
            estimate,
            bound,
        });
    }
    Ok(SweepResult { rows })
}
