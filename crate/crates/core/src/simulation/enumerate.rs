use crate::algorithms::{Strategy, StrategySpec};
use crate::error::{Error, Result};
use crate::model::{ArmDistribution, Judge, Task};

/// Largest budget accepted by [`exact_error_enumeration`]; the outcome tree
/// has at most `2^n` leaves.
pub const ENUMERATION_LIMIT: u64 = 22;

/// Exact misidentification probability, obtained by walking the strategy's
/// whole decision tree: every Bernoulli pull branches into reward 1 (weight
/// `p`) and reward 0 (weight `1 - p`); point-mass pulls do not branch.
pub fn exact_error_enumeration(task: &Task, spec: &StrategySpec, n: u64) -> Result<f64> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            budget: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let strategy = spec.build(task, n)?;
    let arms = task.flat_arms();
    let judge = task.judge();
    Ok(explore(strategy, &arms, &judge, 1.0))
}

fn explore<S: Strategy + Clone>(
    mut s: S,
    arms: &[ArmDistribution],
    judge: &Judge,
    weight: f64,
) -> f64 {
    loop {
        let Some(arm) = s.next_pull() else {
            let result = s.finish();
            return if judge.is_correct(&result.selected) {
                0.0
            } else {
                weight
            };
        };
        match arms[arm] {
            ArmDistribution::PointMass(v) => s.observe(v),
            ArmDistribution::Bernoulli(0.0) => s.observe(0.0),
            ArmDistribution::Bernoulli(1.0) => s.observe(1.0),
            ArmDistribution::Bernoulli(p) => {
                let mut success = s.clone();
                success.observe(1.0);
                s.observe(0.0);
                return explore(success, arms, judge, weight * p)
                    + explore(s, arms, judge, weight * (1.0 - p));
            }
        }
    }
}
