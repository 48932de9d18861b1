use crate::complexity::overline_log;
use crate::error::{Error, Result};

use super::check_budget;

/// Cumulative per-arm pull targets of a phased elimination run.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSchedule {
    /// `cumulative[k - 1]` is the number of pulls every arm still active in
    /// phase `k` has received by the end of that phase.
    pub cumulative: Vec<u64>,
    /// The normalizer dividing the budget.
    pub normalizer: f64,
}

impl PhaseSchedule {
    fn build(n: u64, arms: usize, phases: usize, normalizer: f64) -> Self {
        let spend = (n - arms as u64) as f64 / normalizer;
        let cumulative = (1..=phases)
            .map(|k| (spend / (arms + 1 - k) as f64).ceil() as u64)
            .collect();
        Self {
            cumulative,
            normalizer,
        }
    }

    pub fn phase_count(&self) -> usize {
        self.cumulative.len()
    }

    /// Pulls added per arm in phase `k` (1-based).
    pub fn increment(&self, k: usize) -> u64 {
        let prev = if k >= 2 { self.cumulative[k - 2] } else { 0 };
        self.cumulative[k - 1] - prev
    }

    /// Total pulls when every phase runs to completion, starting from
    /// `arms` active arms and deactivating one per phase.
    pub fn planned_pulls(&self, arms: usize) -> u64 {
        (1..=self.phase_count())
            .map(|k| (arms + 1 - k) as u64 * self.increment(k))
            .sum()
    }
}

/// SAR schedule: `K - 1` phases with `n_k = ceil((n - K) / (logbar(K) (K + 1 - k)))`.
pub fn sar_schedule(n: u64, k: usize) -> Result<PhaseSchedule> {
    if k < 2 {
        return Err(Error::invalid(format!("need at least 2 arms, got {k}")));
    }
    check_budget(n, k as u64 + 1)?;
    Ok(PhaseSchedule::build(n, k, k - 1, overline_log(k)?))
}

/// Normalizer `1 + sum_{i=m+2}^{K} 1/i` of the m-best successive rejects
/// schedule; equals `logbar(K)` at `m = 1`.
pub fn sr_normalizer(k: usize, m: usize) -> f64 {
    (m + 2..=k).fold(1.0, |acc, i| acc + 1.0 / i as f64)
}

/// Successive rejects schedule for m-best: `K - m` phases whose telescoped
/// cost fits in the budget once `m` arms survive.
pub fn sr_schedule(n: u64, k: usize, m: usize) -> Result<PhaseSchedule> {
    super::check_m_arms(k, m)?;
    check_budget(n, k as u64 + 1)?;
    Ok(PhaseSchedule::build(n, k, k - m, sr_normalizer(k, m)))
}
