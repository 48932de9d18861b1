use crate::error::{Error, Result};

use super::{check_budget, check_m_arms, top_m, ArmStats, SelectionResult, Strategy};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Pick {
    TopM(usize),
    /// Best arm of each block of `arms_per_problem` consecutive arms.
    PerProblem(usize),
}

/// Round-robin allocation of the whole budget: arm `i` receives `n / K`
/// pulls, plus one for the first `n mod K` arms. The empirically best arms
/// are returned, ties toward the lower index.
#[derive(Debug, Clone)]
pub struct Uniform {
    budget: u64,
    t: u64,
    stats: ArmStats,
    pick: Pick,
    last: Option<usize>,
}

impl Uniform {
    pub fn m_best(arms: usize, m: usize, n: u64) -> Result<Self> {
        check_m_arms(arms, m)?;
        Self::new(arms, n, Pick::TopM(m))
    }

    /// Uniform allocation over the `M K` pairs of a multi-bandit instance,
    /// returning the empirical best arm of every problem.
    pub fn multi_bandit(problems: usize, arms_per_problem: usize, n: u64) -> Result<Self> {
        if problems == 0 || arms_per_problem < 2 {
            return Err(Error::invalid(format!(
                "need M >= 1 and K >= 2, got M = {problems}, K = {arms_per_problem}"
            )));
        }
        Self::new(
            problems * arms_per_problem,
            n,
            Pick::PerProblem(arms_per_problem),
        )
    }

    fn new(arms: usize, n: u64, pick: Pick) -> Result<Self> {
        check_budget(n, arms as u64)?;
        Ok(Self {
            budget: n,
            t: 0,
            stats: ArmStats::new(arms),
            pick,
            last: None,
        })
    }
}

impl Strategy for Uniform {
    #[inline]
    fn next_pull(&mut self) -> Option<usize> {
        debug_assert!(
            self.last.is_none(),
            "observe() not called after next_pull()"
        );
        if self.t == self.budget {
            return None;
        }
        let arm = (self.t % self.stats.counts().len() as u64) as usize;
        self.t += 1;
        self.last = Some(arm);
        Some(arm)
    }

    #[inline]
    fn observe(&mut self, reward: f64) {
        let arm = self.last.take().expect("observe() without a pending pull");
        self.stats.record(arm, reward);
    }

    fn finish(self) -> SelectionResult {
        let means = self.stats.means();
        let selected = match self.pick {
            Pick::TopM(m) => top_m(means, m),
            Pick::PerProblem(k) => means.chunks(k).map(|row| top_m(row, 1)[0]).collect(),
        };
        SelectionResult {
            selected,
            total_pulls: self.stats.total(),
            pulls: self.stats.into_counts(),
            events: Vec::new(),
        }
    }
}
