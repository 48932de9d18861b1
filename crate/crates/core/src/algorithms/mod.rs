//! Fixed-budget identification strategies.
//!
//! Every strategy follows the same pull/observe protocol ([`Strategy`]): the
//! environment asks for the next arm, draws a reward for it and reports the
//! reward back. Strategies only ever see arm ids and rewards; Gap-E is the
//! exception in that it is handed the hardness `H1` as a parameter.
//!
//! Ties are broken toward the lowest arm index everywhere (lowest
//! `(problem, arm)` pair for multi-bandit), which makes every strategy a
//! deterministic function of its observed rewards.

mod gap_e;
mod gaps;
mod multibandit;
mod sar;
mod schedule;
mod sr;
mod uniform;

pub use gap_e::GapE;
pub use gaps::empirical_gaps;
pub use multibandit::SarMultiBandit;
pub use sar::SarMBest;
pub use schedule::{sar_schedule, sr_normalizer, sr_schedule, PhaseSchedule};
pub use sr::SuccessiveRejects;
pub use uniform::Uniform;

use std::fmt;

use crate::complexity::complexity_m_best;
use crate::error::{Error, Result};
use crate::model::{ArmDistribution, BanditInstance, MultiBanditInstance, Task};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Accept,
    Reject,
}

/// One arm leaving the active set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Deactivation {
    /// 1-based phase at whose end the decision was taken.
    pub phase: usize,
    /// Arm id; problem-major flat id `problem * K + arm` for multi-bandit runs.
    pub arm: usize,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    /// m-best: the selected arms (acceptance order for SAR, ascending
    /// otherwise). Multi-bandit: entry `p` is the arm chosen in problem `p`.
    pub selected: Vec<usize>,
    /// Pull count per (flat) arm.
    pub pulls: Vec<u64>,
    pub events: Vec<Deactivation>,
    pub total_pulls: u64,
}

/// Interaction contract shared by all strategies.
///
/// `observe` must be called exactly once after every `Some` returned by
/// `next_pull`, with the reward drawn from that arm. `next_pull` returns
/// `None` once the strategy has spent its budget or stopped early.
pub trait Strategy {
    fn next_pull(&mut self) -> Option<usize>;
    fn observe(&mut self, reward: f64);
    fn finish(self) -> SelectionResult;
}

/// Drives `strategy` against `arms` until it stops.
pub fn run<S: Strategy>(
    mut strategy: S,
    arms: &[ArmDistribution],
    rng: &mut RngStream,
) -> SelectionResult {
    while let Some(arm) = strategy.next_pull() {
        let reward = arms[arm].sample(rng);
        strategy.observe(reward);
    }
    strategy.finish()
}

/// Running reward sums and counts.
#[derive(Debug, Clone)]
pub(crate) struct ArmStats {
    sums: Vec<f64>,
    counts: Vec<u64>,
    means: Vec<f64>,
}

impl ArmStats {
    pub(crate) fn new(arms: usize) -> Self {
        Self {
            sums: vec![0.0; arms],
            counts: vec![0; arms],
            means: vec![0.0; arms],
        }
    }

    #[inline]
    pub(crate) fn record(&mut self, arm: usize, reward: f64) {
        self.sums[arm] += reward;
        self.counts[arm] += 1;
        self.means[arm] = self.sums[arm] / self.counts[arm] as f64;
    }

    #[inline]
    pub(crate) fn mean(&self, arm: usize) -> f64 {
        self.means[arm]
    }

    pub(crate) fn means(&self) -> &[f64] {
        &self.means
    }

    pub(crate) fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub(crate) fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub(crate) fn into_counts(self) -> Vec<u64> {
        self.counts
    }
}

/// Indices of the `m` largest `means`, ties toward the lower index, returned ascending.
pub(crate) fn top_m(means: &[f64], m: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..means.len()).collect();
    order.sort_by(|&a, &b| means[b].total_cmp(&means[a]).then(a.cmp(&b)));
    let mut top = order[..m].to_vec();
    top.sort_unstable();
    top
}

/// Cursor over the pulls of one phase: every active arm in turn receives
/// `per_arm` consecutive pulls.
#[derive(Debug, Clone, Default)]
pub(crate) struct PhaseCursor {
    per_arm: u64,
    cursor: u64,
}

impl PhaseCursor {
    pub(crate) fn reset(&mut self, per_arm: u64) {
        self.per_arm = per_arm;
        self.cursor = 0;
    }

    #[inline]
    pub(crate) fn next(&mut self, active: &[usize]) -> Option<usize> {
        if self.cursor < self.per_arm * active.len() as u64 {
            let arm = active[(self.cursor / self.per_arm) as usize];
            self.cursor += 1;
            Some(arm)
        } else {
            None
        }
    }
}

/// A strategy and its parameters, independent of any instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategySpec {
    /// Successive accepts and rejects.
    Sar,
    /// Successive rejects, stopped once `m` arms survive.
    Sr,
    Uniform,
    /// Gap-E with exploration parameter `c`. When `h1` is `None` the harness
    /// computes it from the task's true means.
    GapE {
        c: f64,
        h1: Option<f64>,
    },
}

impl StrategySpec {
    pub fn gap_e(c: f64) -> Self {
        StrategySpec::GapE { c, h1: None }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StrategySpec::Sar => "sar",
            StrategySpec::Sr => "sr",
            StrategySpec::Uniform => "uniform",
            StrategySpec::GapE { .. } => "gap_e",
        }
    }

    /// Parameter string for reports, e.g. `c=2`.
    pub fn params(&self) -> String {
        match self {
            StrategySpec::GapE { c, h1: None } => format!("c={c}"),
            StrategySpec::GapE { c, h1: Some(h) } => format!("c={c};h1={h}"),
            _ => String::new(),
        }
    }

    /// Instantiates the strategy for `task` with budget `n`.
    pub fn build(&self, task: &Task, n: u64) -> Result<AnyStrategy> {
        match (self, task) {
            (StrategySpec::Sar, Task::MBest { instance, m }) => {
                SarMBest::new(instance.num_arms(), *m, n).map(AnyStrategy::Sar)
            }
            (StrategySpec::Sr, Task::MBest { instance, m }) => {
                SuccessiveRejects::new(instance.num_arms(), *m, n).map(AnyStrategy::Sr)
            }
            (StrategySpec::Uniform, Task::MBest { instance, m }) => {
                Uniform::m_best(instance.num_arms(), *m, n).map(AnyStrategy::Uniform)
            }
            (StrategySpec::GapE { c, h1 }, Task::MBest { instance, m }) => {
                let h1 = match h1 {
                    Some(h) => *h,
                    None => gap_e_hardness(instance, *m, n),
                };
                GapE::new(instance.num_arms(), *m, n, *c, h1).map(AnyStrategy::GapE)
            }
            (StrategySpec::Sar, Task::MultiBandit(multi)) => {
                SarMultiBandit::new(multi.num_problems(), multi.arms_per_problem(), n)
                    .map(AnyStrategy::SarMulti)
            }
            (StrategySpec::Uniform, Task::MultiBandit(multi)) => {
                Uniform::multi_bandit(multi.num_problems(), multi.arms_per_problem(), n)
                    .map(AnyStrategy::Uniform)
            }
            (spec, Task::MultiBandit(_)) => Err(Error::invalid(format!(
                "strategy {} is not defined for multi-bandit tasks",
                spec.name()
            ))),
        }
    }
}

/// `H1` handed to Gap-E: the true m-best hardness, or `n` when every arm is
/// interchangeable (any selection is then correct and the value is moot).
pub fn gap_e_hardness(instance: &BanditInstance, m: usize, n: u64) -> f64 {
    complexity_m_best(&instance.true_means(), m)
        .map(|r| r.h1)
        .unwrap_or(n as f64)
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::GapE { .. } => write!(f, "{}({})", self.name(), self.params()),
            _ => f.write_str(self.name()),
        }
    }
}

/// Any concrete strategy, for callers that pick one at runtime.
#[derive(Debug, Clone)]
pub enum AnyStrategy {
    Sar(SarMBest),
    Sr(SuccessiveRejects),
    Uniform(Uniform),
    GapE(GapE),
    SarMulti(SarMultiBandit),
}

macro_rules! dispatch {
    ($self:expr, $s:ident => $body:expr) => {
        match $self {
            AnyStrategy::Sar($s) => $body,
            AnyStrategy::Sr($s) => $body,
            AnyStrategy::Uniform($s) => $body,
            AnyStrategy::GapE($s) => $body,
            AnyStrategy::SarMulti($s) => $body,
        }
    };
}

impl Strategy for AnyStrategy {
    #[inline]
    fn next_pull(&mut self) -> Option<usize> {
        dispatch!(self, s => s.next_pull())
    }

    #[inline]
    fn observe(&mut self, reward: f64) {
        dispatch!(self, s => s.observe(reward))
    }

    fn finish(self) -> SelectionResult {
        dispatch!(self, s => s.finish())
    }
}

pub fn run_sar_m_best(
    instance: &BanditInstance,
    m: usize,
    n: u64,
    rng: &mut RngStream,
) -> Result<SelectionResult> {
    check_m(instance, m)?;
    let s = SarMBest::new(instance.num_arms(), m, n)?;
    Ok(run(s, instance.arms(), rng))
}

pub fn run_sar_multibandit(
    multi: &MultiBanditInstance,
    n: u64,
    rng: &mut RngStream,
) -> Result<SelectionResult> {
    let s = SarMultiBandit::new(multi.num_problems(), multi.arms_per_problem(), n)?;
    Ok(run(s, &multi.flat_arms(), rng))
}

pub fn run_sr_m_best(
    instance: &BanditInstance,
    m: usize,
    n: u64,
    rng: &mut RngStream,
) -> Result<SelectionResult> {
    check_m(instance, m)?;
    let s = SuccessiveRejects::new(instance.num_arms(), m, n)?;
    Ok(run(s, instance.arms(), rng))
}

pub fn run_uniform(
    instance: &BanditInstance,
    m: usize,
    n: u64,
    rng: &mut RngStream,
) -> Result<SelectionResult> {
    check_m(instance, m)?;
    let s = Uniform::m_best(instance.num_arms(), m, n)?;
    Ok(run(s, instance.arms(), rng))
}

pub fn run_gap_e(
    instance: &BanditInstance,
    m: usize,
    n: u64,
    c: f64,
    h1: f64,
    rng: &mut RngStream,
) -> Result<SelectionResult> {
    check_m(instance, m)?;
    let s = GapE::new(instance.num_arms(), m, n, c, h1)?;
    Ok(run(s, instance.arms(), rng))
}

fn check_m(instance: &BanditInstance, m: usize) -> Result<()> {
    check_m_arms(instance.num_arms(), m)
}

pub(crate) fn check_m_arms(k: usize, m: usize) -> Result<()> {
    if k < 2 || m == 0 || m >= k {
        Err(Error::invalid(format!(
            "m = {m} outside 1..={} for {k} arms",
            k.saturating_sub(1)
        )))
    } else {
        Ok(())
    }
}

pub(crate) fn check_budget(n: u64, required: u64) -> Result<()> {
    if n < required {
        Err(Error::BudgetTooSmall {
            budget: n,
            required,
        })
    } else {
        Ok(())
    }
}
