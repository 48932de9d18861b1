//! Bandit instances, reward distributions and the tie-tolerant success criterion.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Reward distribution of one arm, supported on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArmDistribution {
    Bernoulli(f64),
    PointMass(f64),
}

impl ArmDistribution {
    pub fn bernoulli(p: f64) -> Result<Self> {
        check_unit("Bernoulli parameter", p)?;
        Ok(ArmDistribution::Bernoulli(p))
    }

    pub fn point_mass(v: f64) -> Result<Self> {
        check_unit("point mass value", v)?;
        Ok(ArmDistribution::PointMass(v))
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ArmDistribution::Bernoulli(p) => p,
            ArmDistribution::PointMass(v) => v,
        }
    }

    /// Draws one reward. Point masses still consume a draw so that pull
    /// sequences stay aligned across distribution kinds.
    #[inline]
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let u = rng.next_unit();
        match *self {
            ArmDistribution::Bernoulli(p) => {
                if u < p {
                    1.0
                } else {
                    0.0
                }
            }
            ArmDistribution::PointMass(v) => v,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ArmDistribution::Bernoulli(p) => check_unit("Bernoulli parameter", p),
            ArmDistribution::PointMass(v) => check_unit("point mass value", v),
        }
    }
}

fn check_unit(what: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} {x} outside [0, 1]")))
    }
}

/// `K >= 2` arms with known distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    arms: Vec<ArmDistribution>,
}

impl BanditInstance {
    pub fn new(arms: Vec<ArmDistribution>) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::invalid(format!(
                "a bandit instance needs at least 2 arms, got {}",
                arms.len()
            )));
        }
        for a in &arms {
            a.validate()?;
        }
        Ok(Self { arms })
    }

    pub fn bernoulli(means: &[f64]) -> Result<Self> {
        Self::new(
            means
                .iter()
                .map(|&p| ArmDistribution::Bernoulli(p))
                .collect(),
        )
    }

    pub fn point_mass(means: &[f64]) -> Result<Self> {
        Self::new(
            means
                .iter()
                .map(|&v| ArmDistribution::PointMass(v))
                .collect(),
        )
    }

    pub fn arms(&self) -> &[ArmDistribution] {
        &self.arms
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    /// Analytic means in arm order; no sorting is applied.
    pub fn true_means(&self) -> Vec<f64> {
        self.arms.iter().map(ArmDistribution::mean).collect()
    }
}

/// `M >= 1` independent bandit problems sharing one arm count `K >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiBanditInstance {
    problems: Vec<BanditInstance>,
}

impl MultiBanditInstance {
    pub fn new(problems: Vec<BanditInstance>) -> Result<Self> {
        let Some(first) = problems.first() else {
            return Err(Error::invalid(
                "a multi-bandit instance needs at least 1 problem",
            ));
        };
        let k = first.num_arms();
        if let Some((i, p)) = problems.iter().enumerate().find(|(_, p)| p.num_arms() != k) {
            return Err(Error::invalid(format!(
                "problem {i} has {} arms, expected {k}",
                p.num_arms()
            )));
        }
        Ok(Self { problems })
    }

    pub fn problems(&self) -> &[BanditInstance] {
        &self.problems
    }

    pub fn num_problems(&self) -> usize {
        self.problems.len()
    }

    pub fn arms_per_problem(&self) -> usize {
        self.problems[0].num_arms()
    }

    /// All arms, problem-major: arm `a` of problem `p` sits at `p * K + a`.
    pub fn flat_arms(&self) -> Vec<ArmDistribution> {
        self.problems
            .iter()
            .flat_map(|p| p.arms().iter().copied())
            .collect()
    }

    pub fn true_means(&self) -> Vec<Vec<f64>> {
        self.problems
            .iter()
            .map(BanditInstance::true_means)
            .collect()
    }
}

/// Tie-tolerant m-best check: the selection is correct iff the multiset of
/// its true means equals the multiset of the `m` largest means.
pub fn is_correct_selection(
    instance: &BanditInstance,
    m: usize,
    selected: &[usize],
) -> Result<bool> {
    let k = instance.num_arms();
    if m == 0 || m >= k {
        return Err(Error::invalid(format!("m = {m} outside 1..={}", k - 1)));
    }
    if selected.len() != m {
        return Err(Error::invalid(format!(
            "selection has {} arms, expected {m}",
            selected.len()
        )));
    }
    let mut seen = vec![false; k];
    for &j in selected {
        if j >= k {
            return Err(Error::invalid(format!(
                "arm index {j} out of range for K = {k}"
            )));
        }
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::invalid(format!("arm {j} selected twice")));
        }
    }
    Ok(selection_is_optimal(&instance.true_means(), selected))
}

pub(crate) fn selection_is_optimal(means: &[f64], selected: &[usize]) -> bool {
    let mut best = means.to_vec();
    best.sort_by(|a, b| b.total_cmp(a));
    let mut chosen: Vec<f64> = selected.iter().map(|&j| means[j]).collect();
    chosen.sort_by(|a, b| b.total_cmp(a));
    chosen.iter().zip(&best).all(|(a, b)| a == b)
}

/// Tie-tolerant multi-bandit check: `selected[p]` must attain the maximal
/// mean of problem `p`, for every problem.
pub fn is_correct_multibandit(multi: &MultiBanditInstance, selected: &[usize]) -> Result<bool> {
    if selected.len() != multi.num_problems() {
        return Err(Error::invalid(format!(
            "selection has {} entries, expected one per problem ({})",
            selected.len(),
            multi.num_problems()
        )));
    }
    let k = multi.arms_per_problem();
    if let Some(&j) = selected.iter().find(|&&j| j >= k) {
        return Err(Error::invalid(format!(
            "arm index {j} out of range for K = {k}"
        )));
    }
    Ok(multibandit_is_optimal(&multi.true_means(), selected))
}

pub(crate) fn multibandit_is_optimal(means: &[Vec<f64>], selected: &[usize]) -> bool {
    means.iter().zip(selected).all(|(row, &j)| {
        let best = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        row[j] == best
    })
}

/// An identification task: what is being searched for, on which instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    MBest { instance: BanditInstance, m: usize },
    MultiBandit(MultiBanditInstance),
}

impl Task {
    pub fn m_best(instance: BanditInstance, m: usize) -> Result<Self> {
        let k = instance.num_arms();
        if m == 0 || m >= k {
            return Err(Error::invalid(format!("m = {m} outside 1..={}", k - 1)));
        }
        Ok(Task::MBest { instance, m })
    }

    /// Arms as seen by a strategy: the instance's arms, or the problem-major
    /// flattening of a multi-bandit instance.
    pub fn flat_arms(&self) -> Vec<ArmDistribution> {
        match self {
            Task::MBest { instance, .. } => instance.arms().to_vec(),
            Task::MultiBandit(multi) => multi.flat_arms(),
        }
    }

    pub(crate) fn judge(&self) -> Judge {
        match self {
            Task::MBest { instance, .. } => Judge::MBest(instance.true_means()),
            Task::MultiBandit(multi) => Judge::Multi(multi.true_means()),
        }
    }
}

/// Precomputed ground truth for repeated correctness checks.
pub(crate) enum Judge {
    MBest(Vec<f64>),
    Multi(Vec<Vec<f64>>),
}

impl Judge {
    pub(crate) fn is_correct(&self, selected: &[usize]) -> bool {
        match self {
            Judge::MBest(means) => selection_is_optimal(means, selected),
            Judge::Multi(means) => multibandit_is_optimal(means, selected),
        }
    }
}
