use crate::error::{Error, Result};

use super::gaps::{boundary_values, gap_to_boundary};
use super::{check_budget, check_m_arms, top_m, ArmStats, SelectionResult, Strategy};

/// Gap-E for m-best identification.
///
/// After one initial pull per arm, every round pulls the arm maximizing
/// `-gap_i + c * sqrt((n / H1) / T_i)`, where `gap_i` is the empirical gap
/// and `T_i` the arm's pull count (ties toward the lower index). The `m`
/// arms with the highest empirical means are returned.
#[derive(Debug, Clone)]
pub struct GapE {
    m: usize,
    budget: u64,
    t: u64,
    /// `c * sqrt(n / H1)`.
    scale: f64,
    stats: ArmStats,
    last: Option<usize>,
    scratch: Vec<f64>,
}

impl GapE {
    pub fn new(arms: usize, m: usize, n: u64, c: f64, h1: f64) -> Result<Self> {
        check_m_arms(arms, m)?;
        check_budget(n, arms as u64)?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!(
                "exploration parameter must be positive, got {c}"
            )));
        }
        if !(h1 > 0.0 && h1.is_finite()) {
            return Err(Error::invalid(format!("H1 must be positive, got {h1}")));
        }
        Ok(Self {
            m,
            budget: n,
            t: 0,
            scale: c * (n as f64 / h1).sqrt(),
            stats: ArmStats::new(arms),
            last: None,
            scratch: Vec::with_capacity(arms),
        })
    }

    /// Current index of every arm; `+inf` for arms never pulled.
    pub fn indices(&mut self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.stats.counts().len());
        self.fill_indices(|_, x| out.push(x));
        out
    }

    #[inline]
    fn fill_indices(&mut self, mut sink: impl FnMut(usize, f64)) {
        let means = self.stats.means();
        let (upper, lower) = boundary_values(means, self.m, &mut self.scratch);
        for (i, (&mu, &count)) in means.iter().zip(self.stats.counts()).enumerate() {
            let index = if count == 0 {
                f64::INFINITY
            } else {
                -gap_to_boundary(mu, upper, lower) + self.scale / (count as f64).sqrt()
            };
            sink(i, index);
        }
    }
}

impl Strategy for GapE {
    #[inline]
    fn next_pull(&mut self) -> Option<usize> {
        debug_assert!(
            self.last.is_none(),
            "observe() not called after next_pull()"
        );
        if self.t == self.budget {
            return None;
        }
        let arms = self.stats.counts().len() as u64;
        let arm = if self.t < arms {
            self.t as usize
        } else {
            let mut best = 0;
            let mut best_index = f64::NEG_INFINITY;
            self.fill_indices(|i, x| {
                if x > best_index {
                    best = i;
                    best_index = x;
                }
            });
            best
        };
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
        SelectionResult {
            selected: top_m(self.stats.means(), self.m),
            total_pulls: self.stats.total(),
            pulls: self.stats.into_counts(),
            events: Vec::new(),
        }
    }
}
