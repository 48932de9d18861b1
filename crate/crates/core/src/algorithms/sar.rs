use crate::error::Result;

use super::gaps::{boundary_values, gap_to_boundary};
use super::schedule::{sar_schedule, PhaseSchedule};
use super::{
    check_m_arms, ArmStats, Deactivation, Decision, PhaseCursor, SelectionResult, Strategy,
};

/// Successive accepts and rejects for m-best arms identification.
///
/// The budget is split into `K - 1` phases. During phase `k` every active
/// arm is pulled up to the cumulative target `n_k`; at its end the active arm
/// with the largest empirical gap is deactivated. It is accepted when its
/// empirical mean strictly exceeds the `(m(k) + 1)`-th best active mean and
/// rejected otherwise.
///
/// The run stops early, leaving budget unused, once all `m` arms are
/// accepted, or once the arms still to find equal the active arms (these
/// are then all accepted).
#[derive(Debug, Clone)]
pub struct SarMBest {
    schedule: PhaseSchedule,
    stats: ArmStats,
    active: Vec<usize>,
    remaining: usize,
    phase: usize,
    cursor: PhaseCursor,
    last: Option<usize>,
    accepted: Vec<usize>,
    events: Vec<Deactivation>,
    done: bool,
    scratch: Vec<f64>,
}

impl SarMBest {
    pub fn new(arms: usize, m: usize, n: u64) -> Result<Self> {
        check_m_arms(arms, m)?;
        let schedule = sar_schedule(n, arms)?;
        let mut cursor = PhaseCursor::default();
        cursor.reset(schedule.increment(1));
        Ok(Self {
            schedule,
            stats: ArmStats::new(arms),
            active: (0..arms).collect(),
            remaining: m,
            phase: 1,
            cursor,
            last: None,
            accepted: Vec::with_capacity(m),
            events: Vec::with_capacity(arms),
            done: false,
            scratch: Vec::with_capacity(arms),
        })
    }

    pub fn schedule(&self) -> &PhaseSchedule {
        &self.schedule
    }

    fn deactivate(&mut self, pos: usize, decision: Decision) {
        let arm = self.active.remove(pos);
        if decision == Decision::Accept {
            self.accepted.push(arm);
            self.remaining -= 1;
        }
        self.events.push(Deactivation {
            phase: self.phase,
            arm,
            decision,
        });
    }

    fn end_phase(&mut self) {
        let means: Vec<f64> = self.active.iter().map(|&a| self.stats.mean(a)).collect();
        let (upper, lower) = boundary_values(&means, self.remaining, &mut self.scratch);

        let mut best = 0;
        let mut best_gap = f64::NEG_INFINITY;
        for (pos, &mu) in means.iter().enumerate() {
            let gap = gap_to_boundary(mu, upper, lower);
            if gap > best_gap {
                best = pos;
                best_gap = gap;
            }
        }
        let decision = if means[best] > lower {
            Decision::Accept
        } else {
            Decision::Reject
        };
        self.deactivate(best, decision);

        if self.remaining == 0 {
            self.done = true;
        } else if self.remaining == self.active.len() {
            while !self.active.is_empty() {
                self.deactivate(0, Decision::Accept);
            }
            self.done = true;
        } else {
            self.phase += 1;
            self.cursor.reset(self.schedule.increment(self.phase));
        }
    }
}

impl Strategy for SarMBest {
    fn next_pull(&mut self) -> Option<usize> {
        debug_assert!(
            self.last.is_none(),
            "observe() not called after next_pull()"
        );
        loop {
            if self.done {
                return None;
            }
            if let Some(arm) = self.cursor.next(&self.active) {
                self.last = Some(arm);
                return Some(arm);
            }
            self.end_phase();
        }
    }

    fn observe(&mut self, reward: f64) {
        let arm = self.last.take().expect("observe() without a pending pull");
        self.stats.record(arm, reward);
    }

    fn finish(self) -> SelectionResult {
        debug_assert!(self.done);
        SelectionResult {
            selected: self.accepted,
            total_pulls: self.stats.total(),
            pulls: self.stats.into_counts(),
            events: self.events,
        }
    }
}
