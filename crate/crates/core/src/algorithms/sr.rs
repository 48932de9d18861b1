use crate::error::Result;

use super::schedule::{sr_schedule, PhaseSchedule};
use super::{
    check_m_arms, ArmStats, Deactivation, Decision, PhaseCursor, SelectionResult, Strategy,
};

/// Successive rejects adapted to m-best identification: `K - m` phases on
/// the [`sr_schedule`], each rejecting the active arm with the lowest
/// empirical mean. The `m` survivors are returned.
#[derive(Debug, Clone)]
pub struct SuccessiveRejects {
    schedule: PhaseSchedule,
    stats: ArmStats,
    active: Vec<usize>,
    phase: usize,
    cursor: PhaseCursor,
    last: Option<usize>,
    events: Vec<Deactivation>,
    done: bool,
}

impl SuccessiveRejects {
    pub fn new(arms: usize, m: usize, n: u64) -> Result<Self> {
        check_m_arms(arms, m)?;
        let schedule = sr_schedule(n, arms, m)?;
        let mut cursor = PhaseCursor::default();
        cursor.reset(schedule.increment(1));
        Ok(Self {
            schedule,
            stats: ArmStats::new(arms),
            active: (0..arms).collect(),
            phase: 1,
            cursor,
            last: None,
            events: Vec::with_capacity(arms),
            done: false,
        })
    }

    pub fn schedule(&self) -> &PhaseSchedule {
        &self.schedule
    }

    fn end_phase(&mut self) {
        let mut worst = 0;
        for pos in 1..self.active.len() {
            if self.stats.mean(self.active[pos]) < self.stats.mean(self.active[worst]) {
                worst = pos;
            }
        }
        let arm = self.active.remove(worst);
        self.events.push(Deactivation {
            phase: self.phase,
            arm,
            decision: Decision::Reject,
        });
        if self.phase == self.schedule.phase_count() {
            self.done = true;
        } else {
            self.phase += 1;
            self.cursor.reset(self.schedule.increment(self.phase));
        }
    }
}

impl Strategy for SuccessiveRejects {
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
            selected: self.active,
            total_pulls: self.stats.total(),
            pulls: self.stats.into_counts(),
            events: self.events,
        }
    }
}
