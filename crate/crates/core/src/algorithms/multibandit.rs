use crate::error::{Error, Result};

use super::schedule::{sar_schedule, PhaseSchedule};
use super::{ArmStats, Deactivation, Decision, PhaseCursor, SelectionResult, Strategy};

/// Successive accepts and rejects for multi-bandit best arm identification.
///
/// Runs the SAR schedule over all `M K` (problem, arm) pairs. At the end of
/// each phase, a problem reduced to a single active arm has that arm accepted
/// and is closed; otherwise the pair farthest below its problem's empirical
/// leader is rejected. The last pair standing after `M K - 1` phases is
/// accepted for its problem.
///
/// Arms are addressed by flat id `problem * K + arm`.
#[derive(Debug, Clone)]
pub struct SarMultiBandit {
    arms_per_problem: usize,
    schedule: PhaseSchedule,
    stats: ArmStats,
    /// Flat ids, ascending, so scans visit pairs in (problem, arm) order.
    active: Vec<usize>,
    selected: Vec<Option<usize>>,
    phase: usize,
    cursor: PhaseCursor,
    last: Option<usize>,
    events: Vec<Deactivation>,
    done: bool,
}

impl SarMultiBandit {
    pub fn new(problems: usize, arms_per_problem: usize, n: u64) -> Result<Self> {
        if problems == 0 {
            return Err(Error::invalid("need at least one problem"));
        }
        if arms_per_problem < 2 {
            return Err(Error::invalid(format!(
                "need at least 2 arms per problem, got {arms_per_problem}"
            )));
        }
        let pairs = problems * arms_per_problem;
        let schedule = sar_schedule(n, pairs)?;
        let mut cursor = PhaseCursor::default();
        cursor.reset(schedule.increment(1));
        Ok(Self {
            arms_per_problem,
            schedule,
            stats: ArmStats::new(pairs),
            active: (0..pairs).collect(),
            selected: vec![None; problems],
            phase: 1,
            cursor,
            last: None,
            events: Vec::with_capacity(pairs),
            done: false,
        })
    }

    pub fn schedule(&self) -> &PhaseSchedule {
        &self.schedule
    }

    fn problem_of(&self, flat: usize) -> usize {
        flat / self.arms_per_problem
    }

    fn deactivate(&mut self, pos: usize, decision: Decision) {
        let flat = self.active.remove(pos);
        if decision == Decision::Accept {
            let p = self.problem_of(flat);
            self.selected[p] = Some(flat % self.arms_per_problem);
        }
        self.events.push(Deactivation {
            phase: self.phase,
            arm: flat,
            decision,
        });
    }

    fn end_phase(&mut self) {
        let problems = self.selected.len();
        // Per problem: number of active arms and the position (in `active`)
        // of its empirical leader, lowest arm index on ties.
        let mut count = vec![0usize; problems];
        let mut leader: Vec<Option<usize>> = vec![None; problems];
        for (pos, &flat) in self.active.iter().enumerate() {
            let p = self.problem_of(flat);
            count[p] += 1;
            match leader[p] {
                Some(l) if self.stats.mean(self.active[l]) >= self.stats.mean(flat) => {}
                _ => leader[p] = Some(pos),
            }
        }

        if let Some(p) = (0..problems).find(|&p| count[p] == 1) {
            let pos = leader[p].expect("active problem has a leader");
            self.deactivate(pos, Decision::Accept);
        } else {
            let mut worst = 0;
            let mut worst_gap = f64::NEG_INFINITY;
            for (pos, &flat) in self.active.iter().enumerate() {
                let l = leader[self.problem_of(flat)].expect("active problem has a leader");
                let gap = self.stats.mean(self.active[l]) - self.stats.mean(flat);
                if gap > worst_gap {
                    worst = pos;
                    worst_gap = gap;
                }
            }
            self.deactivate(worst, Decision::Reject);
        }

        if self.phase == self.schedule.phase_count() {
            debug_assert_eq!(self.active.len(), 1);
            self.deactivate(0, Decision::Accept);
            self.done = true;
        } else {
            self.phase += 1;
            self.cursor.reset(self.schedule.increment(self.phase));
        }
    }
}

impl Strategy for SarMultiBandit {
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
            selected: self
                .selected
                .into_iter()
                .map(|s| s.expect("every problem receives an accept"))
                .collect(),
            total_pulls: self.stats.total(),
            pulls: self.stats.into_counts(),
            events: self.events,
        }
    }
}
