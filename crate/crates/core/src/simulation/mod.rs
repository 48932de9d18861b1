//! Monte Carlo estimation of misidentification probabilities, the exact
//! enumeration oracle, budget suggestion and sweeps over `m`.

mod budget;
mod enumerate;
mod estimate;
mod sweep;

pub use budget::{suggest_budget, suggest_budget_multibandit};
pub use enumerate::{exact_error_enumeration, ENUMERATION_LIMIT};
pub use estimate::{estimate_error, wilson_interval, ErrorEstimate, DEFAULT_TRIALS};
pub use sweep::{cell_seed, sweep_multibandit, sweep_over_m, SweepResult, SweepRow};
