//! Fixed-budget pure exploration for stochastic multi-armed bandits.
//!
//! The crate provides the successive accepts and rejects strategy (SAR) for
//! m-best arms identification and for multi-bandit best arm identification,
//! three baselines (successive rejects, uniform allocation, Gap-E), the
//! gap-based hardness measures with the matching error bounds, and a seeded
//! Monte Carlo harness with an exact enumeration oracle for tiny instances.
//!
//! Arm and problem indices are 0-based in this API. Phase numbers are
//! 1-based ordinals.

pub mod algorithms;
pub mod complexity;
pub mod config;
mod error;
pub mod model;
pub mod rng;
pub mod simulation;

pub use algorithms::{
    Deactivation, Decision, PhaseSchedule, SelectionResult, Strategy, StrategySpec,
};
pub use complexity::{ComplexityReport, Gap, GapProfile};
pub use error::{Error, Result};
pub use model::{ArmDistribution, BanditInstance, MultiBanditInstance, Task};
pub use rng::RngStream;
pub use simulation::{ErrorEstimate, SweepResult, SweepRow};
