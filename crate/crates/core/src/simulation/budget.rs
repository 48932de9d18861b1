use crate::complexity::{complexity_m_best, complexity_multibandit};
use crate::error::{Error, Result};
use crate::model::{BanditInstance, MultiBanditInstance};

/// Rounds a hardness value up to a pull count. Values within floating-point
/// noise of an integer (such as `1 / (0.5 - 0.4)^2`) snap to that integer.
fn round_up(h1: f64) -> u64 {
    let nearest = h1.round();
    if (h1 - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest as u64
    } else {
        h1.ceil() as u64
    }
}

/// Budget of about `max_m H1<m>` over `m_values`, skipping values of `m`
/// whose complexity is undefined.
pub fn suggest_budget(instance: &BanditInstance, m_values: &[usize]) -> Result<u64> {
    let means = instance.true_means();
    let mut best: Option<f64> = None;
    for &m in m_values {
        match complexity_m_best(&means, m) {
            Ok(r) => best = Some(best.map_or(r.h1, |b: f64| b.max(r.h1))),
            Err(Error::InfeasibleComplexity(_)) => {}
            Err(e) => return Err(e),
        }
    }
    best.map(round_up).ok_or_else(|| {
        Error::InfeasibleComplexity(format!("no m in {m_values:?} has a defined complexity"))
    })
}

/// Budget of about `H1[M]` for a multi-bandit instance.
pub fn suggest_budget_multibandit(multi: &MultiBanditInstance) -> Result<u64> {
    complexity_multibandit(multi).map(|r| round_up(r.h1))
}
