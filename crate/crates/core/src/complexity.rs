//! Gaps, hardness measures and error bounds.
//!
//! For m-best identification the gap of an arm is its distance to the
//! selection boundary: top arms are measured against the (m+1)-th largest
//! mean, the rest against the m-th largest. `H1` sums inverse squared gaps;
//! `H2` is the maximum over ranks `i` of `i / gap_(i)^2` with gaps sorted
//! ascending. Multi-bandit measures pool the single-best gaps of every
//! problem.
//!
//! When the m-th and (m+1)-th largest means coincide, arms sitting exactly
//! on that boundary value are [`Gap::Interchangeable`]: swapping them never
//! changes correctness, so they are left out of both measures.

use crate::error::{Error, Result};
use crate::model::MultiBanditInstance;

/// Half-harmonic normalizer `1/2 + sum_{i=2}^{n} 1/i`.
pub fn overline_log(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "overline_log needs n >= 2, got {n}"
        )));
    }
    Ok((2..=n).fold(0.5, |acc, i| acc + 1.0 / i as f64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gap {
    Value(f64),
    Interchangeable,
}

impl Gap {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Gap::Value(v) => Some(v),
            Gap::Interchangeable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    /// Indexed by arm.
    pub gaps: Vec<Gap>,
    pub m: usize,
    /// The m-th and (m+1)-th largest means.
    pub boundary_means: (f64, f64),
}

impl GapProfile {
    /// Gap values of the arms that are not interchangeable, in arm order.
    pub fn contributing(&self) -> impl Iterator<Item = f64> + '_ {
        self.gaps.iter().filter_map(Gap::value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityReport {
    pub h1: f64,
    pub h2: f64,
    /// Contributing gaps in ascending order.
    pub sorted_gaps: Vec<f64>,
}

impl ComplexityReport {
    fn from_gaps(mut gaps: Vec<f64>) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::InfeasibleComplexity(
                "all arms share the boundary mean".into(),
            ));
        }
        gaps.sort_by(f64::total_cmp);
        let h1 = gaps.iter().map(|g| g.powi(-2)).sum();
        let h2 = gaps
            .iter()
            .enumerate()
            .map(|(i, g)| (i + 1) as f64 * g.powi(-2))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            h1,
            h2,
            sorted_gaps: gaps,
        })
    }

    /// Number of gaps entering `h1` and `h2`.
    pub fn count(&self) -> usize {
        self.sorted_gaps.len()
    }

    /// Endpoints `(H2, log(2 count) H2)` of the interval that contains `H1`
    /// whenever the two smallest gaps coincide (always the case for distinct means).
    pub fn sandwich(&self) -> (f64, f64) {
        (self.h2, (2.0 * self.count() as f64).ln() * self.h2)
    }
}

pub fn gaps_m_best(means: &[f64], m: usize) -> Result<GapProfile> {
    let k = means.len();
    if k < 2 || m == 0 || m >= k {
        return Err(Error::invalid(format!(
            "m = {m} outside 1..={} for {k} arms",
            k.saturating_sub(1)
        )));
    }
    let mut sorted = means.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let (upper, lower) = (sorted[m - 1], sorted[m]);

    let gaps = if upper > lower {
        // Rank is decided by value: with a strict boundary every arm at or
        // above `upper` is among the top m.
        means
            .iter()
            .map(|&mu| Gap::Value(if mu >= upper { mu - lower } else { upper - mu }))
            .collect()
    } else {
        means
            .iter()
            .map(|&mu| {
                if mu == upper {
                    Gap::Interchangeable
                } else if mu > upper {
                    Gap::Value(mu - upper)
                } else {
                    Gap::Value(upper - mu)
                }
            })
            .collect()
    };
    Ok(GapProfile {
        gaps,
        m,
        boundary_means: (upper, lower),
    })
}

pub fn complexity_m_best(means: &[f64], m: usize) -> Result<ComplexityReport> {
    let profile = gaps_m_best(means, m)?;
    ComplexityReport::from_gaps(profile.contributing().collect())
}

/// `H1` summed over problems and `H2` over the ascending rearrangement of all
/// per-problem single-best gaps.
pub fn complexity_multibandit(multi: &MultiBanditInstance) -> Result<ComplexityReport> {
    let mut pooled = Vec::with_capacity(multi.num_problems() * multi.arms_per_problem());
    let mut h1 = 0.0;
    for (p, means) in multi.true_means().iter().enumerate() {
        let profile = gaps_m_best(means, 1)?;
        let gaps: Vec<f64> = profile.contributing().collect();
        let report = ComplexityReport::from_gaps(gaps.clone()).map_err(|_| {
            Error::InfeasibleComplexity(format!("all arms of problem {p} share one mean"))
        })?;
        h1 += report.h1;
        pooled.extend(gaps);
    }
    let mut report = ComplexityReport::from_gaps(pooled)?;
    report.h1 = h1;
    Ok(report)
}

/// Upper bound `2 K^2 exp(-(n - K) / (8 logbar(K) H2))` on SAR's m-best error
/// probability. Returned unclamped, so values above 1 mean the bound is vacuous.
pub fn bound_theorem1(n: u64, k: usize, h2: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid(format!("K must be at least 2, got {k}")));
    }
    if n < k as u64 + 1 {
        return Err(Error::BudgetTooSmall {
            budget: n,
            required: k as u64 + 1,
        });
    }
    if h2.is_nan() || h2 <= 0.0 {
        return Err(Error::invalid(format!("H2 must be positive, got {h2}")));
    }
    let kf = k as f64;
    let exponent = (n - k as u64) as f64 / (8.0 * overline_log(k)? * h2);
    Ok(2.0 * kf * kf * (-exponent).exp())
}

/// Upper bound `2 M^2 K^2 exp(-(n - MK) / (8 logbar(MK) H2))` on SAR's
/// multi-bandit error probability, unclamped.
pub fn bound_theorem2(n: u64, problems: usize, k: usize, h2: f64) -> Result<f64> {
    if problems == 0 {
        return Err(Error::invalid("M must be at least 1"));
    }
    let mk = problems * k;
    let base = bound_theorem1(n, mk, h2)?;
    // 2 (MK)^2 = 2 M^2 K^2, so the single-bandit formula over MK pairs coincides.
    Ok(base)
}
