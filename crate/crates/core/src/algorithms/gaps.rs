use crate::error::{Error, Result};

/// Values of the `m`-th and `(m + 1)`-th largest entries.
#[inline]
pub(crate) fn boundary_values(means: &[f64], m: usize, scratch: &mut Vec<f64>) -> (f64, f64) {
    scratch.clear();
    scratch.extend_from_slice(means);
    let (_, upper, rest) = scratch.select_nth_unstable_by(m - 1, |a, b| b.total_cmp(a));
    let upper = *upper;
    let lower = rest.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (upper, lower)
}

/// Gap of a value against boundary `(upper, lower)`.
///
/// Anything strictly above `lower` ranks among the top `m` of a descending
/// sort; anything else ranks below, except when tied with `upper == lower`,
/// where both readings give a zero gap.
#[inline]
pub(crate) fn gap_to_boundary(mean: f64, upper: f64, lower: f64) -> f64 {
    if mean > lower {
        mean - lower
    } else {
        upper - mean
    }
}

/// Empirical gaps: with means sorted descending, the top `m_active` ranks
/// are measured against the `(m_active + 1)`-th mean and the others against
/// the `m_active`-th. Returned in input order.
pub fn empirical_gaps(empirical_means: &[f64], m_active: usize) -> Result<Vec<f64>> {
    if m_active == 0 || m_active >= empirical_means.len() {
        return Err(Error::invalid(format!(
            "m_active = {m_active} must lie in 1..{}",
            empirical_means.len()
        )));
    }
    let (upper, lower) = boundary_values(empirical_means, m_active, &mut Vec::new());
    Ok(empirical_means
        .iter()
        .map(|&mu| gap_to_boundary(mu, upper, lower))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Literal rank-based definition: stable descending sort, then gaps by rank.
    fn by_sorting(means: &[f64], m: usize) -> Vec<f64> {
        let mut order: Vec<usize> = (0..means.len()).collect();
        order.sort_by(|&a, &b| means[b].total_cmp(&means[a]));
        let mut gaps = vec![0.0; means.len()];
        for (r, &i) in order.iter().enumerate() {
            gaps[i] = if r < m {
                means[i] - means[order[m]]
            } else {
                means[order[m - 1]] - means[i]
            };
        }
        gaps
    }

    #[test]
    fn examples() {
        let g = empirical_gaps(&[0.9, 0.5, 0.1], 1).unwrap();
        for (a, b) in g.iter().zip([0.4, 0.4, 0.8]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        let g = empirical_gaps(&[0.9, 0.5, 0.1], 2).unwrap();
        for (a, b) in g.iter().zip([0.8, 0.4, 0.4]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        assert_eq!(empirical_gaps(&[0.3; 4], 2).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn m_active_range() {
        assert!(empirical_gaps(&[0.1, 0.2], 0).is_err());
        assert!(empirical_gaps(&[0.1, 0.2], 2).is_err());
    }

    proptest! {
        #[test]
        fn matches_rank_definition(
            grid in prop::collection::vec(0u8..=8, 2..12),
            m_seed in 0usize..100,
        ) {
            // A coarse grid forces plenty of ties.
            let means: Vec<f64> = grid.iter().map(|&g| f64::from(g) / 8.0).collect();
            let m = 1 + m_seed % (means.len() - 1);
            prop_assert_eq!(empirical_gaps(&means, m).unwrap(), by_sorting(&means, m));
        }
    }
}
