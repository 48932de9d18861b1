//! Deterministic per-trial random streams.
//!
//! Every trial draws from its own PCG-64 (MCG variant) generator whose 128-bit
//! state is derived from `(master_seed, trial_index)` through the SplitMix64
//! finalizer. The reward sequence of a trial therefore depends only on the
//! master seed, the trial index and the order of pulls, never on which worker
//! thread executes it.

use rand_core::RngCore;
use rand_pcg::Pcg64Mcg;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective 64-bit avalanche mix.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of words into one seed, order-sensitively.
pub fn derive_seed(master_seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(master_seed), |acc, &p| {
        mix64(acc ^ mix64(p.wrapping_add(GOLDEN_GAMMA)))
    })
}

#[derive(Debug, Clone)]
pub struct RngStream {
    master_seed: u64,
    trial_index: u64,
    gen: Pcg64Mcg,
}

impl RngStream {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        let hi = derive_seed(master_seed, &[trial_index, 0]);
        let lo = derive_seed(master_seed, &[trial_index, 1]);
        let state = (u128::from(hi) << 64) | u128::from(lo);
        Self {
            master_seed,
            trial_index,
            gen: Pcg64Mcg::new(state),
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn trial_index(&self) -> u64 {
        self.trial_index
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.gen.next_u64()
    }

    /// Uniform draw on `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        (self.gen.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `lo..=hi`. Test and instance-generation helper; the
    /// small modulo bias is irrelevant at the ranges used.
    pub fn next_range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.next_u64() % (hi - lo + 1)
    }
}
