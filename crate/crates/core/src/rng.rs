//! Deterministic pseudo-random numbers for seeded searches and sweeps.
//!
//! A self-contained SplitMix64 keeps the determinism contract (identical
//! config ⇒ identical output bytes) independent of external crate versions.

/// SplitMix64 generator. Passes BigCrush for this use; tiny state, trivially
/// seedable, and stable across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derive an independent stream for a worker/trial, stable under
    /// repartitioning.
    pub fn fork(&self, stream: u64) -> Self {
        let salt = 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(stream.wrapping_add(1));
        let mut child = Self::new(self.state ^ salt);
        child.next_u64();
        child
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        // Multiply-shift; bias is < 2^-53 for the n used here.
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Random sign in {-1.0, +1.0}.
    pub fn sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Choose `k` distinct values from `1..=n` (ascending order).
    pub fn distinct_indices(&mut self, k: usize, n: u64) -> Vec<u64> {
        assert!(k as u64 <= n, "cannot draw {k} distinct values from 1..={n}");
        let mut picked = std::collections::BTreeSet::new();
        while picked.len() < k {
            picked.insert(1 + self.below(n));
        }
        picked.into_iter().collect()
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
