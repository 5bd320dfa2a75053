//! Shared fixtures for the criterion benchmarks.

use greedylab::rng::SplitMix64;
use greedylab::spaces::{SpaceDescriptor, SparseVector};

pub fn spaces() -> Vec<(&'static str, SpaceDescriptor)> {
    vec![
        ("lp2", SpaceDescriptor::lp(2.0).unwrap()),
        ("lp_half", SpaceDescriptor::lp(0.5).unwrap()),
        ("lorentz_d", SpaceDescriptor::lorentz_d(0.5, 1.0).unwrap()),
        ("interleaved", SpaceDescriptor::interleaved_sum(1.0, 2.0).unwrap()),
        ("summing", SpaceDescriptor::summing_c0()),
    ]
}

pub fn random_vector(seed: u64, support: usize) -> SparseVector {
    let mut rng = SplitMix64::new(seed);
    let idx = rng.distinct_indices(support, 4 * support as u64);
    SparseVector::from_pairs(
        idx.into_iter()
            .map(|i| (i, rng.sign() * rng.range_f64(0.05, 2.0))),
    )
    .unwrap()
}
