//! Shared deterministic input generation for the benchmark suite.

use langlands_core::root_data::{AlphaVec, ObtuseBasis};
use langlands_core::verify::{sample_vector, MixRng, Profile};

/// Fixed-seed generic samples, so benchmark runs measure the same work.
pub fn bench_inputs(basis: &ObtuseBasis, count: usize) -> Vec<AlphaVec> {
    let mut rng = MixRng::new(7);
    (0..count)
        .map(|_| sample_vector(basis, &mut rng, Profile::Generic))
        .collect()
}
