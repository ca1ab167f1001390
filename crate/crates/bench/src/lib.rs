//! Benchmark-only crate; see `benches/spectral.rs`.

use peakon_spectral::PeakonPair;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A deterministic six-node pair with two point masses, representative of
/// the heaviest inputs the round trips handle.
pub fn bench_pair(seed: u64) -> PeakonPair<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ell = 1.9;
    let offsets = [0.0, 0.13, 0.29, 0.47, 0.62, 0.81];
    let nodes: Vec<(f64, f64, f64)> = offsets
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let upsilon = if i == 2 { 0.6 } else { 0.0 };
            (u * ell, sign * rng.random_range(0.4..1.2), upsilon)
        })
        .collect();
    PeakonPair::new(ell, 0.0, &nodes).unwrap()
}
