//! Deterministic random streams.
//!
//! Every random quantity is drawn from ChaCha8 seeded with the 64-bit
//! instance seed through [`rand::SeedableRng::seed_from_u64`]. Each
//! generation phase reads its own ChaCha stream (the 64-bit stream id in
//! [`Phase`]), so changing how many draws one phase consumes never shifts
//! another phase's randomness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream ids, one per generation phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Phase {
    Underlying = 1,
    SampleFirst = 2,
    SampleSecond = 3,
    Permutation = 4,
    Seeds = 5,
    Censoring = 6,
}

pub fn stream(seed: u64, phase: Phase) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(phase as u64);
    rng
}

/// SplitMix64 finaliser; used to derive child seeds.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds a sequence of words into one seed.
pub fn derive_seed(base: u64, words: &[u64]) -> u64 {
    words.iter().fold(mix64(base), |acc, &w| mix64(acc ^ mix64(w)))
}
