//! Counter-based deterministic random streams.
//!
//! Every Monte Carlo consumer draws from a ChaCha stream keyed by
//! `(master seed, purpose tag, item index)`, so sample `i` sees the same
//! randomness whether the loop runs serially or split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Purpose tags keeping unrelated consumers of one master seed independent.
pub mod tag {
    pub const GOE: u64 = 1;
    pub const INSTANCE: u64 = 2;
    pub const STARTS: u64 = 3;
    pub const TAIL: u64 = 4;
    pub const CONDITIONAL: u64 = 5;
}

/// Stream for item `index` of purpose `tag` under `seed`.
pub fn stream(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&tag.to_le_bytes());
    key[16..24].copy_from_slice(&index.to_le_bytes());
    key[24..32].copy_from_slice(&0x9e37_79b9_7f4a_7c15u64.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

pub fn standard_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}
