//! Deterministic random streams.
//!
//! Every random draw in a simulation comes from a ChaCha8 generator whose
//! 64-bit seed is derived from `(master seed, trial index, stream kind)` by
//! repeated application of the SplitMix64 finaliser:
//!
//! ```text
//! seed = mix(mix(mix(master) ^ trial) ^ stream_tag)
//! mix(z): z += 0x9E3779B97F4A7C15
//!         z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!         z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!         z ^ (z >> 31)
//! ```
//!
//! ChaCha8 output is specified bit-for-bit and independent of platform, so
//! a trial's numbers do not depend on which thread runs it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent stream families within one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Channel = 1,
    RandomBaseline = 2,
    GreedyOrder = 3,
    Bootstrap = 4,
    SelfTest = 5,
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, trial: u64, stream: Stream) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ trial) ^ stream as u64)
}

pub fn stream_rng(master: u64, trial: u64, stream: Stream) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, trial, stream))
}
