//! Counter-style derivation of independent random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A named random stream: `(base_seed, stream_index)` fully determines the
/// generated sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub base_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(base_seed: u64, stream_index: u64) -> Self {
        Self { base_seed, stream_index }
    }

    /// `mix64(base_seed ^ stream_index * golden)`.
    pub fn child_seed(&self) -> u64 {
        mix64(self.base_seed ^ self.stream_index.wrapping_mul(GOLDEN))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.child_seed())
    }

    /// A further stream derived from this one, for nested simulation.
    pub fn substream(&self, index: u64) -> RngStream {
        RngStream { base_seed: self.child_seed(), stream_index: index }
    }
}
