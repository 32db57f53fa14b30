//! Counter-based random streams.
//!
//! Every random draw is keyed by `(master seed, domain, index)`: the seed
//! and domain form the ChaCha key, the index selects the stream. Trial `i`
//! therefore sees the same numbers no matter which worker runs it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DOMAIN_ORDER_SAMPLES: u64 = 1;
pub const DOMAIN_DIRECTIONS: u64 = 2;
pub const DOMAIN_ER_TRIALS: u64 = 3;
pub const DOMAIN_ER_DENSITY: u64 = 4;
pub const DOMAIN_SINGLE: u64 = 5;
pub const DOMAIN_VERIFY: u64 = 6;

/// Samples per parallel work unit. Fixed so that results never depend on
/// the thread count.
pub const BLOCK: u64 = 256;

pub fn substream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Splits `0..total` into consecutive blocks of [`BLOCK`].
pub fn blocks(total: u64) -> impl Iterator<Item = std::ops::Range<u64>> + Clone {
    (0..total.div_ceil(BLOCK)).map(move |b| b * BLOCK..((b + 1) * BLOCK).min(total))
}
