//! Hierarchical seed derivation.
//!
//! Every stochastic stage draws from its own ChaCha stream whose seed is
//! derived from the master seed and a path of string tags
//! (`master → experiment → trial → stage`). Derivation is a plain FNV-1a
//! fold finalized with SplitMix64, so identical paths yield identical seeds
//! on every platform.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derive a child seed from `master` and a tag path.
///
/// Tags are hashed in order; derivation is associative-free by design:
/// `derive(derive(m, &["a"]), &["b"]) != derive(m, &["a", "b"])` in general,
/// so callers should derive each stage seed from the master in one call with
/// the full path.
pub fn derive_seed(master: u64, path: &[&str]) -> u64 {
    let mut h = FNV_OFFSET ^ master;
    for tag in path {
        for &byte in tag.as_bytes() {
            h = (h ^ u64::from(byte)).wrapping_mul(FNV_PRIME);
        }
        // separator so ["ab"] and ["a", "b"] differ
        h = (h ^ 0xff).wrapping_mul(FNV_PRIME);
    }
    splitmix64(h)
}

/// Seeded RNG used throughout the crate.
pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
