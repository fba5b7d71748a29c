//! Deterministic substream derivation.
//!
//! All randomness flows from one master seed. Each consumer derives an
//! independent ChaCha stream from `(master, label, index)` through SHA-256,
//! which makes every parallel unit of work reproducible regardless of worker
//! count or scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

/// RNG for the substream named `(label, index)` under `master`.
pub fn substream(master: u64, label: &str, index: u64) -> ChaCha12Rng {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update([label.len() as u8]);
    hasher.update(label.as_bytes());
    hasher.update(index.to_le_bytes());
    let digest = hasher.finalize();
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&digest);
    ChaCha12Rng::from_seed(seed)
}
