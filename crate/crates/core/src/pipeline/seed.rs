use sha2::{Digest, Sha256};

use crate::rng::RngStream;

/// Stream seed for one (job seed, sample, repetition) triple.
///
/// The seed is the first eight bytes, read little-endian, of
/// `SHA-256(global_seed_le || len(sample_id)_le || sample_id || rep_index_le)`
/// where both integers and the length are 64-bit.
pub fn derive_seed_value(global_seed: u64, sample_id: &str, rep_index: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(global_seed.to_le_bytes());
    h.update((sample_id.len() as u64).to_le_bytes());
    h.update(sample_id.as_bytes());
    h.update(rep_index.to_le_bytes());
    let digest = h.finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(head)
}

pub fn derive_seed(global_seed: u64, sample_id: &str, rep_index: u64) -> RngStream {
    RngStream::new(derive_seed_value(global_seed, sample_id, rep_index))
}
