//! Deterministic derivation of per-item RNG seeds.
//!
//! Randomized routines never share one RNG stream across items; instead
//! each item hashes the master seed together with its identifying strings
//! into its own seed. Items are therefore independent of iteration order
//! and of how many other items exist, which keeps outputs stable when a
//! dataset grows.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a hash of the master seed and the item's identifying parts.
///
/// Each part is followed by a separator byte so that part boundaries are
/// unambiguous ("ab", "c" never collides with "a", "bc").
pub fn derive_seed(master: u64, parts: &[&str]) -> u64 {
    let mut hash = FNV_OFFSET;
    for byte in master.to_le_bytes() {
        hash = (hash ^ u64::from(byte)).wrapping_mul(FNV_PRIME);
    }
    for part in parts {
        for byte in part.as_bytes() {
            hash = (hash ^ u64::from(*byte)).wrapping_mul(FNV_PRIME);
        }
        hash = (hash ^ 0xff).wrapping_mul(FNV_PRIME);
    }
    hash
}
