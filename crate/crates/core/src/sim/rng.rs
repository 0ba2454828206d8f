use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// What a random stream is used for. Each role gets an independent key so
/// that, e.g., changing `m` does not perturb the coupled draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamRole {
    Coupled = 0,
    Extra = 1,
    Bootstrap = 2,
}

/// Counter-based stream keyed by `(seed, role)` with `index` as the ChaCha
/// stream id. Streams for different indices never overlap.
pub fn stream_rng(seed: u64, index: u64, role: StreamRole) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(role as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Uniform draw on the open interval `(0, 1)`.
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Standard exponential draw.
pub(crate) fn exponential<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    -open_unit(rng).ln()
}
