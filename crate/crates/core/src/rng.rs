use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Name recorded next to every seed in experiment output.
pub const PRNG_NAME: &str = "ChaCha20 (rand_chacha 0.3, seed_from_u64)";

pub type Prng = ChaCha20Rng;

pub fn seeded(seed: u64) -> Prng {
    ChaCha20Rng::seed_from_u64(seed)
}
