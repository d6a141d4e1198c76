//! Seeded random instances for property sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BinaryQuantic, HomogeneousPoly};

/// Default seed for sweeps when none is given.
pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Quantic of order `n` with integer coefficients in `[-bound, bound]`.
pub fn random_quantic<R: Rng>(rng: &mut R, n: usize, bound: i64) -> BinaryQuantic {
    let a: Vec<i64> = (0..=n).map(|_| rng.gen_range(-bound..=bound)).collect();
    BinaryQuantic::from_integers(&a).expect("n >= 1")
}

/// Form of the given degree with integer raw coefficients in `[-bound, bound]`.
pub fn random_poly<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> HomogeneousPoly {
    let c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    HomogeneousPoly::from_integers(&c).expect("nonempty")
}
