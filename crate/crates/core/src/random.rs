//! Seeded random integer matrices for property checks and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::SquareMatrix;

/// Default entry range for random test matrices.
pub const DEFAULT_ENTRY_RANGE: (i64, i64) = (-9, 9);

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: i64, hi: i64) -> SquareMatrix {
    SquareMatrix::from_fn(n, |_, _| rng.gen_range(lo..=hi))
}

/// The matrix fully determined by `seed`; failures report the seed so the
/// matrix can be regenerated.
pub fn seeded_matrix(seed: u64, n: usize, lo: i64, hi: i64) -> SquareMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix(&mut rng, n, lo, hi)
}

/// Per-case seed derived from a run seed, the matrix size and a case index.
pub fn case_seed(base: u64, n: usize, index: usize) -> u64 {
    // splitmix64 finaliser over the packed triple
    let mut z = base
        .wrapping_add((n as u64) << 32)
        .wrapping_add(index as u64)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
