//! Shared input generators for the criterion benchmarks.

use num_complex::Complex64;
use qsd_core::linalg::ComplexMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense random Hermitian matrix with entries of order one.
pub fn random_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.random::<f64>() * 2.0 - 1.0, 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(
                rng.random::<f64>() * 2.0 - 1.0,
                rng.random::<f64>() * 2.0 - 1.0,
            );
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}
