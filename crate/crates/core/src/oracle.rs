//! Brute-force and closed-form reference computations used by the test and
//! acceptance suites.
//!
//! Everything here is deliberately independent of the production paths it is
//! used to validate: the counting-test error is obtained by enumerating every
//! measurement record in exact rational arithmetic, and the twin-Fock overlap
//! reference comes from the Legendre-polynomial identity for number states in
//! rotated mode bases rather than from any polynomial expansion.

use crate::linalg::{Basis, ComplexMatrix, DensityOperator, StateVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Bayes error of the counting test at equal priors, by enumerating all
/// `2^(2n)` individual-measurement records in exact rational arithmetic.
///
/// Hypothesis A prepares exactly `n` spin-up and `n` spin-down particles
/// along the measurement axis, with the particle order uniformly random, so a
/// record is possible only if it contains exactly `n` ups and every such
/// record has probability `1 / C(2n, n)`. Hypothesis B draws each particle
/// up or down with probability 1/2, so every record has probability
/// `1 / 2^(2n)`. The optimal record-level rule errs with probability
/// `(1/2) * sum_records min(P_A, P_B)`.
pub fn brute_force_counting_error(n: usize) -> BigRational {
    assert!(
        (1..=12).contains(&n),
        "record enumeration is exponential; n = {n} out of supported range"
    );
    let two_n = 2 * n;
    let records: u64 = 1 << two_n;
    let arrangements = num_integer::binomial(BigInt::from(two_n), BigInt::from(n));
    let p_a_hit = BigRational::new(BigInt::one(), arrangements);
    let p_b = BigRational::new(BigInt::one(), BigInt::from(records));
    let mut total = BigRational::zero();
    for mask in 0..records {
        let ups = mask.count_ones() as usize;
        let p_a = if ups == n {
            p_a_hit.clone()
        } else {
            BigRational::zero()
        };
        total += p_a.min(p_b.clone());
    }
    total / BigRational::from_integer(BigInt::from(2))
}

/// Legendre polynomial at zero, `P_n(0)`.
///
/// `P_n(0) = 0` for odd `n` and `(-1)^(n/2) * (n-1)!! / n!!` for even `n`.
/// This equals the overlap of the `|n,n>` two-mode number state with its
/// counterpart in a mode basis rotated by 45 degrees, which makes it an
/// independent oracle for creation-operator expansions of such states.
pub fn legendre_p0(n: u64) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let mut value = 1.0;
    for k in 1..=(n / 2) {
        value *= (2.0 * k as f64 - 1.0) / (2.0 * k as f64);
    }
    if (n / 2).is_multiple_of(2) {
        value
    } else {
        -value
    }
}

/// Random unitary built as a product of complex plane (Jacobi-style)
/// rotations with uniform angles and phases.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(dim);
    if dim < 2 {
        return u;
    }
    for _ in 0..(3 * dim * dim) {
        let p = rng.random_range(0..dim);
        let mut q = rng.random_range(0..dim - 1);
        if q >= p {
            q += 1;
        }
        let theta = rng.random::<f64>() * std::f64::consts::TAU;
        let phi = rng.random::<f64>() * std::f64::consts::TAU;
        let (s, c) = theta.sin_cos();
        let phase = Complex64::from_polar(1.0, phi);
        // Columns p and q of U pick up the rotation R with
        // R[p][p] = c, R[p][q] = s, R[q][p] = -s*conj(phase), R[q][q] = c*conj(phase).
        for row in 0..dim {
            let up = u[(row, p)];
            let uq = u[(row, q)];
            u[(row, p)] = up * c - uq * s * phase.conj();
            u[(row, q)] = up * s + uq * c * phase.conj();
        }
    }
    u
}

/// Random normalized state with i.i.d. complex Gaussian amplitudes over an
/// index-labeled basis.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    let amplitudes: Vec<Complex64> = (0..dim)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    let basis = Basis::labeled((0..dim).map(|i| i.to_string()).collect::<Vec<_>>());
    StateVector::new(amplitudes, basis)
        .expect("finite amplitudes")
        .normalized()
        .expect("Gaussian vector is nonzero with probability 1")
}

/// Random full-support density operator: a mixture of `rank` random pure
/// states with uniform-normalized random weights.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityOperator {
    let mut weights: Vec<f64> = (0..rank.max(1)).map(|_| rng.random::<f64>() + 1e-3).collect();
    let sum: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= sum;
    }
    let parts: Vec<(f64, StateVector)> = weights
        .into_iter()
        .map(|w| (w, random_pure_state(dim, rng)))
        .collect();
    DensityOperator::mixture(&parts).expect("random mixture is a valid density operator")
}
