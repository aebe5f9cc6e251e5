//! Two-mode bosonic Fock space.
//!
//! States live in a sector of fixed total quantum number `T` and are indexed
//! by the mode-a occupation `m`, ascending, so the basis reads
//! `|0,T>, |1,T-1>, ..., |T,0>`. States are built by expanding polynomials in
//! the two creation operators against the vacuum, with the standard rule
//! `(a†)^p (b†)^q |0,0> = sqrt(p! q!) |p,q>`.
//!
//! Two numeric backends cover different regimes: the floating-point builders
//! here switch to log-domain factorials once exact integers run out, while
//! [`exact`] keeps everything in big-integer rationals and serves as the test
//! oracle for total degrees up to a few dozen.

use crate::linalg::{Basis, DensityOperator, LinalgError, StateVector};
use crate::numerics;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{LN_10, LN_2};
use thiserror::Error;

/// Cap on the twin-Fock builders; beyond this the log-domain accuracy of the
/// expansion coefficients is no longer guaranteed.
pub const MAX_TWIN_FOCK_N: usize = 300;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("polynomial is not homogeneous: total degrees {0} and {1} both present")]
    NotHomogeneous(usize, usize),
    #[error("cannot apply an empty polynomial to the vacuum")]
    EmptyPolynomial,
    #[error("amplitude count {amplitudes} does not match total quanta {total} + 1")]
    BadShape { total: usize, amplitudes: usize },
    #[error("amplitudes must be finite")]
    NonFinite,
    #[error("two-photon split requires k <= 2, got {0}")]
    InvalidPhotonSplit(usize),
    #[error("n = {n} exceeds the supported maximum {max}")]
    QuantaTooLarge { n: usize, max: usize },
    #[error("total quanta mismatch: {0} vs {1}")]
    SectorMismatch(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Complex amplitudes over the fixed-total-quanta basis `|m, T-m>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FockVectorRepr", into = "FockVectorRepr")]
pub struct FockVector {
    total_quanta: usize,
    amplitudes: Vec<Complex64>,
}

impl FockVector {
    pub fn new(total_quanta: usize, amplitudes: Vec<Complex64>) -> Result<Self, FockError> {
        if amplitudes.len() != total_quanta + 1 {
            return Err(FockError::BadShape {
                total: total_quanta,
                amplitudes: amplitudes.len(),
            });
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(FockError::NonFinite);
        }
        Ok(FockVector {
            total_quanta,
            amplitudes,
        })
    }

    /// The number state `|m,n>`.
    pub fn number_state(m: usize, n: usize) -> Self {
        let total = m + n;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); total + 1];
        amplitudes[m] = Complex64::new(1.0, 0.0);
        FockVector {
            total_quanta: total,
            amplitudes,
        }
    }

    pub fn total_quanta(&self) -> usize {
        self.total_quanta
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitude on `|m, T-m>`.
    pub fn amplitude(&self, mode_a_occupation: usize) -> Complex64 {
        self.amplitudes[mode_a_occupation]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn overlap(&self, other: &FockVector) -> Result<Complex64, FockError> {
        if self.total_quanta != other.total_quanta {
            return Err(FockError::SectorMismatch(
                self.total_quanta,
                other.total_quanta,
            ));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// View as a general state vector over the `TwoModeFock` basis.
    pub fn to_state_vector(&self) -> StateVector {
        StateVector::new(
            self.amplitudes.clone(),
            Basis::TwoModeFock(self.total_quanta as u32),
        )
        .expect("amplitude count matches basis dimension")
    }
}

#[derive(Serialize, Deserialize)]
struct FockVectorRepr {
    total_quanta: usize,
    /// `[re, im]` pairs, mode-a occupation ascending.
    amplitudes: Vec<[f64; 2]>,
}

impl From<FockVector> for FockVectorRepr {
    fn from(v: FockVector) -> Self {
        FockVectorRepr {
            total_quanta: v.total_quanta,
            amplitudes: v.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<FockVectorRepr> for FockVector {
    type Error = FockError;
    fn try_from(repr: FockVectorRepr) -> Result<Self, FockError> {
        FockVector::new(
            repr.total_quanta,
            repr.amplitudes
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

/// Polynomial in the two commuting creation operators: a finite map from
/// monomial exponents `(p, q)`, meaning `(a†)^p (b†)^q`, to complex
/// coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CreationPolynomial {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl CreationPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The multiplicative identity (the empty product of operators).
    pub fn one() -> Self {
        Self::monomial(0, 0, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(p: u32, q: u32, coeff: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != Complex64::new(0.0, 0.0) {
            terms.insert((p, q), coeff);
        }
        CreationPolynomial { terms }
    }

    /// `ca * a† + cb * b†`.
    pub fn linear(ca: f64, cb: f64) -> Self {
        let mut poly = Self::monomial(1, 0, Complex64::new(ca, 0.0));
        poly = poly.add(&Self::monomial(0, 1, Complex64::new(cb, 0.0)));
        poly
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&key, &coeff) in &other.terms {
            let entry = terms.entry(key).or_insert(Complex64::new(0.0, 0.0));
            *entry += coeff;
            if *entry == Complex64::new(0.0, 0.0) {
                terms.remove(&key);
            }
        }
        CreationPolynomial { terms }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        CreationPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&k, &c)| (k, c * factor))
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .collect(),
        }
    }

    /// Product of two polynomials: coefficient-wise convolution over exponent
    /// pairs (the operators commute, so this is the full multiplication law).
    pub fn multiply(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), Complex64> = BTreeMap::new();
        for (&(pa, qa), &ca) in &self.terms {
            for (&(pb, qb), &cb) in &other.terms {
                let entry = terms
                    .entry((pa + pb, qa + qb))
                    .or_insert(Complex64::new(0.0, 0.0));
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        CreationPolynomial { terms }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exponent {
            acc = acc.multiply(self);
        }
        acc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: u32, q: u32) -> Complex64 {
        self.terms
            .get(&(p, q))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Total degree if every monomial has the same `p + q`.
    pub fn homogeneous_degree(&self) -> Result<usize, FockError> {
        let mut degree: Option<usize> = None;
        for &(p, q) in self.terms.keys() {
            let d = (p + q) as usize;
            match degree {
                None => degree = Some(d),
                Some(existing) if existing != d => {
                    return Err(FockError::NotHomogeneous(existing, d))
                }
                _ => {}
            }
        }
        degree.ok_or(FockError::EmptyPolynomial)
    }
}

/// Expands a homogeneous creation polynomial against the vacuum:
/// the amplitude on `|p, q>` is `coeff(p, q) * sqrt(p! q!)`.
///
/// Factorials use exact integers up to 20! and log-domain evaluation beyond.
pub fn apply_to_vacuum(poly: &CreationPolynomial) -> Result<FockVector, FockError> {
    let degree = poly.homogeneous_degree()?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); degree + 1];
    for (&(p, q), &coeff) in &poly.terms {
        amplitudes[p as usize] =
            coeff * numerics::sqrt_factorial_product(p as u64, q as u64);
    }
    FockVector::new(degree, amplitudes)
}

/// The twin Fock state `|n,n>`, i.e. `(a† b†)^n |0,0> / n!`.
pub fn twin_fock(n: usize) -> FockVector {
    FockVector::number_state(n, n)
}

/// The twin Fock state of the rotated mode pair `(a† ± b†)/sqrt(2)`,
/// expanded in the `(a, b)` number basis:
/// `(a† + b†)^n (-a† + b†)^n |0,0> / (2^n n!)`.
///
/// Only even mode-a occupations `m` are populated, with sign `(-1)^(m/2)`:
/// the product collapses to `((b†)^2 - (a†)^2)^n`, so the coefficients are
/// binomial and the amplitudes can be assembled in the log domain for any
/// `n` up to [`MAX_TWIN_FOCK_N`] without overflow.
pub fn rotated_twin_fock(n: usize) -> Result<FockVector, FockError> {
    if n > MAX_TWIN_FOCK_N {
        return Err(FockError::QuantaTooLarge {
            n,
            max: MAX_TWIN_FOCK_N,
        });
    }
    let total = 2 * n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); total + 1];
    let norm_ln = n as f64 * LN_2 + numerics::ln_fact(n as u64);
    for j in 0..=n {
        let m = 2 * (n - j);
        let magnitude_ln = numerics::ln_binomial(n as u64, j as u64)
            + 0.5 * (numerics::ln_fact(2 * j as u64) + numerics::ln_fact(2 * (n - j) as u64))
            - norm_ln;
        let sign = if (n - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        amplitudes[m] = Complex64::new(sign * magnitude_ln.exp(), 0.0);
    }
    FockVector::new(total, amplitudes)
}

/// Two photons split `k` into the `(a† + b†)/sqrt(2)` mode and `2 - k` into
/// the `(-a† + b†)/sqrt(2)` mode:
/// `(a† + b†)^k (-a† + b†)^(2-k) |0,0> / (2 sqrt(k!) sqrt((2-k)!))`.
pub fn rotated_two_photon(k: usize) -> Result<FockVector, FockError> {
    if k > 2 {
        return Err(FockError::InvalidPhotonSplit(k));
    }
    let poly = CreationPolynomial::linear(1.0, 1.0)
        .pow(k as u32)
        .multiply(&CreationPolynomial::linear(-1.0, 1.0).pow(2 - k as u32));
    let raw = apply_to_vacuum(&poly)?;
    let norm = 2.0
        * numerics::fact_exact(k as u64).sqrt()
        * numerics::fact_exact(2 - k as u64).sqrt();
    let amplitudes = raw
        .amplitudes
        .iter()
        .map(|z| z / norm)
        .collect::<Vec<_>>();
    FockVector::new(2, amplitudes)
}

/// Reference closed form for the overlap magnitude between [`twin_fock`] and
/// [`rotated_twin_fock`]: `1 / (2^n ((n/2)!)^2)` for even `n`, `0` for odd
/// `n`.
///
/// Note: for even `n >= 2` this expression disagrees with the direct
/// polynomial expansion of the states, which yields `C(n, n/2) / 2^n`
/// (equivalently `|P_n(0)|`, see [`crate::oracle::legendre_p0`]). Both
/// routes are exposed so the discrepancy is visible rather than hidden; the
/// reproduction report carries one row for each.
pub fn fock_overlap_closed_form(n: usize) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let half = (n / 2) as u64;
    (-(n as f64 * LN_2 + 2.0 * numerics::ln_fact(half))).exp()
}

/// Base-10 logarithm of [`fock_overlap_closed_form`] for even `n`, exact in
/// the log domain so it survives underflow of the linear value. `None` for
/// odd `n`, where the closed form is zero.
pub fn fock_overlap_closed_form_log10(n: usize) -> Option<f64> {
    if n % 2 == 1 {
        return None;
    }
    let half = (n / 2) as u64;
    Some(-(n as f64 * LN_2 / LN_10 + 2.0 * numerics::log10_fact(half)))
}

/// The two rival two-photon mixtures in the basis `(|0,2>, |1,1>, |2,0>)`:
/// the first mixes number states of the `(a, b)` modes with weights
/// `(1/4, 1/2, 1/4)`, the second mixes the corresponding rotated-mode states
/// [`rotated_two_photon`] with the same weights.
pub fn two_photon_mixtures() -> (DensityOperator, DensityOperator) {
    let number_mix = DensityOperator::mixture(&[
        (0.25, FockVector::number_state(0, 2).to_state_vector()),
        (0.5, FockVector::number_state(1, 1).to_state_vector()),
        (0.25, FockVector::number_state(2, 0).to_state_vector()),
    ])
    .expect("number-state mixture is a valid density operator");
    let rotated_mix = DensityOperator::mixture(&[
        (0.25, rotated_two_photon(0).unwrap().to_state_vector()),
        (0.5, rotated_two_photon(1).unwrap().to_state_vector()),
        (0.25, rotated_two_photon(2).unwrap().to_state_vector()),
    ])
    .expect("rotated-state mixture is a valid density operator");
    (number_mix, rotated_mix)
}

pub mod exact {
    //! Exact-rational backend for creation-operator expansions.
    //!
    //! A state is stored as polynomial coefficients `c_m` over the sector
    //! basis, with the amplitude on `|m, T-m>` equal to `c_m * sqrt(m!(T-m)!)`.
    //! Radicals only ever appear pairwise in inner products, so squared norms
    //! and overlaps stay in `BigRational` and can be compared exactly.

    use super::FockError;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};
    use std::collections::BTreeMap;

    pub(crate) fn factorial(n: u64) -> BigInt {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= k;
        }
        acc
    }

    /// Creation polynomial with exact rational coefficients.
    #[derive(Debug, Clone, PartialEq, Default)]
    pub struct ExactPolynomial {
        terms: BTreeMap<(u32, u32), BigRational>,
    }

    impl ExactPolynomial {
        pub fn one() -> Self {
            Self::monomial(0, 0, BigRational::one())
        }

        pub fn monomial(p: u32, q: u32, coeff: BigRational) -> Self {
            let mut terms = BTreeMap::new();
            if !coeff.is_zero() {
                terms.insert((p, q), coeff);
            }
            ExactPolynomial { terms }
        }

        /// `ca * a† + cb * b†` with integer coefficients.
        pub fn linear(ca: i64, cb: i64) -> Self {
            let mut poly = Self::monomial(1, 0, BigRational::from_integer(BigInt::from(ca)));
            let b = Self::monomial(0, 1, BigRational::from_integer(BigInt::from(cb)));
            poly = poly.add(&b);
            poly
        }

        pub fn add(&self, other: &Self) -> Self {
            let mut terms = self.terms.clone();
            for (key, coeff) in &other.terms {
                let entry = terms.entry(*key).or_insert_with(BigRational::zero);
                *entry += coeff;
                if entry.is_zero() {
                    terms.remove(key);
                }
            }
            ExactPolynomial { terms }
        }

        pub fn scaled(&self, factor: &BigRational) -> Self {
            ExactPolynomial {
                terms: self
                    .terms
                    .iter()
                    .map(|(k, c)| (*k, c * factor))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            }
        }

        pub fn multiply(&self, other: &Self) -> Self {
            let mut terms: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
            for ((pa, qa), ca) in &self.terms {
                for ((pb, qb), cb) in &other.terms {
                    let entry = terms
                        .entry((pa + pb, qa + qb))
                        .or_insert_with(BigRational::zero);
                    *entry += ca * cb;
                }
            }
            terms.retain(|_, c| !c.is_zero());
            ExactPolynomial { terms }
        }

        pub fn pow(&self, exponent: u32) -> Self {
            let mut acc = Self::one();
            for _ in 0..exponent {
                acc = acc.multiply(self);
            }
            acc
        }

        pub fn apply_to_vacuum(&self) -> Result<ExactFockState, FockError> {
            let mut degree: Option<usize> = None;
            for &(p, q) in self.terms.keys() {
                let d = (p + q) as usize;
                match degree {
                    None => degree = Some(d),
                    Some(existing) if existing != d => {
                        return Err(FockError::NotHomogeneous(existing, d))
                    }
                    _ => {}
                }
            }
            let total = degree.ok_or(FockError::EmptyPolynomial)?;
            let mut coeffs = vec![BigRational::zero(); total + 1];
            for (&(p, _), c) in &self.terms {
                coeffs[p as usize] = c.clone();
            }
            Ok(ExactFockState {
                total_quanta: total,
                coeffs,
            })
        }
    }

    /// Fock-sector state with exact coefficients; the amplitude on
    /// `|m, T-m>` is `coeffs[m] * sqrt(m! (T-m)!)`.
    #[derive(Debug, Clone, PartialEq)]
    pub struct ExactFockState {
        total_quanta: usize,
        coeffs: Vec<BigRational>,
    }

    impl ExactFockState {
        pub fn total_quanta(&self) -> usize {
            self.total_quanta
        }

        fn radicand(&self, m: usize) -> BigInt {
            factorial(m as u64) * factorial((self.total_quanta - m) as u64)
        }

        /// `<psi|psi>` as an exact rational.
        pub fn norm_sqr(&self) -> BigRational {
            let mut acc = BigRational::zero();
            for (m, c) in self.coeffs.iter().enumerate() {
                acc += c * c * BigRational::from_integer(self.radicand(m));
            }
            acc
        }

        /// Raw (unnormalized) inner product of two same-sector states.
        pub fn raw_overlap(&self, other: &Self) -> Result<BigRational, FockError> {
            if self.total_quanta != other.total_quanta {
                return Err(FockError::SectorMismatch(
                    self.total_quanta,
                    other.total_quanta,
                ));
            }
            let mut acc = BigRational::zero();
            for (m, (c, d)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
                acc += c * d * BigRational::from_integer(self.radicand(m));
            }
            Ok(acc)
        }

        /// Inner product after normalizing both states; exact rational if
        /// both are already unit-norm (`None` otherwise, since the general
        /// case involves a square root).
        pub fn overlap_exact(&self, other: &Self) -> Result<Option<BigRational>, FockError> {
            let raw = self.raw_overlap(other)?;
            if self.norm_sqr().is_one() && other.norm_sqr().is_one() {
                Ok(Some(raw))
            } else {
                Ok(None)
            }
        }

        /// Inner product of the normalized states, rounded to `f64` at the end.
        pub fn overlap_normalized_f64(&self, other: &Self) -> Result<f64, FockError> {
            let raw = self.raw_overlap(other)?.to_f64().unwrap_or(f64::NAN);
            let scale =
                (self.norm_sqr().to_f64().unwrap() * other.norm_sqr().to_f64().unwrap()).sqrt();
            Ok(raw / scale)
        }

        /// Normalized amplitude on `|m, T-m>`, rounded to `f64` at the end.
        pub fn amplitude_f64(&self, m: usize) -> f64 {
            let c = self.coeffs[m].to_f64().unwrap_or(f64::NAN);
            let radicand = self.radicand(m).to_f64().unwrap_or(f64::NAN);
            c * radicand.sqrt() / self.norm_sqr().to_f64().unwrap().sqrt()
        }
    }

    /// `(a† b†)^n |0,0> / n!` — exactly `|n,n>`.
    pub fn twin_fock(n: usize) -> ExactFockState {
        let coeff = BigRational::new(BigInt::one(), factorial(n as u64));
        ExactPolynomial::monomial(n as u32, n as u32, coeff)
            .apply_to_vacuum()
            .expect("monomial is homogeneous")
    }

    /// `(a† + b†)^n (-a† + b†)^n |0,0> / (2^n n!)`, exactly normalized.
    pub fn rotated_twin_fock(n: usize) -> ExactFockState {
        let poly = ExactPolynomial::linear(1, 1)
            .pow(n as u32)
            .multiply(&ExactPolynomial::linear(-1, 1).pow(n as u32));
        let norm = BigRational::new(BigInt::one(), BigInt::from(2u64).pow(n as u32) * factorial(n as u64));
        poly.scaled(&norm)
            .apply_to_vacuum()
            .expect("product of homogeneous polynomials is homogeneous")
    }

    /// `(a† + b†)^k (-a† + b†)^(2-k) |0,0>` without the (irrational)
    /// normalizing prefactor; use the normalized accessors for comparisons.
    pub fn rotated_two_photon_unnormalized(k: usize) -> Result<ExactFockState, FockError> {
        if k > 2 {
            return Err(FockError::InvalidPhotonSplit(k));
        }
        ExactPolynomial::linear(1, 1)
            .pow(k as u32)
            .multiply(&ExactPolynomial::linear(-1, 1).pow(2 - k as u32))
            .apply_to_vacuum()
    }
}
