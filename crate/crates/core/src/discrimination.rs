//! Minimum-error discrimination probabilities.
//!
//! Covers the optimal (Helstrom) error for arbitrary density-operator pairs,
//! its pure-state specialization, the exact and asymptotic error of the
//! per-particle counting test, and the closed-form error laws for the
//! distinguishable-qubit and two-mode photon descriptions of the rival
//! preparations.

use crate::fock;
use crate::linalg::{trace_norm, DensityOperator, LinalgError};
use crate::numerics;
use crate::qubits::{BlochAxis, Preparation, QubitsError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_10, LN_2, LOG10_2, PI};
use thiserror::Error;

/// Linear probabilities below the stable-evaluation threshold are also
/// reported in log10 form; see [`PhotonError`] and [`DistinguishableError`].
const LOG_FORM_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum DiscriminationError {
    #[error("priors must lie strictly between 0 and 1: got {0}")]
    InvalidPrior(f64),
    #[error("overlap magnitude must lie in [0, 1]: got {0}")]
    OutOfRange(f64),
    #[error("error probability {0} lies outside [0, 1/2]")]
    InvalidErrorProbability(f64),
    #[error("count distributions have different lengths: {0} vs {1}")]
    CountMismatch(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Qubits(#[from] QubitsError),
}

/// How an error probability was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "helstrom")]
    Helstrom,
    #[serde(rename = "closed-form")]
    ClosedForm,
    #[serde(rename = "counting")]
    Counting,
    #[serde(rename = "monte-carlo")]
    MonteCarlo,
}

/// An error probability together with its provenance and diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationResult {
    /// Equal-prior identification error, in `[0, 1/2]`.
    pub p_error: f64,
    pub method: Method,
    /// Trace distance `(1/2) Tr |rho1 - rho2|` when two density operators
    /// were compared.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_distance: Option<f64>,
    /// Free-form diagnostics.
    pub details: String,
}

impl DiscriminationResult {
    pub fn new(
        p_error: f64,
        method: Method,
        trace_distance: Option<f64>,
        details: String,
    ) -> Result<Self, DiscriminationError> {
        if !p_error.is_finite() || !(-1e-12..=0.5 + 1e-12).contains(&p_error) {
            return Err(DiscriminationError::InvalidErrorProbability(p_error));
        }
        Ok(DiscriminationResult {
            p_error: p_error.clamp(0.0, 0.5),
            method,
            trace_distance,
            details,
        })
    }
}

/// Minimum error probability for equal priors:
/// `P_E = 1/2 - (1/4) Tr |rho1 - rho2|`.
pub fn helstrom_error(
    rho1: &DensityOperator,
    rho2: &DensityOperator,
) -> Result<DiscriminationResult, DiscriminationError> {
    let delta = rho1.diff(rho2)?;
    let tn = trace_norm(&delta)?;
    DiscriminationResult::new(
        0.5 - 0.25 * tn,
        Method::Helstrom,
        Some(0.5 * tn),
        "prior1=0.5".to_string(),
    )
}

/// Minimum error probability with prior `prior1` on the first hypothesis:
/// `P_E = (1/2) (1 - Tr |prior1 rho1 - (1 - prior1) rho2|)`.
pub fn helstrom_error_with_prior(
    rho1: &DensityOperator,
    rho2: &DensityOperator,
    prior1: f64,
) -> Result<DiscriminationResult, DiscriminationError> {
    if !prior1.is_finite() || prior1 <= 0.0 || prior1 >= 1.0 {
        return Err(DiscriminationError::InvalidPrior(prior1));
    }
    if prior1 == 0.5 {
        return helstrom_error(rho1, rho2);
    }
    let delta = rho1.diff(rho2)?;
    let tn_equal = trace_norm(&delta)?;
    let weighted = rho1
        .matrix()
        .scaled(Complex64::new(prior1, 0.0))
        .sub(&rho2.matrix().scaled(Complex64::new(1.0 - prior1, 0.0)))?;
    let tn = trace_norm(&weighted)?;
    DiscriminationResult::new(
        0.5 * (1.0 - tn),
        Method::Helstrom,
        Some(0.5 * tn_equal),
        format!("prior1={prior1}"),
    )
}

/// Minimum error probability for two pure states with overlap magnitude `s`:
/// `(1/2) (1 - sqrt(1 - s^2))`, evaluated in the cancellation-free form
/// `s^2 / (2 (1 + sqrt(1 - s^2)))`.
pub fn pure_state_error(overlap_magnitude: f64) -> Result<f64, DiscriminationError> {
    let s = overlap_magnitude;
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(DiscriminationError::OutOfRange(s));
    }
    Ok(s * s / (2.0 * (1.0 + (1.0 - s * s).sqrt())))
}

/// `C(2n, n)` as an exact integer-valued `f64`; valid for `n <= 26`.
fn central_binomial_exact(n: u64) -> f64 {
    debug_assert!(n <= 26);
    let mut acc: u128 = 1;
    for i in 0..n {
        acc = acc * (2 * n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// Exact identification error of the counting test: one hypothesis yields
/// exactly `n` up and `n` down outcomes, the other is Binomial(2n, 1/2), so
/// the Bayes rule errs with probability `(1/2) 2^{-2n} C(2n, n)`.
///
/// Small `n` are evaluated in exact dyadic arithmetic (the result is a
/// binomial count divided by a power of two); larger `n` switch to the log
/// domain so nothing overflows.
pub fn counting_test_error(n: u64) -> f64 {
    if n <= 26 {
        central_binomial_exact(n) * (2f64).powi(-(2 * n as i32 + 1))
    } else {
        (numerics::ln_fact(2 * n)
            - 2.0 * numerics::ln_fact(n)
            - (2 * n + 1) as f64 * LN_2)
            .exp()
    }
}

/// [`counting_test_error`] as an exact rational, for zero-tolerance
/// comparison against record enumeration.
pub fn counting_test_error_exact(n: u64) -> BigRational {
    let numerator = num_integer::binomial(BigInt::from(2 * n), BigInt::from(n));
    let denominator = BigInt::from(1u8) << (2 * n + 1) as usize;
    BigRational::new(numerator, denominator)
}

/// Large-`n` asymptote of the counting-test error: `1 / (2 sqrt(pi n))`.
pub fn counting_test_asymptote(n: u64) -> f64 {
    1.0 / (2.0 * (PI * n as f64).sqrt())
}

/// Identification error for distinguishable qubits prepared along z versus
/// along x: the exact pure-state value at overlap `2^-n`, and its
/// small-overlap approximation `2^-(2n+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistinguishableError {
    pub n: u64,
    /// `pure_state_error(2^-n)`, flushed to zero once `2^-2n` underflows.
    pub exact: f64,
    /// Leading-order approximation `2^-(2n+2)`.
    pub approx: f64,
    /// `log10` of the exact value, computed in the log domain so it survives
    /// underflow of the linear value.
    pub exact_log10: f64,
    pub approx_log10: f64,
}

pub fn distinguishable_particles_error(n: u64) -> DistinguishableError {
    let s = (-(n as f64)).exp2();
    let exact = pure_state_error(s).expect("2^-n lies in [0, 1]");
    let approx = (-(2.0 * n as f64 + 2.0)).exp2();
    let exact_log10 = if s > LOG_FORM_THRESHOLD {
        exact.log10()
    } else {
        // exact = s^2/4 to within a relative error below 1e-16 here.
        -((2 * n + 2) as f64) * LOG10_2
    };
    DistinguishableError {
        n,
        exact,
        approx,
        exact_log10,
        approx_log10: -((2 * n + 2) as f64) * LOG10_2,
    }
}

/// Identification error for the two-mode photon description.
///
/// Odd `n`: the states are exactly orthogonal and the error vanishes. Even
/// `n`: the exact value feeds the reference closed-form overlap
/// [`fock::fock_overlap_closed_form`] through [`pure_state_error`], and the
/// asymptote is `(2 pi e)^-2 (e/n)^(2n+2)`. Both are reported with `log10`
/// companions computed in the log domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonError {
    pub n: u64,
    pub exact: f64,
    /// `None` exactly when the error is zero (odd `n`).
    pub exact_log10: Option<f64>,
    /// `None` for odd `n`, where no asymptote applies.
    pub asymptote: Option<f64>,
    pub asymptote_log10: Option<f64>,
}

pub fn photon_error(n: u64) -> PhotonError {
    if n % 2 == 1 {
        return PhotonError {
            n,
            exact: 0.0,
            exact_log10: None,
            asymptote: None,
            asymptote_log10: None,
        };
    }
    let s = fock::fock_overlap_closed_form(n as usize);
    let log10_s =
        fock::fock_overlap_closed_form_log10(n as usize).expect("even n has a finite log");
    let exact = pure_state_error(s).expect("closed form lies in [0, 1]");
    let exact_log10 = if s > LOG_FORM_THRESHOLD {
        exact.log10()
    } else {
        2.0 * log10_s - 2.0 * LOG10_2
    };
    let two_pi_e = 2.0 * PI * std::f64::consts::E;
    let ln_asymptote = -2.0 * two_pi_e.ln() + (2 * n + 2) as f64 * (1.0 - (n as f64).ln());
    PhotonError {
        n,
        exact,
        exact_log10: Some(exact_log10),
        asymptote: Some(ln_asymptote.exp()),
        asymptote_log10: Some(ln_asymptote / LN_10),
    }
}

/// Equal-prior Bayes error of deciding between two count distributions:
/// `(1/2) sum_k min(P_A(k), P_B(k))`.
pub fn bayes_error_from_counts(
    dist_a: &[f64],
    dist_b: &[f64],
) -> Result<f64, DiscriminationError> {
    if dist_a.len() != dist_b.len() {
        return Err(DiscriminationError::CountMismatch(
            dist_a.len(),
            dist_b.len(),
        ));
    }
    Ok(0.5
        * dist_a
            .iter()
            .zip(dist_b)
            .map(|(a, b)| a.min(*b))
            .sum::<f64>())
}

/// Exact identification error when `particles` members of either preparation
/// are measured individually along `axis` and only the up-count is used.
///
/// Ties in the underlying Bayes rule are broken toward the first hypothesis;
/// the tie-break cannot change the error value.
pub fn preparation_discrimination(
    prep_a: &Preparation,
    prep_b: &Preparation,
    axis: BlochAxis,
    particles: usize,
) -> Result<DiscriminationResult, DiscriminationError> {
    let dist_a = prep_a.up_count_distribution(axis, particles)?;
    let dist_b = prep_b.up_count_distribution(axis, particles)?;
    let p_error = bayes_error_from_counts(&dist_a, &dist_b)?;
    DiscriminationResult::new(
        p_error,
        Method::Counting,
        None,
        format!("particles={particles}"),
    )
}
