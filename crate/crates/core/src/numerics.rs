//! Log-domain factorial and binomial helpers shared by the state builders
//! and the error-probability formulas.

use statrs::function::factorial::ln_factorial;

/// Largest `n` with `n!` exactly representable in both `u64` and `f64`.
pub(crate) const MAX_EXACT_FACTORIAL: u64 = 20;

pub(crate) fn ln_fact(n: u64) -> f64 {
    ln_factorial(n)
}

pub(crate) fn log10_fact(n: u64) -> f64 {
    ln_factorial(n) / std::f64::consts::LN_10
}

/// `n!` as an exact integer-valued `f64`, for `n <= 20`.
pub(crate) fn fact_exact(n: u64) -> f64 {
    debug_assert!(n <= MAX_EXACT_FACTORIAL);
    let mut acc = 1u64;
    for k in 2..=n {
        acc *= k;
    }
    acc as f64
}

/// `sqrt(p! * q!)`, exact-integer arithmetic when both arguments are small
/// and log-domain otherwise.
pub(crate) fn sqrt_factorial_product(p: u64, q: u64) -> f64 {
    if p <= MAX_EXACT_FACTORIAL && q <= MAX_EXACT_FACTORIAL {
        (fact_exact(p) * fact_exact(q)).sqrt()
    } else {
        (0.5 * (ln_fact(p) + ln_fact(q))).exp()
    }
}

pub(crate) fn ln_binomial(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    ln_fact(n) - ln_fact(k) - ln_fact(n - k)
}

/// Probability mass function of Binomial(n, p) over 0..=n, each term
/// evaluated in the log domain so that large `n` cannot underflow the
/// recurrence. `p` outside [0, 1] by a rounding error is clamped.
pub(crate) fn binomial_pmf(n: usize, p: f64) -> Vec<f64> {
    let p = p.clamp(0.0, 1.0);
    let mut pmf = vec![0.0; n + 1];
    if p == 0.0 {
        pmf[0] = 1.0;
        return pmf;
    }
    if p == 1.0 {
        pmf[n] = 1.0;
        return pmf;
    }
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    for (k, slot) in pmf.iter_mut().enumerate() {
        let ln_term =
            ln_binomial(n as u64, k as u64) + k as f64 * ln_p + (n - k) as f64 * ln_q;
        *slot = ln_term.exp();
    }
    pmf
}

/// Discrete convolution of two probability mass functions.
pub(crate) fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}
