//! The reproduction report: every reference quantity the toolkit computes is
//! re-derived and compared against its expected value at a pinned tolerance.
//!
//! Row ids group by acceptance criterion (R01..R11); the command exits
//! nonzero if any row fails.

use anyhow::Result;
use num_traits::ToPrimitive;
use qsd_core::discrimination::{
    counting_test_error, counting_test_error_exact, distinguishable_particles_error,
    helstrom_error, photon_error, pure_state_error,
};
use qsd_core::fock::{
    self, fock_overlap_closed_form, rotated_twin_fock, twin_fock, two_photon_mixtures,
};
use qsd_core::linalg::{overlap, trace_norm, DensityOperator};
use qsd_core::mc::{estimate_error, Scenario};
use qsd_core::oracle;
use qsd_core::qubits::{distinguishable_overlap, BlochAxis, Preparation};
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::report::ReportRow;

/// The bundled counting-test scenario: exact 4+4 counts versus fair draws,
/// eight particles per record, one million trials, fixed seed.
pub fn bundled_counting_scenario() -> Scenario {
    Scenario {
        prep_a: Preparation::balanced_type1(4, BlochAxis::Z).expect("valid recipe"),
        prep_b: Preparation::balanced_type2(BlochAxis::Z),
        axis: BlochAxis::Z,
        particles: Some(8),
        trials: 1_000_000,
        seed: 1729,
    }
}

pub fn all_rows() -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();

    // R01: the two-photon mixtures.
    {
        let (rho1, rho2) = two_photon_mixtures();
        let result = helstrom_error(&rho1, &rho2)?;
        rows.push(ReportRow::new(
            "R01a",
            "two-photon mixtures: minimum-error probability",
            result.p_error,
            0.375,
            "abs<=1e-12",
            (result.p_error - 0.375).abs() <= 1e-12,
        ));
        let tn = trace_norm(&rho1.diff(&rho2)?)?;
        rows.push(ReportRow::new(
            "R01b",
            "two-photon mixtures: trace norm of the difference",
            tn,
            0.5,
            "abs<=1e-12",
            (tn - 0.5).abs() <= 1e-12,
        ));
    }

    // R02: counting-test error, exact rationals against record enumeration.
    {
        let mut all_equal = true;
        let mut max_dev = 0.0f64;
        for n in 1..=8u64 {
            let closed = counting_test_error_exact(n);
            let brute = oracle::brute_force_counting_error(n as usize);
            if closed != brute {
                all_equal = false;
            }
            let dev = (closed.to_f64().unwrap() - brute.to_f64().unwrap()).abs();
            max_dev = max_dev.max(dev);
        }
        rows.push(ReportRow::new(
            "R02a",
            "counting-test error equals record enumeration (n=1..8; exact rationals)",
            max_dev,
            0.0,
            "exact",
            all_equal,
        ));
        let max_dyadic_dev = [(1u64, 0.25), (2, 0.1875), (4, 35.0 / 256.0)]
            .into_iter()
            .map(|(n, want)| (counting_test_error(n) - want).abs())
            .fold(0.0f64, f64::max);
        rows.push(ReportRow::new(
            "R02b",
            "counting-test error at n=1;2;4 equals 1/4; 3/16; 35/256",
            max_dyadic_dev,
            0.0,
            "exact",
            max_dyadic_dev == 0.0,
        ));
    }

    // R03: the counting-test asymptote.
    {
        let gap = |n: u64| (counting_test_error(n) * 2.0 * (std::f64::consts::PI * n as f64).sqrt()
            - 1.0)
            .abs();
        let g1000 = gap(1000);
        rows.push(ReportRow::new(
            "R03a",
            "counting asymptote: |error * 2 sqrt(pi n) - 1| at n=1000",
            g1000,
            0.0,
            "abs<1e-3",
            g1000 < 1e-3,
        ));
        let (g10, g100) = (gap(10), gap(100));
        rows.push(ReportRow::new(
            "R03b",
            "counting asymptote gap at n=1000 (must sit below the n=100 and n=10 gaps)",
            g1000,
            g100,
            "strictly decreasing",
            g10 > g100 && g100 > g1000,
        ));
    }

    // R04: distinguishable-qubit overlap.
    {
        let mut max_dev = 0.0f64;
        for n in 1..=5u64 {
            let z = Preparation::balanced_type1(n, BlochAxis::Z)?.product_state(None)?;
            let x = Preparation::balanced_type1(n, BlochAxis::X)?.product_state(None)?;
            let dev = (overlap(&z, &x)?.norm() - (-(n as f64)).exp2()).abs();
            max_dev = max_dev.max(dev);
        }
        rows.push(ReportRow::new(
            "R04a",
            "z-recipe vs x-recipe product overlap equals 2^-n (tensor build; n<=5)",
            max_dev,
            0.0,
            "abs<=1e-12",
            max_dev <= 1e-12,
        ));
        let got = distinguishable_overlap(20);
        let want = (-20.0f64).exp2();
        rows.push(ReportRow::new(
            "R04b",
            "single-particle product formula at n=20",
            got,
            want,
            "rel<=1e-12",
            ((got - want) / want).abs() <= 1e-12,
        ));
    }

    // R05: twin-Fock overlaps, expansion against the reference closed form.
    {
        let mut max_rel = 0.0f64;
        for n in (2..=30usize).step_by(2) {
            let expansion = rotated_twin_fock(n)?.overlap(&twin_fock(n))?.norm();
            let closed = fock_overlap_closed_form(n);
            max_rel = max_rel.max((expansion - closed).abs() / closed);
        }
        rows.push(ReportRow::new(
            "R05a",
            "even-n twin-Fock overlap: expansion vs closed form 1/(2^n ((n/2)!)^2)",
            max_rel,
            0.0,
            "rel<=1e-9",
            max_rel <= 1e-9,
        ));
        let mut max_odd = 0.0f64;
        for n in (1..=31usize).step_by(2) {
            max_odd = max_odd.max(rotated_twin_fock(n)?.overlap(&twin_fock(n))?.norm());
        }
        rows.push(ReportRow::new(
            "R05b",
            "odd-n twin-Fock overlap vanishes (n<=31)",
            max_odd,
            0.0,
            "abs<=1e-12",
            max_odd <= 1e-12,
        ));
    }

    // R06: pure-state error formula against the optimal measurement.
    {
        let mut rng = StdRng::seed_from_u64(602_016);
        let mut max_dev = 0.0f64;
        for i in 0..100usize {
            let dim = 2 + (i % 15);
            let psi = oracle::random_pure_state(dim, &mut rng);
            let phi = oracle::random_pure_state(dim, &mut rng);
            let s = overlap(&psi, &phi)?.norm().min(1.0);
            let formula = pure_state_error(s)?;
            let optimal = helstrom_error(
                &DensityOperator::from_pure(&psi)?,
                &DensityOperator::from_pure(&phi)?,
            )?
            .p_error;
            max_dev = max_dev.max((formula - optimal).abs());
        }
        rows.push(ReportRow::new(
            "R06",
            "pure-state error matches the optimal measurement on 100 random pairs (dims 2-16)",
            max_dev,
            0.0,
            "abs<=1e-10",
            max_dev <= 1e-10,
        ));
    }

    // R07: distinguishable-qubit error law.
    {
        let mut worst_ratio = 0.0f64;
        for n in 2..=20u64 {
            let d = distinguishable_particles_error(n);
            let rel = (d.exact - d.approx).abs() / d.approx;
            worst_ratio = worst_ratio.max(rel * (2.0f64).powi(2 * n as i32));
        }
        rows.push(ReportRow::new(
            "R07a",
            "distinguishable-qubit error: correction term stays below 4^-n (n=2..20)",
            worst_ratio,
            1.0,
            "ratio<1",
            worst_ratio < 1.0,
        ));
        let d1 = distinguishable_particles_error(1);
        rows.push(ReportRow::new(
            "R07b",
            "distinguishable-qubit error at n=1: exact 0.06699 vs approx 0.0625",
            d1.exact,
            0.06699,
            "abs<=1e-5",
            (d1.exact - 0.06699).abs() <= 1e-5 && d1.approx == 0.0625,
        ));
    }

    // R08: photon error law.
    {
        let mut max_gap = 0.0f64;
        for n in [10u64, 20, 30] {
            let p = photon_error(n);
            let gap = (p.exact_log10.unwrap() - p.asymptote_log10.unwrap()).abs();
            max_gap = max_gap.max(gap);
        }
        rows.push(ReportRow::new(
            "R08a",
            "photon error: log10 exact vs log10 asymptote (even n in {10;20;30})",
            max_gap,
            0.0,
            "abs<0.1",
            max_gap < 0.1,
        ));
        let max_odd = (1..=31u64)
            .step_by(2)
            .map(|n| photon_error(n).exact)
            .fold(0.0f64, f64::max);
        rows.push(ReportRow::new(
            "R08b",
            "photon error vanishes exactly for odd n",
            max_odd,
            0.0,
            "exact",
            max_odd == 0.0,
        ));
    }

    // R09: the balanced type-2 recipes are one state.
    {
        let rho_z = Preparation::balanced_type2(BlochAxis::Z).single_particle_density();
        let rho_x = Preparation::balanced_type2(BlochAxis::X).single_particle_density();
        let tn = trace_norm(&rho_z.diff(&rho_x)?)?;
        rows.push(ReportRow::new(
            "R09a",
            "balanced type-2 densities coincide across axes (trace norm)",
            tn,
            0.0,
            "abs<1e-14",
            tn < 1e-14,
        ));
        let p = helstrom_error(&rho_z, &rho_x)?.p_error;
        rows.push(ReportRow::new(
            "R09b",
            "balanced type-2 recipes: minimum-error probability is 1/2",
            p,
            0.5,
            "abs<=1e-14",
            (p - 0.5).abs() <= 1e-14,
        ));
    }

    // R10: the Monte Carlo estimator.
    {
        let scenario = bundled_counting_scenario();
        let estimate = estimate_error(&scenario)?;
        let p = 35.0 / 256.0;
        let four_sigma = 4.0 * (p * (1.0 - p) / scenario.trials as f64).sqrt();
        rows.push(ReportRow::new(
            "R10a",
            "Monte Carlo counting test at n=4 (1e6 trials; fixed seed)",
            estimate.p_hat,
            p,
            "abs<=4sigma~1.374e-3",
            (estimate.p_hat - p).abs() <= four_sigma,
        ));
        let rerun = estimate_error(&scenario)?;
        rows.push(ReportRow::new(
            "R10b",
            "Monte Carlo rerun with the same seed is bit-identical",
            rerun.p_hat,
            estimate.p_hat,
            "exact",
            rerun == estimate,
        ));
    }

    // R11: dual numeric backends.
    {
        let mut max_rel = 0.0f64;
        for n in 1..=20usize {
            let float = rotated_twin_fock(n)?;
            let exact = fock::exact::rotated_twin_fock(n);
            for m in 0..=2 * n {
                let e = exact.amplitude_f64(m);
                let f = float.amplitude(m).re;
                if e != 0.0 {
                    max_rel = max_rel.max((f - e).abs() / e.abs());
                } else if f != 0.0 {
                    max_rel = f64::INFINITY;
                }
            }
        }
        for (da, db) in [(5u32, 5u32), (13, 7), (25, 15), (1, 39)] {
            let float_poly = fock::CreationPolynomial::linear(2.0, 3.0)
                .pow(da)
                .multiply(&fock::CreationPolynomial::linear(1.0, 1.0).pow(db));
            let exact_poly = fock::exact::ExactPolynomial::linear(2, 3)
                .pow(da)
                .multiply(&fock::exact::ExactPolynomial::linear(1, 1).pow(db));
            let float_state = fock::apply_to_vacuum(&float_poly)?;
            let exact_state = exact_poly.apply_to_vacuum()?;
            let norm = float_state.norm();
            for m in 0..float_state.dim() {
                let e = exact_state.amplitude_f64(m);
                let f = float_state.amplitude(m).re / norm;
                if e != 0.0 {
                    max_rel = max_rel.max((f - e).abs() / e.abs());
                }
            }
        }
        rows.push(ReportRow::new(
            "R11",
            "exact-rational and log-domain Fock amplitudes agree (total degree<=40)",
            max_rel,
            0.0,
            "rel<=1e-12",
            max_rel <= 1e-12,
        ));
    }

    Ok(rows)
}
