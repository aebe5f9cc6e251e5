//! Seeded Monte Carlo simulation of per-particle measurement records and
//! empirical identification-error estimation.
//!
//! Every trial draws from its own counter-based random stream, derived from
//! `(seed, trial index)`, and the error count is an exact integer sum, so the
//! estimate is bit-identical for a given seed no matter how the trials are
//! scheduled across threads.

use crate::discrimination::{bayes_error_from_counts, DiscriminationError};
use crate::qubits::{BlochAxis, PrepKind, Preparation, QubitsError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Two-sided 95% normal quantile, for Wilson intervals.
const Z_95: f64 = 1.959963984540054;

#[derive(Debug, Error)]
pub enum McError {
    #[error("scenario must specify at least one trial")]
    NoTrials,
    #[error("particle count missing: both preparations are type-2, set `particles`")]
    MissingParticleCount,
    #[error("particle count {given} conflicts with type-1 totals {totals:?}")]
    ParticleCountMismatch { given: usize, totals: Vec<u64> },
    #[error(transparent)]
    Qubits(#[from] QubitsError),
    #[error(transparent)]
    Discrimination(#[from] DiscriminationError),
}

/// A reproducible identification experiment: two candidate preparations, a
/// measurement axis, the number of particles per record, a trial budget, and
/// the stream seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub prep_a: Preparation,
    pub prep_b: Preparation,
    pub axis: BlochAxis,
    /// Particles measured per record. May be omitted when at least one
    /// preparation is type-1, in which case the type-1 total is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particles: Option<usize>,
    pub trials: u64,
    pub seed: u64,
}

impl Scenario {
    /// The per-record particle count, validated against any type-1 totals.
    pub fn resolved_particles(&self) -> Result<usize, McError> {
        let totals: Vec<u64> = [&self.prep_a, &self.prep_b]
            .iter()
            .filter_map(|p| p.total_count())
            .collect();
        if totals.len() == 2 && totals[0] != totals[1] {
            return Err(McError::ParticleCountMismatch {
                given: totals[0] as usize,
                totals,
            });
        }
        match (self.particles, totals.first()) {
            (Some(given), None) => Ok(given),
            (Some(given), Some(&total)) => {
                if given as u64 == total {
                    Ok(given)
                } else {
                    Err(McError::ParticleCountMismatch { given, totals })
                }
            }
            (None, Some(&total)) => Ok(total as usize),
            (None, None) => Err(McError::MissingParticleCount),
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        if self.trials == 0 {
            return Err(McError::NoTrials);
        }
        self.resolved_particles().map(|_| ())
    }
}

/// An empirical error rate with its sampling uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCi {
    pub p_hat: f64,
    pub stderr: f64,
    /// 95% Wilson score interval.
    pub ci95: (f64, f64),
    pub trials: u64,
}

/// The JSON record emitted for a completed simulation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRecord {
    pub scenario_hash: String,
    pub p_hat: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
    pub trials: u64,
    pub seed: u64,
}

impl SimulationRecord {
    pub fn new(scenario: &Scenario, estimate: EstimateWithCi) -> Self {
        SimulationRecord {
            scenario_hash: scenario_hash(scenario),
            p_hat: estimate.p_hat,
            stderr: estimate.stderr,
            ci95: estimate.ci95,
            trials: estimate.trials,
            seed: scenario.seed,
        }
    }
}

/// First 16 hex digits of the SHA-256 of the scenario's canonical JSON form.
pub fn scenario_hash(scenario: &Scenario) -> String {
    let json = serde_json::to_string(scenario).expect("scenario serializes");
    let digest = Sha256::digest(json.as_bytes());
    hex::encode(digest)[..16].to_string()
}

/// The random stream of one trial: same key for every trial, the trial index
/// as the stream counter.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Per-component up-probabilities with the drawing rule baked in, so the hot
/// sampling loop does no state algebra.
struct PreparedSampler {
    kind: PrepKind,
    /// Type-1: (up probability, exact count). Type-2: (up probability,
    /// cumulative component probability).
    components: Vec<(f64, f64)>,
    particles: usize,
}

fn prepare_sampler(prep: &Preparation, axis: BlochAxis, particles: usize) -> PreparedSampler {
    let mut components = Vec::with_capacity(prep.components().len());
    match prep.kind() {
        PrepKind::Type1 => {
            for comp in prep.components() {
                components.push((comp.eigenstate.up_probability(axis), comp.weight));
            }
        }
        PrepKind::Type2 => {
            let mut cumulative = 0.0;
            for (weight, comp) in prep.normalized_weights().iter().zip(prep.components()) {
                cumulative += weight;
                components.push((comp.eigenstate.up_probability(axis), cumulative));
            }
            if let Some(last) = components.last_mut() {
                last.1 = 1.0;
            }
        }
    }
    PreparedSampler {
        kind: prep.kind(),
        components,
        particles,
    }
}

impl PreparedSampler {
    /// Number of "up" outcomes in one fresh record.
    fn sample_up_count<R: Rng>(&self, rng: &mut R, slots: &mut Vec<usize>) -> usize {
        match self.kind {
            PrepKind::Type1 => {
                slots.clear();
                for (index, &(_, count)) in self.components.iter().enumerate() {
                    for _ in 0..count as u64 {
                        slots.push(index);
                    }
                }
                slots.shuffle(rng);
                slots
                    .iter()
                    .filter(|&&index| rng.random_bool(self.components[index].0))
                    .count()
            }
            PrepKind::Type2 => {
                let mut ups = 0;
                for _ in 0..self.particles {
                    let draw = rng.random::<f64>();
                    let component = self
                        .components
                        .iter()
                        .position(|&(_, cum)| draw < cum)
                        .unwrap_or(self.components.len() - 1);
                    if rng.random_bool(self.components[component].0) {
                        ups += 1;
                    }
                }
                ups
            }
        }
    }
}

/// One measurement record: `true` per "up" outcome, one entry per particle.
///
/// A type-1 run realizes a uniformly random interleaving of its exact counts
/// and then measures each particle along `axis`; a type-2 run draws each
/// particle's component i.i.d. first. Deterministic given the rng state.
pub fn sample_record<R: Rng>(
    prep: &Preparation,
    axis: BlochAxis,
    particles: usize,
    rng: &mut R,
) -> Result<Vec<bool>, McError> {
    if let Some(total) = prep.total_count() {
        if total as usize != particles {
            return Err(McError::ParticleCountMismatch {
                given: particles,
                totals: vec![total],
            });
        }
    }
    let record = match prep.kind() {
        PrepKind::Type1 => {
            let mut slots: Vec<&crate::qubits::PrepComponent> = Vec::with_capacity(particles);
            for comp in prep.components() {
                for _ in 0..comp.weight as u64 {
                    slots.push(comp);
                }
            }
            slots.shuffle(rng);
            slots
                .iter()
                .map(|comp| rng.random_bool(comp.eigenstate.up_probability(axis)))
                .collect()
        }
        PrepKind::Type2 => {
            let weights = prep.normalized_weights();
            let mut record = Vec::with_capacity(particles);
            for _ in 0..particles {
                let draw = rng.random::<f64>();
                let mut cumulative = 0.0;
                let mut chosen = prep.components().len() - 1;
                for (index, w) in weights.iter().enumerate() {
                    cumulative += w;
                    if draw < cumulative {
                        chosen = index;
                        break;
                    }
                }
                let q = prep.components()[chosen].eigenstate.up_probability(axis);
                record.push(rng.random_bool(q));
            }
            record
        }
    };
    Ok(record)
}

/// Runs the scenario: each trial picks a preparation by a fair coin, samples
/// a record from it, applies the Bayes count rule derived from the exact
/// analytic distributions (ties toward A), and scores an error when the
/// guess disagrees with the coin.
///
/// Trials execute in parallel; the aggregation is an exact integer sum over
/// per-trial streams, so the result is identical to a sequential run.
pub fn estimate_error(scenario: &Scenario) -> Result<EstimateWithCi, McError> {
    scenario.validate()?;
    let particles = scenario.resolved_particles()?;
    let dist_a = scenario
        .prep_a
        .up_count_distribution(scenario.axis, particles)?;
    let dist_b = scenario
        .prep_b
        .up_count_distribution(scenario.axis, particles)?;
    let decide_a: Vec<bool> = dist_a
        .iter()
        .zip(&dist_b)
        .map(|(a, b)| a >= b)
        .collect();
    let sampler_a = prepare_sampler(&scenario.prep_a, scenario.axis, particles);
    let sampler_b = prepare_sampler(&scenario.prep_b, scenario.axis, particles);

    let errors: u64 = (0..scenario.trials)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(particles),
            |slots, trial| {
                let mut rng = trial_rng(scenario.seed, trial);
                let truth_is_a = rng.random_bool(0.5);
                let sampler = if truth_is_a { &sampler_a } else { &sampler_b };
                let ups = sampler.sample_up_count(&mut rng, slots);
                u64::from(decide_a[ups] != truth_is_a)
            },
        )
        .sum();

    let trials = scenario.trials;
    let p_hat = errors as f64 / trials as f64;
    let stderr = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
    Ok(EstimateWithCi {
        p_hat,
        stderr,
        ci95: wilson_ci(p_hat, trials),
        trials,
    })
}

/// The analytic Bayes error the estimator converges to, for reference bands.
pub fn analytic_error(scenario: &Scenario) -> Result<f64, McError> {
    let particles = scenario.resolved_particles()?;
    let dist_a = scenario
        .prep_a
        .up_count_distribution(scenario.axis, particles)?;
    let dist_b = scenario
        .prep_b
        .up_count_distribution(scenario.axis, particles)?;
    Ok(bayes_error_from_counts(&dist_a, &dist_b)?)
}

/// 95% Wilson score interval for a binomial proportion.
pub fn wilson_ci(p_hat: f64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let z2 = Z_95 * Z_95;
    let denominator = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denominator;
    let half = Z_95 * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denominator;
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn counting_scenario(n: u64, trials: u64, seed: u64) -> Scenario {
        Scenario {
            prep_a: Preparation::balanced_type1(n, BlochAxis::Z).unwrap(),
            prep_b: Preparation::balanced_type2(BlochAxis::Z),
            axis: BlochAxis::Z,
            particles: None,
            trials,
            seed,
        }
    }

    #[test]
    fn type1_measured_along_its_own_axis_is_deterministic() {
        let prep = Preparation::balanced_type1(2, BlochAxis::Z).unwrap();
        let mut rng = trial_rng(99, 0);
        for _ in 0..100 {
            let record = sample_record(&prep, BlochAxis::Z, 4, &mut rng).unwrap();
            assert_eq!(record.len(), 4);
            assert_eq!(record.iter().filter(|&&up| up).count(), 2);
        }
    }

    #[test]
    fn sample_record_rejects_wrong_particle_count_for_type1() {
        let prep = Preparation::balanced_type1(2, BlochAxis::Z).unwrap();
        let mut rng = trial_rng(0, 0);
        assert!(matches!(
            sample_record(&prep, BlochAxis::Z, 5, &mut rng),
            Err(McError::ParticleCountMismatch { given: 5, .. })
        ));
    }

    #[test]
    fn type2_balanced_up_fraction_is_half() {
        let prep = Preparation::balanced_type2(BlochAxis::Z);
        let mut rng = trial_rng(7, 0);
        let draws = 1_000_000;
        let record = sample_record(&prep, BlochAxis::Z, draws, &mut rng).unwrap();
        let ups = record.iter().filter(|&&up| up).count() as f64;
        let sigma = (0.25 * draws as f64).sqrt();
        assert!((ups - draws as f64 / 2.0).abs() < 4.0 * sigma);
    }

    #[test]
    fn type1_x_recipe_counts_match_the_analytic_distribution() {
        let prep = Preparation::balanced_type1(1, BlochAxis::X).unwrap();
        let mut rng = trial_rng(11, 0);
        let mut histogram = [0u64; 3];
        let records = 40_000u64;
        for _ in 0..records {
            let record = sample_record(&prep, BlochAxis::Z, 2, &mut rng).unwrap();
            histogram[record.iter().filter(|&&up| up).count()] += 1;
        }
        let expected = [0.25, 0.5, 0.25];
        for (count, p) in histogram.iter().zip(expected) {
            let mean = records as f64 * p;
            let sigma = (records as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (*count as f64 - mean).abs() < 4.0 * sigma,
                "bin count {count} too far from {mean}"
            );
        }
    }

    #[test]
    fn estimate_is_deterministic_and_parallelism_independent() {
        let scenario = counting_scenario(2, 50_000, 12345);
        let first = estimate_error(&scenario).unwrap();
        let second = estimate_error(&scenario).unwrap();
        assert_eq!(first, second);

        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| estimate_error(&scenario).unwrap());
        assert_eq!(first, single);

        let other_seed = estimate_error(&counting_scenario(2, 50_000, 54321)).unwrap();
        assert_ne!(first.p_hat, other_seed.p_hat);
    }

    #[test]
    fn estimate_matches_analytic_error_within_four_sigma() {
        let scenario = counting_scenario(4, 200_000, 2024);
        let estimate = estimate_error(&scenario).unwrap();
        let p = analytic_error(&scenario).unwrap();
        assert_abs_diff_eq!(p, 35.0 / 256.0, epsilon = 1e-13);
        let sigma = (p * (1.0 - p) / scenario.trials as f64).sqrt();
        assert!(
            (estimate.p_hat - p).abs() <= 4.0 * sigma,
            "p_hat {} vs analytic {p}",
            estimate.p_hat
        );
        assert!(estimate.ci95.0 <= estimate.p_hat && estimate.p_hat <= estimate.ci95.1);
    }

    #[test]
    fn self_discrimination_hovers_at_half() {
        let prep = Preparation::balanced_type2(BlochAxis::Z);
        let scenario = Scenario {
            prep_a: prep.clone(),
            prep_b: prep,
            axis: BlochAxis::Z,
            particles: Some(4),
            trials: 100_000,
            seed: 8,
        };
        let estimate = estimate_error(&scenario).unwrap();
        let sigma = (0.25f64 / scenario.trials as f64).sqrt();
        assert!((estimate.p_hat - 0.5).abs() <= 4.0 * sigma);
    }

    #[test]
    fn balanced_type2_axes_are_indistinguishable_empirically() {
        let scenario = Scenario {
            prep_a: Preparation::balanced_type2(BlochAxis::Z),
            prep_b: Preparation::balanced_type2(BlochAxis::X),
            axis: BlochAxis::Z,
            particles: Some(6),
            trials: 100_000,
            seed: 31,
        };
        let estimate = estimate_error(&scenario).unwrap();
        let sigma = (0.25f64 / scenario.trials as f64).sqrt();
        assert!((estimate.p_hat - 0.5).abs() <= 4.0 * sigma);
    }

    #[test]
    fn single_trial_estimate_is_zero_or_one() {
        let scenario = counting_scenario(1, 1, 5);
        let estimate = estimate_error(&scenario).unwrap();
        assert!(estimate.p_hat == 0.0 || estimate.p_hat == 1.0);
        assert_eq!(estimate.trials, 1);
    }

    #[test]
    fn particle_resolution_rules() {
        let mut scenario = counting_scenario(2, 10, 0);
        assert_eq!(scenario.resolved_particles().unwrap(), 4);
        scenario.particles = Some(4);
        assert_eq!(scenario.resolved_particles().unwrap(), 4);
        scenario.particles = Some(5);
        assert!(matches!(
            scenario.resolved_particles(),
            Err(McError::ParticleCountMismatch { given: 5, .. })
        ));

        let both_type2 = Scenario {
            prep_a: Preparation::balanced_type2(BlochAxis::Z),
            prep_b: Preparation::balanced_type2(BlochAxis::X),
            axis: BlochAxis::Z,
            particles: None,
            trials: 10,
            seed: 0,
        };
        assert!(matches!(
            both_type2.resolved_particles(),
            Err(McError::MissingParticleCount)
        ));

        let zero_trials = Scenario {
            trials: 0,
            ..counting_scenario(1, 1, 0)
        };
        assert!(matches!(zero_trials.validate(), Err(McError::NoTrials)));
    }

    #[test]
    fn scenario_hash_is_stable_and_seed_sensitive() {
        let scenario = counting_scenario(4, 1_000_000, 1729);
        let h1 = scenario_hash(&scenario);
        let h2 = scenario_hash(&scenario);
        assert_eq!(h1, h2);
        assert_eq!(h1.len(), 16);
        let other = counting_scenario(4, 1_000_000, 1730);
        assert_ne!(h1, scenario_hash(&other));
    }

    #[test]
    fn scenario_json_round_trip() {
        let scenario = counting_scenario(4, 1_000_000, 1729);
        let json = serde_json::to_string_pretty(&scenario).unwrap();
        let back: Scenario = serde_json::from_str(&json).unwrap();
        assert_eq!(scenario, back);
        let record = SimulationRecord::new(
            &scenario,
            EstimateWithCi {
                p_hat: 0.136,
                stderr: 3.4e-4,
                ci95: (0.1353, 0.1367),
                trials: 1_000_000,
            },
        );
        let record_json = serde_json::to_string(&record).unwrap();
        assert!(record_json.contains("scenario_hash"));
    }

    #[test]
    fn wilson_interval_basics() {
        let (lo, hi) = wilson_ci(0.0, 100);
        assert!((0.0..1e-12).contains(&lo));
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_ci(0.5, 1_000_000);
        assert!(lo < 0.5 && 0.5 < hi);
        assert_abs_diff_eq!(hi - lo, 2.0 * Z_95 * 0.0005, epsilon = 1e-5);
    }
}
