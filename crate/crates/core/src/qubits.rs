//! Spin-1/2 ensembles prepared two rival ways.
//!
//! A *type-1* preparation fixes exact integer counts of each pure state; a
//! *type-2* preparation draws every member i.i.d. from a probability
//! distribution over pure states. Both are described here together with the
//! single-particle density operators they induce, the distinguishable-particle
//! product states of a type-1 run, and the exact statistics of per-particle
//! measurements along an arbitrary Bloch axis.

use crate::linalg::{self, Basis, DensityOperator, LinalgError, StateVector};
use crate::numerics;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Explicit product-state construction is capped at this many particles
/// (2^24 amplitudes); closed forms take over beyond.
pub const MAX_PRODUCT_PARTICLES: u64 = 24;

/// Type-2 probabilities must sum to 1 within this tolerance.
pub const PROBABILITY_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum QubitsError {
    #[error("axis vector must have nonzero length")]
    ZeroAxis,
    #[error("preparation must contain at least one component")]
    EmptyPreparation,
    #[error("type-1 weights must be nonnegative integers: got {0}")]
    NonIntegerCount(f64),
    #[error("type-1 preparation must contain at least one particle")]
    NoParticles,
    #[error("type-2 probabilities must be nonnegative and sum to 1 within 1e-12: sum = {0}")]
    InvalidProbabilities(f64),
    #[error("operation is defined for type-1 preparations only")]
    RequiresType1,
    #[error("explicit product construction capped at {max} particles, got {particles}")]
    DimensionTooLarge { particles: u64, max: u64 },
    #[error("ordering must be a permutation of 0..{expected}")]
    InvalidOrdering { expected: usize },
    #[error("draw count {draws} does not match the type-1 particle total {total}")]
    CountMismatch { draws: usize, total: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Unit vector on the Bloch sphere; the measurement/preparation direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochAxis {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochAxis {
    pub const Z: BlochAxis = BlochAxis {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };
    pub const X: BlochAxis = BlochAxis {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: BlochAxis = BlochAxis {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };

    /// Normalizes an arbitrary nonzero vector onto the sphere. Vectors that
    /// are already unit length (to a few ulps) pass through untouched, so
    /// normalization is idempotent and serialization round-trips exactly.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, QubitsError> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(QubitsError::ZeroAxis);
        }
        if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(BlochAxis { x, y, z });
        }
        Ok(BlochAxis {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &BlochAxis) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    fn polar_angles(&self) -> (f64, f64) {
        (self.z.clamp(-1.0, 1.0).acos(), self.y.atan2(self.x))
    }
}

impl TryFrom<[f64; 3]> for BlochAxis {
    type Error = QubitsError;
    fn try_from([x, y, z]: [f64; 3]) -> Result<Self, QubitsError> {
        BlochAxis::new(x, y, z)
    }
}

impl From<BlochAxis> for [f64; 3] {
    fn from(axis: BlochAxis) -> [f64; 3] {
        axis.components()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinSign {
    Up,
    Down,
}

/// Eigenstate of `n · sigma` with eigenvalue plus or minus one, expressed in
/// the sigma-z basis.
///
/// Phase conventions: up along z is `(1, 0)`, down along z is `(0, 1)`,
/// up along x is `(1, 1)/sqrt(2)`, down along x is `(-1, 1)/sqrt(2)`.
/// In general, with polar angles `(theta, phi)` of the axis,
/// up = `(cos(theta/2), e^{i phi} sin(theta/2))` and
/// down = `(-e^{-i phi} sin(theta/2), cos(theta/2))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinEigenstate {
    axis: BlochAxis,
    sign: SpinSign,
    state: StateVector,
}

impl SpinEigenstate {
    pub fn new(axis: BlochAxis, sign: SpinSign) -> Self {
        let (theta, phi) = axis.polar_angles();
        let (half_sin, half_cos) = (theta / 2.0).sin_cos();
        let amplitudes = match sign {
            SpinSign::Up => vec![
                Complex64::new(half_cos, 0.0),
                Complex64::from_polar(half_sin, phi),
            ],
            SpinSign::Down => vec![
                -Complex64::from_polar(half_sin, -phi),
                Complex64::new(half_cos, 0.0),
            ],
        };
        SpinEigenstate {
            axis,
            sign,
            state: StateVector::new(amplitudes, Basis::Qubits(1)).expect("two finite amplitudes"),
        }
    }

    pub fn up(axis: BlochAxis) -> Self {
        Self::new(axis, SpinSign::Up)
    }

    pub fn down(axis: BlochAxis) -> Self {
        Self::new(axis, SpinSign::Down)
    }

    pub fn axis(&self) -> BlochAxis {
        self.axis
    }

    pub fn sign(&self) -> SpinSign {
        self.sign
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// Probability of an "up" outcome when measured along `axis`.
    pub fn up_probability(&self, axis: BlochAxis) -> f64 {
        let up = SpinEigenstate::up(axis);
        linalg::overlap(up.state(), &self.state)
            .expect("single-qubit states share a basis")
            .norm_sqr()
            .clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrepKind {
    Type1,
    Type2,
}

/// One entry of an ensemble recipe: a pure single-particle state and its
/// weight (an exact count for type-1, a probability for type-2).
#[derive(Debug, Clone, PartialEq)]
pub struct PrepComponent {
    pub eigenstate: SpinEigenstate,
    pub weight: f64,
}

/// An ensemble recipe over pure single-particle spin states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PreparationRepr", into = "PreparationRepr")]
pub struct Preparation {
    kind: PrepKind,
    components: Vec<PrepComponent>,
}

impl Preparation {
    /// Exact-count recipe; weights are integer particle counts.
    pub fn type1(components: Vec<(SpinEigenstate, u64)>) -> Result<Self, QubitsError> {
        if components.is_empty() {
            return Err(QubitsError::EmptyPreparation);
        }
        let total: u64 = components.iter().map(|(_, n)| n).sum();
        if total == 0 {
            return Err(QubitsError::NoParticles);
        }
        Ok(Preparation {
            kind: PrepKind::Type1,
            components: components
                .into_iter()
                .map(|(eigenstate, n)| PrepComponent {
                    eigenstate,
                    weight: n as f64,
                })
                .collect(),
        })
    }

    /// I.i.d. recipe; weights are probabilities summing to one.
    pub fn type2(components: Vec<(SpinEigenstate, f64)>) -> Result<Self, QubitsError> {
        if components.is_empty() {
            return Err(QubitsError::EmptyPreparation);
        }
        let sum: f64 = components.iter().map(|(_, p)| p).sum();
        if components.iter().any(|(_, p)| *p < 0.0) || (sum - 1.0).abs() > PROBABILITY_SUM_TOL {
            return Err(QubitsError::InvalidProbabilities(sum));
        }
        Ok(Preparation {
            kind: PrepKind::Type2,
            components: components
                .into_iter()
                .map(|(eigenstate, p)| PrepComponent {
                    eigenstate,
                    weight: p,
                })
                .collect(),
        })
    }

    /// `n` up plus `n` down along `axis`, exact counts.
    pub fn balanced_type1(n: u64, axis: BlochAxis) -> Result<Self, QubitsError> {
        Self::type1(vec![
            (SpinEigenstate::up(axis), n),
            (SpinEigenstate::down(axis), n),
        ])
    }

    /// Fair coin between up and down along `axis`.
    pub fn balanced_type2(axis: BlochAxis) -> Self {
        Self::type2(vec![
            (SpinEigenstate::up(axis), 0.5),
            (SpinEigenstate::down(axis), 0.5),
        ])
        .expect("half/half is a valid distribution")
    }

    pub fn kind(&self) -> PrepKind {
        self.kind
    }

    pub fn components(&self) -> &[PrepComponent] {
        &self.components
    }

    /// Total particle count of a type-1 recipe; `None` for type-2.
    pub fn total_count(&self) -> Option<u64> {
        match self.kind {
            PrepKind::Type1 => Some(self.components.iter().map(|c| c.weight as u64).sum()),
            PrepKind::Type2 => None,
        }
    }

    /// Component weights normalized to sum to one.
    pub fn normalized_weights(&self) -> Vec<f64> {
        let sum: f64 = self.components.iter().map(|c| c.weight).sum();
        self.components.iter().map(|c| c.weight / sum).collect()
    }

    /// The single-particle density operator `sum_i w_i |u_i><u_i|` with
    /// normalized weights; for type-1 this uses `p_i = N_i / N`.
    pub fn single_particle_density(&self) -> DensityOperator {
        let weights = self.normalized_weights();
        let parts: Vec<(f64, StateVector)> = weights
            .into_iter()
            .zip(&self.components)
            .map(|(w, comp)| (w, comp.eigenstate.state().clone()))
            .collect();
        DensityOperator::mixture(&parts).expect("validated preparation yields a density operator")
    }

    /// The pure multiqubit product state of a type-1 run.
    ///
    /// The default ordering places all copies of component 0 first, then
    /// component 1, and so on; `ordering[j]` selects which default slot goes
    /// to position `j`. Construction is refused above
    /// [`MAX_PRODUCT_PARTICLES`] particles, before any allocation.
    pub fn product_state(&self, ordering: Option<&[usize]>) -> Result<StateVector, QubitsError> {
        if self.kind != PrepKind::Type1 {
            return Err(QubitsError::RequiresType1);
        }
        let total = self.total_count().expect("type-1 has counts");
        if total > MAX_PRODUCT_PARTICLES {
            return Err(QubitsError::DimensionTooLarge {
                particles: total,
                max: MAX_PRODUCT_PARTICLES,
            });
        }
        let mut default_slots: Vec<&StateVector> = Vec::with_capacity(total as usize);
        for comp in &self.components {
            for _ in 0..comp.weight as u64 {
                default_slots.push(comp.eigenstate.state());
            }
        }
        let slots: Vec<&StateVector> = match ordering {
            None => default_slots,
            Some(perm) => {
                let n = default_slots.len();
                let mut seen = vec![false; n];
                if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
                {
                    return Err(QubitsError::InvalidOrdering { expected: n });
                }
                perm.iter().map(|&i| default_slots[i]).collect()
            }
        };
        let mut iter = slots.into_iter();
        let first = iter.next().expect("at least one particle");
        let mut product = first.clone();
        for state in iter {
            product = linalg::tensor_states(&product, state);
        }
        Ok(product)
    }

    /// Exact probability mass function of the number of "up" outcomes when
    /// `draws` particles are measured individually along `axis`.
    ///
    /// Type-1 runs are the convolution of one fixed-count binomial per
    /// component (and `draws` must equal the particle total); type-2 runs are
    /// a single binomial with the mixture-averaged up probability.
    pub fn up_count_distribution(
        &self,
        axis: BlochAxis,
        draws: usize,
    ) -> Result<Vec<f64>, QubitsError> {
        match self.kind {
            PrepKind::Type1 => {
                let total = self.total_count().expect("type-1 has counts");
                if draws as u64 != total {
                    return Err(QubitsError::CountMismatch { draws, total });
                }
                let mut pmf = vec![1.0];
                for comp in &self.components {
                    let q = comp.eigenstate.up_probability(axis);
                    let comp_pmf = numerics::binomial_pmf(comp.weight as usize, q);
                    pmf = numerics::convolve(&pmf, &comp_pmf);
                }
                Ok(pmf)
            }
            PrepKind::Type2 => {
                let mixed_q: f64 = self
                    .normalized_weights()
                    .iter()
                    .zip(&self.components)
                    .map(|(w, comp)| w * comp.eigenstate.up_probability(axis))
                    .sum();
                Ok(numerics::binomial_pmf(draws, mixed_q))
            }
        }
    }
}

/// Overlap magnitude between the z-recipe and x-recipe distinguishable
/// product states with `n` up plus `n` down particles each: the product of
/// the `2n` single-particle overlap magnitudes (each `1/sqrt(2)`), i.e.
/// `2^-n`. Agrees with the explicit tensor construction wherever that is
/// feasible.
pub fn distinguishable_overlap(n: u64) -> f64 {
    let up = linalg::overlap(
        SpinEigenstate::up(BlochAxis::Z).state(),
        SpinEigenstate::up(BlochAxis::X).state(),
    )
    .expect("single-qubit basis")
    .norm();
    let down = linalg::overlap(
        SpinEigenstate::down(BlochAxis::Z).state(),
        SpinEigenstate::down(BlochAxis::X).state(),
    )
    .expect("single-qubit basis")
    .norm();
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= up;
        acc *= down;
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct ComponentRepr {
    axis: [f64; 3],
    sign: SpinSign,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct PreparationRepr {
    kind: PrepKind,
    components: Vec<ComponentRepr>,
}

impl From<Preparation> for PreparationRepr {
    fn from(prep: Preparation) -> Self {
        PreparationRepr {
            kind: prep.kind,
            components: prep
                .components
                .iter()
                .map(|comp| ComponentRepr {
                    axis: comp.eigenstate.axis().components(),
                    sign: comp.eigenstate.sign(),
                    weight: comp.weight,
                })
                .collect(),
        }
    }
}

impl TryFrom<PreparationRepr> for Preparation {
    type Error = QubitsError;

    fn try_from(repr: PreparationRepr) -> Result<Self, QubitsError> {
        let components: Vec<(SpinEigenstate, f64)> = repr
            .components
            .into_iter()
            .map(|comp| {
                let [x, y, z] = comp.axis;
                Ok((
                    SpinEigenstate::new(BlochAxis::new(x, y, z)?, comp.sign),
                    comp.weight,
                ))
            })
            .collect::<Result<_, QubitsError>>()?;
        match repr.kind {
            PrepKind::Type2 => Preparation::type2(components),
            PrepKind::Type1 => {
                let counts = components
                    .into_iter()
                    .map(|(state, w)| {
                        if w < 0.0 || w.fract() != 0.0 || w > (1u64 << 53) as f64 {
                            Err(QubitsError::NonIntegerCount(w))
                        } else {
                            Ok((state, w as u64))
                        }
                    })
                    .collect::<Result<Vec<_>, QubitsError>>()?;
                Preparation::type1(counts)
            }
        }
    }
}
