//! Quantum state discrimination toolkit.
//!
//! The crate models two rival recipes for preparing an ensemble of spin-1/2
//! particles — exact per-state counts ("type-1") versus i.i.d. draws from a
//! probability distribution ("type-2") — and quantifies how well an observer
//! can tell the resulting states apart:
//!
//! - [`linalg`] — dense complex matrices, Hermitian eigenvalues (cyclic
//!   Jacobi), trace norms, tensor products, state vectors and density
//!   operators;
//! - [`qubits`] — Bloch-axis spin eigenstates, preparations, multiqubit
//!   product states, and measurement count statistics;
//! - [`fock`] — two-mode bosonic states built from creation-operator
//!   polynomials, including twin Fock states and their 45°-rotated
//!   counterparts;
//! - [`discrimination`] — minimum-error (Helstrom) probabilities, pure-state
//!   error, the counting test, and the closed-form/asymptotic error laws;
//! - [`mc`] — reproducible, seeded Monte Carlo estimates of identification
//!   error rates with Wilson confidence intervals;
//! - [`oracle`] — brute-force reference implementations used to validate the
//!   production paths.

#![forbid(unsafe_code)]

pub mod discrimination;
pub mod fock;
pub mod linalg;
pub mod mc;
mod numerics;
pub mod oracle;
pub mod qubits;

pub use discrimination::{DiscriminationResult, Method};
pub use linalg::{Basis, ComplexMatrix, DensityOperator, StateVector};
pub use mc::{EstimateWithCi, Scenario, SimulationRecord};
pub use qubits::{BlochAxis, Preparation, PrepKind, SpinEigenstate, SpinSign};
