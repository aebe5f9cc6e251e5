//! Dense complex linear algebra: tensor products, Hermitian eigenvalues via
//! cyclic Jacobi rotations, trace norms, inner products, and the state-vector
//! and density-operator types every other module builds on.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so concurrent reads are safe.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Index, IndexMut};
use std::sync::Arc;
use thiserror::Error;

/// Relative tolerance of the Hermiticity predicate: a matrix `A` counts as
/// Hermitian when `max |A[i][j] - conj(A[j][i])| <= 1e-12 * max|A|`.
pub const HERMITICITY_REL_TOL: f64 = 1e-12;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below
/// `1e-13 * ||A||_F`.
pub const JACOBI_OFF_DIAG_REL_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps; convergence is quadratic, so this is generous.
pub const MAX_JACOBI_SWEEPS: usize = 100;
/// Normalized states must satisfy `| <psi|psi> - 1 | <= 1e-10`.
pub const STATE_NORM_TOL: f64 = 1e-10;
/// Density operators must have trace within this distance of 1.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;
/// Density-operator eigenvalues may undershoot zero by at most this much.
pub const DENSITY_PSD_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("entry count {entries} is not a perfect square of dimension {dim}")]
    BadShape { dim: usize, entries: usize },
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("entries must be finite (no NaN or infinity)")]
    NonFinite,
    #[error("not Hermitian: max |A[i][j] - conj(A[j][i])| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("state is not normalized: |<psi|psi> - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },
    #[error("not positive semidefinite: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("trace must be 1: got {trace:.12}")]
    InvalidTrace { trace: f64 },
    #[error("mixture weights must be nonnegative and sum to 1: sum = {sum}")]
    InvalidWeights { sum: f64 },
    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// An ordered orthonormal basis, identified by its labels.
///
/// Structured variants generate their labels on demand so that large tensor
/// products (up to 2^24 amplitudes) do not have to materialize millions of
/// strings. Two bases are equal exactly when their label sequences are equal.
#[derive(Debug, Clone)]
pub enum Basis {
    /// Computational basis of `n` qubits. `label(i)` is the `n`-bit binary
    /// string of `i`; the first tensor factor is the most significant bit,
    /// matching the row-major index convention `idx = i_A * dim_B + i_B`.
    Qubits(u32),
    /// Two-mode Fock sector with a fixed total quantum number `T`.
    /// `label(m)` is `"|m,T-m>"` with `m` the mode-a occupation, ascending.
    TwoModeFock(u32),
    /// Arbitrary explicit labels.
    Labeled(Arc<Vec<String>>),
}

impl Basis {
    pub fn labeled<S: Into<String>>(labels: Vec<S>) -> Self {
        Basis::Labeled(Arc::new(labels.into_iter().map(Into::into).collect()))
    }

    pub fn dim(&self) -> usize {
        match self {
            Basis::Qubits(n) => 1usize << n,
            Basis::TwoModeFock(total) => *total as usize + 1,
            Basis::Labeled(labels) => labels.len(),
        }
    }

    pub fn label(&self, index: usize) -> String {
        match self {
            Basis::Qubits(n) => {
                let n = *n as usize;
                (0..n)
                    .map(|bit| {
                        if index >> (n - 1 - bit) & 1 == 1 {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect()
            }
            Basis::TwoModeFock(total) => format!("|{},{}>", index, *total as usize - index),
            Basis::Labeled(labels) => labels[index].clone(),
        }
    }

    /// Materializes every label. Intended for serialization of small bases.
    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    /// Basis of the tensor product, A-major: `label(i*dim_B + j) = label_A(i) + label_B(j)`.
    pub fn tensor(&self, other: &Basis) -> Basis {
        match (self, other) {
            (Basis::Qubits(a), Basis::Qubits(b)) => Basis::Qubits(a + b),
            _ => {
                let mut labels = Vec::with_capacity(self.dim() * other.dim());
                for i in 0..self.dim() {
                    let left = self.label(i);
                    for j in 0..other.dim() {
                        labels.push(format!("{left}{}", other.label(j)));
                    }
                }
                Basis::labeled(labels)
            }
        }
    }
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Basis::Qubits(a), Basis::Qubits(b)) => a == b,
            (Basis::TwoModeFock(a), Basis::TwoModeFock(b)) => a == b,
            (Basis::Labeled(a), Basis::Labeled(b)) => a == b,
            _ => {
                self.dim() == other.dim()
                    && (0..self.dim()).all(|i| self.label(i) == other.label(i))
            }
        }
    }
}

impl Eq for Basis {}

fn check_same_basis(a: &Basis, b: &Basis) -> Result<(), LinalgError> {
    if a != b {
        return Err(LinalgError::BasisMismatch(format!(
            "left basis (dim {}) differs from right basis (dim {})",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// Dense square matrix of complex amplitudes, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(LinalgError::BadShape {
                dim,
                entries: entries.len(),
            });
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(ComplexMatrix { dim, entries })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with A-major indexing: `out[(i_a*db + i_b, j_a*db + j_b)] = A[(i_a,j_a)] * B[(i_b,j_b)]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for ia in 0..da {
            for ja in 0..da {
                let a = self[(ia, ja)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        out[(ia * db + ib, ja * db + jb)] = a * other[(ib, jb)];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn off_diagonal_frobenius(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    sum += self[(i, j)].norm_sqr();
                }
            }
        }
        sum.sqrt()
    }

    /// Largest entry-wise deviation from the adjoint, `max |A[i][j] - conj(A[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let dev = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// The Hermiticity predicate: deviation at most `1e-12 * max|A|`.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITICITY_REL_TOL * self.max_abs()
    }

    pub fn check_hermitian(&self) -> Result<(), LinalgError> {
        let deviation = self.hermitian_deviation();
        let tolerance = HERMITICITY_REL_TOL * self.max_abs();
        if deviation > tolerance {
            return Err(LinalgError::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(())
    }

    /// `(A + A†)/2`. Asymmetry below the Hermiticity tolerance is removed
    /// here; anything larger is rejected by [`ComplexMatrix::check_hermitian`].
    pub fn symmetrized(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in i..self.dim {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = avg;
                out[(j, i)] = avg.conj();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Complex amplitudes over a labeled finite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Basis,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>, basis: Basis) -> Result<Self, LinalgError> {
        if amplitudes.is_empty() {
            return Err(LinalgError::EmptyDimension);
        }
        if amplitudes.len() != basis.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: amplitudes.len(),
                right: basis.dim(),
            });
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(LinalgError::NonFinite);
        }
        Ok(StateVector { basis, amplitudes })
    }

    /// The basis vector `|index>`.
    pub fn basis_state(basis: Basis, index: usize) -> Result<Self, LinalgError> {
        let dim = basis.dim();
        if index >= dim {
            return Err(LinalgError::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { basis, amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= STATE_NORM_TOL
    }

    pub fn check_normalized(&self) -> Result<(), LinalgError> {
        let deviation = (self.norm_sqr() - 1.0).abs();
        if deviation > STATE_NORM_TOL {
            return Err(LinalgError::NotNormalized { deviation });
        }
        Ok(())
    }

    pub fn normalized(&self) -> Result<Self, LinalgError> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(LinalgError::ZeroVector);
        }
        let inv = Complex64::new(1.0 / n, 0.0);
        Ok(StateVector {
            basis: self.basis.clone(),
            amplitudes: self.amplitudes.iter().map(|z| z * inv).collect(),
        })
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        StateVector {
            basis: self.basis.clone(),
            amplitudes: self.amplitudes.iter().map(|z| z * factor).collect(),
        }
    }

    /// The projector `|psi><psi|`.
    pub fn outer(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        m
    }
}

/// `<psi|phi>` over identical bases.
pub fn overlap(psi: &StateVector, phi: &StateVector) -> Result<Complex64, LinalgError> {
    check_same_basis(psi.basis(), phi.basis())?;
    Ok(psi
        .amplitudes
        .iter()
        .zip(&phi.amplitudes)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Tensor product of states, A-major: `out[i_a*dim_b + i_b] = a[i_a] * b[i_b]`.
pub fn tensor_states(a: &StateVector, b: &StateVector) -> StateVector {
    let basis = a.basis.tensor(&b.basis);
    let mut amplitudes = Vec::with_capacity(a.dim() * b.dim());
    for &za in &a.amplitudes {
        for &zb in &b.amplitudes {
            amplitudes.push(za * zb);
        }
    }
    StateVector { basis, amplitudes }
}

/// Tensor (Kronecker) product of operators, same index convention as
/// [`tensor_states`].
pub fn tensor_matrices(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
///
/// The matrix must pass the Hermiticity predicate; sub-tolerance asymmetry is
/// symmetrized away before iterating. Sweeps continue until the off-diagonal
/// Frobenius norm falls below `1e-13 * ||A||_F` or 100 sweeps elapse.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    a.check_hermitian()?;
    let n = a.dim();
    let mut m = a.symmetrized();
    let tol = JACOBI_OFF_DIAG_REL_TOL * m.frobenius_norm();
    let mut sweeps = 0;
    while sweeps < MAX_JACOBI_SWEEPS && m.off_diagonal_frobenius() > tol {
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut m, p, q);
            }
        }
        sweeps += 1;
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    eigs.sort_by(f64::total_cmp);
    Ok(eigs)
}

/// One two-sided Jacobi rotation zeroing the (p, q) entry of a Hermitian
/// matrix. The complex phase of `A[p][q]` is absorbed into the rotation so
/// the plane problem reduces to the real symmetric case.
fn jacobi_rotate(m: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    // Smaller-magnitude root of t^2 + 2*tau*t - 1 = 0.
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = m.dim();
    for j in 0..n {
        if j == p || j == q {
            continue;
        }
        let mpj = m[(p, j)];
        let mqj = m[(q, j)];
        let new_pj = c * mpj - s * (phase * mqj);
        let new_qj = s * mpj + c * (phase * mqj);
        m[(p, j)] = new_pj;
        m[(j, p)] = new_pj.conj();
        m[(q, j)] = new_qj;
        m[(j, q)] = new_qj.conj();
    }
    m[(p, p)] = Complex64::new(app - t * r, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
}

/// Trace norm `Tr|A| = sum of |eigenvalues|` of a Hermitian matrix.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(hermitian_eigenvalues(a)?.iter().map(|l| l.abs()).sum())
}

/// Hermitian, positive-semidefinite, unit-trace operator over a labeled basis.
///
/// All three invariants are checked at construction; every constructor and
/// the serde deserializer go through [`DensityOperator::new`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityOperatorRepr", into = "DensityOperatorRepr")]
pub struct DensityOperator {
    basis: Basis,
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix, basis: Basis) -> Result<Self, LinalgError> {
        if matrix.dim() != basis.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: matrix.dim(),
                right: basis.dim(),
            });
        }
        matrix.check_hermitian()?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > DENSITY_TRACE_TOL || trace.im.abs() > DENSITY_TRACE_TOL {
            return Err(LinalgError::InvalidTrace { trace: trace.re });
        }
        let eigs = hermitian_eigenvalues(&matrix)?;
        let min_eigenvalue = eigs.first().copied().unwrap_or(0.0);
        if min_eigenvalue < -DENSITY_PSD_TOL {
            return Err(LinalgError::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(DensityOperator { basis, matrix })
    }

    /// `|psi><psi|` for a normalized state.
    pub fn from_pure(psi: &StateVector) -> Result<Self, LinalgError> {
        psi.check_normalized()?;
        Self::new(psi.outer(), psi.basis().clone())
    }

    /// Convex mixture `sum_i w_i |psi_i><psi_i|`.
    pub fn mixture(parts: &[(f64, StateVector)]) -> Result<Self, LinalgError> {
        let (first, _) = parts.split_first().ok_or(LinalgError::EmptyDimension)?;
        let sum: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (sum - 1.0).abs() > DENSITY_TRACE_TOL {
            return Err(LinalgError::InvalidWeights { sum });
        }
        for (_, psi) in parts {
            psi.check_normalized()?;
            check_same_basis(first.1.basis(), psi.basis())?;
        }
        let mut matrix = ComplexMatrix::zeros(first.1.dim());
        for (w, psi) in parts {
            matrix = matrix.add(&psi.outer().scaled(Complex64::new(*w, 0.0)))?;
        }
        Self::new(matrix, first.1.basis().clone())
    }

    /// The maximally mixed state `1/d`.
    pub fn maximally_mixed(basis: Basis) -> Self {
        let d = basis.dim();
        let matrix = ComplexMatrix::identity(d).scaled(Complex64::new(1.0 / d as f64, 0.0));
        DensityOperator { basis, matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `rho - sigma` with a basis check; the difference is Hermitian but no
    /// longer a density operator, so it is returned as a raw matrix.
    pub fn diff(&self, other: &Self) -> Result<ComplexMatrix, LinalgError> {
        check_same_basis(&self.basis, &other.basis)?;
        self.matrix.sub(&other.matrix)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).expect("validated at construction")
    }
}

#[derive(Serialize, Deserialize)]
struct DensityOperatorRepr {
    dim: usize,
    basis_labels: Vec<String>,
    /// Row-major `[re, im]` pairs.
    entries: Vec<[f64; 2]>,
}

impl From<DensityOperator> for DensityOperatorRepr {
    fn from(rho: DensityOperator) -> Self {
        DensityOperatorRepr {
            dim: rho.dim(),
            basis_labels: rho.basis.labels(),
            entries: rho.matrix.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<DensityOperatorRepr> for DensityOperator {
    type Error = LinalgError;

    fn try_from(repr: DensityOperatorRepr) -> Result<Self, LinalgError> {
        if repr.basis_labels.len() != repr.dim {
            return Err(LinalgError::DimensionMismatch {
                left: repr.basis_labels.len(),
                right: repr.dim,
            });
        }
        let entries = repr
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        let matrix = ComplexMatrix::from_entries(repr.dim, entries)?;
        DensityOperator::new(matrix, Basis::labeled(repr.basis_labels))
    }
}
