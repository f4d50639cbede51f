//! Dense complex linear algebra over qubit registers: pure states, density
//! matrices, operators, tensor products, partial traces, and the fidelity and
//! unitarity checks the rest of the crate is built on.
//!
//! Conventions used everywhere in this crate:
//!
//! * Qubits are numbered 1..=n, with qubit 1 the leftmost in ket notation and
//!   the most significant bit of the basis index. `|01111>` on five qubits is
//!   index 15.
//! * Tensor products place the left operand on the most significant qubits,
//!   so an (n-1)-qubit ancilla register tensored with a single principal
//!   qubit gives basis index `2*m + b`.
//! * All values are immutable after construction and every operation is a
//!   pure function of its inputs.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, SVD, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default numerical tolerance for exactness checks. Double-precision
/// arithmetic over products of dimension <= 512 stays far below this.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Tolerance for the positive-semidefiniteness check on density matrices.
pub const PSD_TOL: f64 = 1e-8;

pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A normalized pure state on `n` qubits.
///
/// Index `i` of the amplitude vector addresses the computational basis ket
/// whose binary expansion (qubit 1 = most significant bit) equals `i`.
/// Construction from an unnormalized amplitude list normalizes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Array1<Complex64>,
}

impl PureState {
    /// Builds a state from amplitudes, normalizing them. Rejects a vector of
    /// the wrong length or (numerically) zero norm.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidState("need at least one qubit".into()));
        }
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::InvalidState(format!(
                "expected {} amplitudes for {} qubits, got {}",
                dim,
                n_qubits,
                amplitudes.len()
            )));
        }
        let mut amplitudes = Array1::from(amplitudes);
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::InvalidState(
                "zero vector cannot be normalized".into(),
            ));
        }
        amplitudes.mapv_inplace(|a| a / norm);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// The computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(n_qubits > 0 && index < (1 << n_qubits));
        let mut amplitudes = Array1::zeros(1 << n_qubits);
        amplitudes[index] = ONE;
        Self {
            n_qubits,
            amplitudes,
        }
    }

    /// A single-qubit state `alpha|0> + beta|1>` (normalized).
    pub fn qubit(alpha: Complex64, beta: Complex64) -> Self {
        Self::new(1, vec![alpha, beta]).expect("a nonzero single-qubit state")
    }

    /// Builds a state from `(coefficient, bitstring)` terms, e.g.
    /// `(-1.0, "00000")`. The result is normalized.
    pub fn from_bit_terms(n_qubits: usize, terms: &[(f64, &str)]) -> Result<Self> {
        let dim = 1usize << n_qubits;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        for (coeff, bits) in terms {
            let index = bits_to_index(n_qubits, bits)?;
            amplitudes[index] += Complex64::new(*coeff, 0.0);
        }
        Self::new(n_qubits, amplitudes)
    }

    /// Wraps an already-normalized vector without renormalizing. Callers must
    /// guarantee unit norm (e.g. a phase-permutation of a normalized state).
    pub(crate) fn from_normalized(n_qubits: usize, amplitudes: Array1<Complex64>) -> Self {
        debug_assert!({
            let norm2 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>();
            (norm2 - 1.0).abs() < 1e-9
        });
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "inner product on mismatched dimensions"
        );
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Tensor product with `other`; `self` occupies the most significant qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Array1::zeros(self.dim() * other.dim());
        for (i, a) in self.amplitudes.iter().enumerate() {
            for (j, b) in other.amplitudes.iter().enumerate() {
                amplitudes[i * other.dim() + j] = a * b;
            }
        }
        Self {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes,
        }
    }

    /// The projector `|self><self|` as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut entries = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                entries[[i, j]] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix::from_valid(self.n_qubits, entries)
    }

    /// Fidelity with another pure state, `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr().clamp(0.0, 1.0)
    }

    /// Largest entrywise distance to another state vector.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Parses a bitstring like "01101" into a basis index, qubit 1 = MSB.
pub(crate) fn bits_to_index(n_qubits: usize, bits: &str) -> Result<usize> {
    if bits.len() != n_qubits {
        return Err(Error::InvalidState(format!(
            "bitstring `{bits}` has length {}, expected {n_qubits}",
            bits.len()
        )));
    }
    let mut index = 0usize;
    for c in bits.chars() {
        index <<= 1;
        match c {
            '0' => {}
            '1' => index |= 1,
            _ => {
                return Err(Error::InvalidState(format!(
                    "bitstring `{bits}` contains `{c}`; only 0 and 1 are allowed"
                )))
            }
        }
    }
    Ok(index)
}

/// Formats a basis index as a bitstring, qubit 1 = MSB.
pub(crate) fn index_to_bits(n_qubits: usize, index: usize) -> String {
    (0..n_qubits)
        .map(|q| {
            if index >> (n_qubits - 1 - q) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// A density matrix on `n` qubits: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Array2<Complex64>,
}

impl DensityMatrix {
    /// Validates and wraps a raw matrix: Hermitian within 1e-10, trace 1
    /// within 1e-10, smallest eigenvalue >= -1e-8.
    pub fn from_entries(n_qubits: usize, entries: Array2<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if entries.shape() != [dim, dim] {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected a {dim}x{dim} matrix for {n_qubits} qubits, got {:?}",
                entries.shape()
            )));
        }
        let rho = Self { n_qubits, entries };
        let herm = rho.hermiticity_deviation();
        if herm > DEFAULT_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian: max |rho - rho'| = {herm:.3e}"
            )));
        }
        let tr = rho.trace();
        if (tr - ONE).norm() > DEFAULT_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace = {tr}, expected 1"
            )));
        }
        let lambda_min = rho.min_eigenvalue();
        if lambda_min < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not positive semidefinite: smallest eigenvalue = {lambda_min:.3e}"
            )));
        }
        Ok(rho)
    }

    /// Wraps entries known valid by construction (pure-state projectors,
    /// channel outputs, partial traces). Debug builds still cross-check.
    pub(crate) fn from_valid(n_qubits: usize, entries: Array2<Complex64>) -> Self {
        let rho = Self { n_qubits, entries };
        debug_assert!(rho.hermiticity_deviation() < 1e-9);
        debug_assert!((rho.trace() - ONE).norm() < 1e-9);
        rho
    }

    /// The maximally mixed state `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let entries = Array2::eye(dim).mapv(|x: f64| Complex64::new(x / dim as f64, 0.0));
        Self { n_qubits, entries }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }

    /// Max |rho[i,j] - conj(rho[j,i])|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in 0..=i {
                worst = worst.max((self.entries[[i, j]] - self.entries[[j, i]].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the (Hermitian) matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let (vals, _) = self
            .entries
            .eigh(UPLO::Lower)
            .expect("Hermitian eigendecomposition of a finite matrix");
        vals.iter().fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// Tensor product; `self` occupies the most significant qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let entries = kron(&self.entries, &other.entries);
        Self::from_valid(self.n_qubits + other.n_qubits, entries)
    }

    /// Traces out the `n_ancilla` most significant qubits, returning the
    /// reduced state of the remaining least significant ones.
    pub fn partial_trace_ancilla(&self, n_ancilla: usize) -> Result<Self> {
        if n_ancilla >= self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "cannot trace out {n_ancilla} of {} qubits",
                self.n_qubits
            )));
        }
        let keep = self.n_qubits - n_ancilla;
        let d_keep = 1usize << keep;
        let d_anc = 1usize << n_ancilla;
        let mut entries = Array2::zeros((d_keep, d_keep));
        for m in 0..d_anc {
            let base = m * d_keep;
            for i in 0..d_keep {
                for j in 0..d_keep {
                    entries[[i, j]] += self.entries[[base + i, base + j]];
                }
            }
        }
        Ok(Self::from_valid(keep, entries))
    }

    /// Traces out the `n_principal` least significant qubits, returning the
    /// reduced state of the most significant ones.
    pub fn partial_trace_principal(&self, n_principal: usize) -> Result<Self> {
        if n_principal >= self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "cannot trace out {n_principal} of {} qubits",
                self.n_qubits
            )));
        }
        let keep = self.n_qubits - n_principal;
        let d_keep = 1usize << keep;
        let d_b = 1usize << n_principal;
        let mut entries = Array2::zeros((d_keep, d_keep));
        for i in 0..d_keep {
            for j in 0..d_keep {
                for b in 0..d_b {
                    entries[[i, j]] += self.entries[[i * d_b + b, j * d_b + b]];
                }
            }
        }
        Ok(Self::from_valid(keep, entries))
    }

    /// Fidelity `<psi|rho|psi>` against a pure state.
    pub fn fidelity_pure(&self, psi: &PureState) -> f64 {
        assert_eq!(self.dim(), psi.dim(), "fidelity on mismatched dimensions");
        let v = psi.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += v[i].conj() * self.entries[[i, j]] * v[j];
            }
        }
        acc.re.clamp(0.0, 1.0)
    }

    /// Uhlmann fidelity between two density matrices, computed in the
    /// trace-norm form `(||sqrt(sigma) sqrt(rho)||_1)^2` whose singular
    /// values stay well conditioned for rank-deficient states. Accurate to
    /// roughly 1e-8; the pure-state paths are exact.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "fidelity between dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let product = hermitian_sqrt(&other.entries).dot(&hermitian_sqrt(&self.entries));
        let (_, singular, _) = product.svd(false, false).expect("SVD of a finite matrix");
        let tr: f64 = singular.iter().sum();
        Ok((tr * tr).clamp(0.0, 1.0))
    }

    /// Real parts of the diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        self.entries.diag().iter().map(|z| z.re).collect()
    }

    /// Largest entrywise distance to another density matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            worst = worst.max((a - b).norm());
        }
        worst
    }
}

fn hermitian_sqrt(m: &Array2<Complex64>) -> Array2<Complex64> {
    let (vals, vecs) = m
        .eigh(UPLO::Lower)
        .expect("Hermitian eigendecomposition of a finite matrix");
    let dim = m.nrows();
    let mut out = Array2::zeros((dim, dim));
    for k in 0..dim {
        let s = vals[k].max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        let col = vecs.column(k);
        for i in 0..dim {
            for j in 0..dim {
                out[[i, j]] += s * col[i] * col[j].conj();
            }
        }
    }
    out
}

/// A general linear operator on `n` qubits as a dense `2^n x 2^n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    n_qubits: usize,
    entries: Array2<Complex64>,
}

impl Operator {
    pub fn new(n_qubits: usize, entries: Array2<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if entries.shape() != [dim, dim] {
            return Err(Error::DimensionMismatch(format!(
                "expected a {dim}x{dim} matrix for {n_qubits} qubits, got {:?}",
                entries.shape()
            )));
        }
        Ok(Self { n_qubits, entries })
    }

    pub(crate) fn from_parts(n_qubits: usize, entries: Array2<Complex64>) -> Self {
        debug_assert_eq!(entries.nrows(), 1usize << n_qubits);
        debug_assert_eq!(entries.ncols(), 1usize << n_qubits);
        Self { n_qubits, entries }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self {
            n_qubits,
            entries: Array2::eye(dim).mapv(|x: f64| Complex64::new(x, 0.0)),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            entries: self.entries.t().mapv(|z| z.conj()),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "product of mismatched operators");
        Self {
            n_qubits: self.n_qubits,
            entries: self.entries.dot(&other.entries),
        }
    }

    /// Applies the operator to a raw vector.
    pub fn apply_vec(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        assert_eq!(self.dim(), v.len(), "operator applied to mismatched vector");
        self.entries.dot(v)
    }

    /// Applies the operator to a pure state and renormalizes. Intended for
    /// norm-preserving operators; the renormalization only absorbs roundoff.
    pub fn apply(&self, psi: &PureState) -> PureState {
        PureState::new(self.n_qubits, self.apply_vec(psi.amplitudes()).to_vec())
            .expect("norm-preserving operator produced a zero vector")
    }

    /// Conjugates a density matrix: `self . rho . self'`.
    pub fn conjugate_density(&self, rho: &DensityMatrix) -> DensityMatrix {
        assert_eq!(
            self.dim(),
            rho.dim(),
            "conjugation on mismatched dimensions"
        );
        let m = self
            .entries
            .dot(rho.entries())
            .dot(&self.entries.t().mapv(|z| z.conj()));
        DensityMatrix::from_valid(self.n_qubits, m)
    }

    /// Tensor product; `self` occupies the most significant qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            n_qubits: self.n_qubits + other.n_qubits,
            entries: kron(&self.entries, &other.entries),
        }
    }

    /// Max-abs entry of `U U' - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.entries.dot(&self.entries.t().mapv(|z| z.conj()));
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let expected = if i == j {
                    ONE
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((prod[[i, j]] - expected).norm());
            }
        }
        worst
    }

    /// True iff the max-abs entry of `U U' - I` is at most `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Largest entrywise distance to another operator.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            worst = worst.max((a - b).norm());
        }
        worst
    }
}

/// Kronecker product with the left operand on the most significant qubits.
pub(crate) fn kron(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Haar-uniform single-qubit pure state from a seeded generator.
pub fn haar_qubit(rng: &mut impl rand::Rng) -> PureState {
    use std::f64::consts::PI;
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let theta = z.acos();
    let alpha = Complex64::new((theta / 2.0).cos(), 0.0);
    let beta = Complex64::from_polar((theta / 2.0).sin(), phi);
    PureState::from_normalized(1, Array1::from(vec![alpha, beta]))
}
