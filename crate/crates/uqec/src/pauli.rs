//! Signed tensor products of single-qubit Pauli operators, the error
//! operators of every model in this crate.
//!
//! The Y convention is the standard matrix `[[0, -i], [i, 0]]`, so
//! `Y|0> = i|1>` and `Y|1> = -i|0>`. Application to states and density
//! matrices is done by index permutation with phase tracking rather than by
//! dense multiplication; `to_matrix` provides the dense realization and the
//! tests cross-check the two routes.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};
use crate::qstate::{kron, DensityMatrix, Operator, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn matrix(self) -> Array2<Complex64> {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliLetter::I => ndarray::array![[o, z], [z, o]],
            PauliLetter::X => ndarray::array![[z, o], [o, z]],
            PauliLetter::Y => ndarray::array![[z, -i], [i, z]],
            PauliLetter::Z => ndarray::array![[o, z], [z, -o]],
        }
    }

    fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(PauliLetter::I),
            'X' => Ok(PauliLetter::X),
            'Y' => Ok(PauliLetter::Y),
            'Z' => Ok(PauliLetter::Z),
            _ => Err(Error::InvalidOperator(format!(
                "`{c}` is not a Pauli letter (expected I, X, Y or Z)"
            ))),
        }
    }

    fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    /// Single-qubit product `self * other` as `(phase, letter)`.
    fn compose(self, other: Self) -> (PauliPhase, Self) {
        use PauliLetter::*;
        use PauliPhase::*;
        match (self, other) {
            (I, p) | (p, I) => (One, p),
            (X, X) | (Y, Y) | (Z, Z) => (One, I),
            (X, Y) => (PlusI, Z),
            (Y, X) => (MinusI, Z),
            (Y, Z) => (PlusI, X),
            (Z, Y) => (MinusI, X),
            (Z, X) => (PlusI, Y),
            (X, Z) => (MinusI, Y),
        }
    }
}

/// Global phase of a Pauli string: one of {+1, -1, +i, -i}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PauliPhase {
    #[default]
    One,
    MinusOne,
    PlusI,
    MinusI,
}

impl PauliPhase {
    pub fn value(self) -> Complex64 {
        match self {
            PauliPhase::One => Complex64::new(1.0, 0.0),
            PauliPhase::MinusOne => Complex64::new(-1.0, 0.0),
            PauliPhase::PlusI => Complex64::new(0.0, 1.0),
            PauliPhase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    fn mul(self, other: Self) -> Self {
        // Represent as powers of i and add.
        let pow = |p: Self| match p {
            PauliPhase::One => 0u8,
            PauliPhase::PlusI => 1,
            PauliPhase::MinusOne => 2,
            PauliPhase::MinusI => 3,
        };
        match (pow(self) + pow(other)) % 4 {
            0 => PauliPhase::One,
            1 => PauliPhase::PlusI,
            2 => PauliPhase::MinusOne,
            _ => PauliPhase::MinusI,
        }
    }

    fn conj(self) -> Self {
        match self {
            PauliPhase::PlusI => PauliPhase::MinusI,
            PauliPhase::MinusI => PauliPhase::PlusI,
            p => p,
        }
    }
}

/// A phased tensor product of single-qubit Paulis on `n` qubits, e.g.
/// `X (x) I (x) I` written `XII`, with qubit 1 the leftmost letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n_qubits: usize,
    letters: Vec<PauliLetter>,
    phase: PauliPhase,
}

impl PauliOperator {
    pub fn new(letters: Vec<PauliLetter>, phase: PauliPhase) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidOperator("empty Pauli string".into()));
        }
        Ok(Self {
            n_qubits: letters.len(),
            letters,
            phase,
        })
    }

    /// The identity on `n` qubits.
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            letters: vec![PauliLetter::I; n_qubits],
            phase: PauliPhase::One,
        }
    }

    /// A single-qubit Pauli at 1-based position `qubit` (qubit 1 leftmost).
    pub fn single(n_qubits: usize, qubit: usize, letter: PauliLetter) -> Result<Self> {
        if qubit == 0 || qubit > n_qubits {
            return Err(Error::InvalidOperator(format!(
                "qubit {qubit} out of range 1..={n_qubits}"
            )));
        }
        let mut letters = vec![PauliLetter::I; n_qubits];
        letters[qubit - 1] = letter;
        Ok(Self {
            n_qubits,
            letters,
            phase: PauliPhase::One,
        })
    }

    /// Parses a full letter string such as `IXZII` (phase +1).
    pub fn from_letters(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(PauliLetter::from_char)
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters, PauliPhase::One)
    }

    /// Parses a compact token: `I` (identity on all `n_qubits`), a
    /// single-qubit form like `X4`, or a full letter string like `IXZII`.
    pub fn from_token(n_qubits: usize, token: &str) -> Result<Self> {
        let token = token.trim();
        if token == "I" {
            return Ok(Self::identity(n_qubits));
        }
        let mut chars = token.chars();
        if let (Some(first), rest) = (chars.next(), chars.as_str()) {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                let letter = PauliLetter::from_char(first)?;
                let qubit: usize = rest
                    .parse()
                    .map_err(|_| Error::InvalidOperator(format!("bad qubit index in `{token}`")))?;
                return Self::single(n_qubits, qubit, letter);
            }
        }
        let op = Self::from_letters(token)?;
        if op.n_qubits != n_qubits {
            return Err(Error::InvalidOperator(format!(
                "operator `{token}` acts on {} qubits, expected {n_qubits}",
                op.n_qubits
            )));
        }
        Ok(op)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    pub fn phase(&self) -> PauliPhase {
        self.phase
    }

    pub fn is_identity(&self) -> bool {
        self.phase == PauliPhase::One && self.letters.iter().all(|&l| l == PauliLetter::I)
    }

    /// The letter string without the phase, e.g. `IXZII`.
    pub fn label(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }

    /// Hermitian conjugate: same letters, conjugated phase.
    pub fn dagger(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            letters: self.letters.clone(),
            phase: self.phase.conj(),
        }
    }

    /// Operator product `self * other` with exact phase tracking.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "composing Paulis on {} and {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        let mut phase = self.phase.mul(other.phase);
        let letters = self
            .letters
            .iter()
            .zip(other.letters.iter())
            .map(|(&a, &b)| {
                let (p, l) = a.compose(b);
                phase = phase.mul(p);
                l
            })
            .collect();
        Ok(Self {
            n_qubits: self.n_qubits,
            letters,
            phase,
        })
    }

    /// Dense matrix realization.
    pub fn to_matrix(&self) -> Operator {
        let mut m = Array2::from_elem((1, 1), self.phase.value());
        for letter in &self.letters {
            m = kron(&m, &letter.matrix());
        }
        Operator::from_parts(self.n_qubits, m)
    }

    /// Bitmask of flipped qubits (X and Y letters), qubit 1 = MSB.
    fn flip_mask(&self) -> usize {
        let mut mask = 0usize;
        for (idx, letter) in self.letters.iter().enumerate() {
            if matches!(letter, PauliLetter::X | PauliLetter::Y) {
                mask |= 1 << (self.n_qubits - 1 - idx);
            }
        }
        mask
    }

    /// Bitmask of sign-carrying qubits (Y and Z letters).
    fn sign_mask(&self) -> usize {
        let mut mask = 0usize;
        for (idx, letter) in self.letters.iter().enumerate() {
            if matches!(letter, PauliLetter::Y | PauliLetter::Z) {
                mask |= 1 << (self.n_qubits - 1 - idx);
            }
        }
        mask
    }

    /// Applies the operator to a raw amplitude vector by permutation:
    /// each Y contributes `i * (-1)^bit` and each Z `(-1)^bit` on the source
    /// index, X and Y flip their bit.
    pub fn apply_vec(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        assert_eq!(v.len(), 1 << self.n_qubits, "vector dimension mismatch");
        let flip = self.flip_mask();
        let sign = self.sign_mask();
        let n_y = self
            .letters
            .iter()
            .filter(|&&l| l == PauliLetter::Y)
            .count();
        let i_pow = match n_y % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let global = self.phase.value() * i_pow;
        let mut out = Array1::zeros(v.len());
        for (s, &amp) in v.iter().enumerate() {
            let parity = (s & sign).count_ones() % 2;
            let factor = if parity == 0 { global } else { -global };
            out[s ^ flip] = factor * amp;
        }
        out
    }

    /// Applies the operator to a pure state. Exact: amplitudes are permuted
    /// and multiplied by unit-modulus phases, never renormalized.
    pub fn apply_state(&self, psi: &PureState) -> PureState {
        PureState::from_normalized(self.n_qubits, self.apply_vec(psi.amplitudes()))
    }

    /// Conjugates a density matrix, `E . rho . E'`, by index permutation.
    pub fn conjugate_density(&self, rho: &DensityMatrix) -> DensityMatrix {
        assert_eq!(rho.dim(), 1 << self.n_qubits, "density dimension mismatch");
        let flip = self.flip_mask();
        let sign = self.sign_mask();
        // Global phases cancel between E and E'; only relative signs between
        // row and column indices survive.
        let mut out = Array2::zeros((rho.dim(), rho.dim()));
        for i in 0..rho.dim() {
            let pi = (i & sign).count_ones() % 2;
            for j in 0..rho.dim() {
                let pj = (j & sign).count_ones() % 2;
                let v = rho.entries()[[i, j]];
                out[[i ^ flip, j ^ flip]] = if pi == pj { v } else { -v };
            }
        }
        DensityMatrix::from_valid(self.n_qubits, out)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            PauliPhase::One => "",
            PauliPhase::MinusOne => "-",
            PauliPhase::PlusI => "i",
            PauliPhase::MinusI => "-i",
        };
        write!(f, "{prefix}{}", self.label())
    }
}

/// The identity followed by every single-qubit Pauli on `n` qubits, in the
/// order `I, X1, Y1, Z1, X2, ...` (3n + 1 operators).
pub fn full_single_qubit_set(n_qubits: usize) -> Vec<PauliOperator> {
    let mut ops = vec![PauliOperator::identity(n_qubits)];
    for qubit in 1..=n_qubits {
        for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
            ops.push(PauliOperator::single(n_qubits, qubit, letter).expect("qubit in range"));
        }
    }
    ops
}

/// Builds an ordered operator list from tokens like `["I", "X4", "Z3"]`.
/// The identity must appear exactly once; each single-qubit Pauli at most
/// once; multi-qubit letter strings are rejected here.
pub fn standard_single_qubit_set(n_qubits: usize, order: &[&str]) -> Result<Vec<PauliOperator>> {
    let mut seen = std::collections::HashSet::new();
    let mut ops = Vec::with_capacity(order.len());
    for token in order {
        let op = PauliOperator::from_token(n_qubits, token)?;
        let weight = op
            .letters()
            .iter()
            .filter(|&&l| l != PauliLetter::I)
            .count();
        if weight > 1 {
            return Err(Error::InvalidOperator(format!(
                "`{token}` is not a single-qubit operator"
            )));
        }
        if !seen.insert(op.clone()) {
            return Err(Error::InvalidOperator(format!(
                "duplicate operator `{token}`"
            )));
        }
        ops.push(op);
    }
    if ops.iter().filter(|op| op.is_identity()).count() != 1 {
        return Err(Error::InvalidOperator(
            "the operator list must contain the identity exactly once".into(),
        ));
    }
    Ok(ops)
}

/// The published operator ordering for the permuted five-qubit code
/// (`laflamme5-permuted`): I, X4, Z3, X5, Z2, Y3, X1, X3, Z1, Y5, Z5, X2,
/// Z4, Y4, Y1, Y2.
pub const LAFLAMME5_PERMUTED_SEQUENCE: [&str; 16] = [
    "I", "X4", "Z3", "X5", "Z2", "Y3", "X1", "X3", "Z1", "Y5", "Z5", "X2", "Z4", "Y4", "Y1", "Y2",
];

/// The sixteen operators of [`LAFLAMME5_PERMUTED_SEQUENCE`] in order.
pub fn laflamme5_permuted_sequence() -> Vec<PauliOperator> {
    standard_single_qubit_set(5, &LAFLAMME5_PERMUTED_SEQUENCE).expect("a valid builtin sequence")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_convention_phases() {
        let y = PauliOperator::from_letters("Y").unwrap();
        let zero = PureState::basis(1, 0);
        let one = PureState::basis(1, 1);
        // Y|0> = i|1>, Y|1> = -i|0>
        assert_eq!(y.apply_state(&zero).amplitude(1), Complex64::new(0.0, 1.0));
        assert_eq!(y.apply_state(&one).amplitude(0), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn apply_matches_dense_realization() {
        let ops = ["XZIYI", "YYIZX", "IIIII", "ZZZZZ"];
        let psi = PureState::from_bit_terms(
            5,
            &[
                (0.5, "00000"),
                (-1.0, "10110"),
                (2.0, "01001"),
                (1.0, "11111"),
            ],
        )
        .unwrap();
        for s in ops {
            let op = PauliOperator::from_letters(s).unwrap();
            let fast = op.apply_vec(psi.amplitudes());
            let dense = op.to_matrix().apply_vec(psi.amplitudes());
            for (a, b) in fast.iter().zip(dense.iter()) {
                assert!((a - b).norm() < 1e-12, "mismatch for {s}");
            }
        }
    }

    #[test]
    fn square_is_phase_squared_identity() {
        for s in ["X", "Y", "Z", "XYZ", "IYXZ"] {
            let op = PauliOperator::from_letters(s).unwrap();
            let sq = op.compose(&op).unwrap();
            assert!(sq.letters().iter().all(|&l| l == PauliLetter::I));
            assert_eq!(sq.phase(), PauliPhase::One);
            let dense = op.to_matrix().mul(&op.to_matrix());
            assert!(dense.max_abs_diff(&Operator::identity(op.n_qubits())) < 1e-12);
        }
    }

    #[test]
    fn composition_matches_matrix_product() {
        let a = PauliOperator::from_letters("XYIZ").unwrap();
        let b = PauliOperator::from_letters("ZYXI").unwrap();
        let composed = a.compose(&b).unwrap();
        let dense = a.to_matrix().mul(&b.to_matrix());
        assert!(composed.to_matrix().max_abs_diff(&dense) < 1e-12);
        // X*Z = -iY on the first qubit.
        assert_eq!(composed.letters()[0], PauliLetter::Y);
    }

    #[test]
    fn pauli_matrices_are_unitary() {
        for s in ["X", "Y", "Z", "XYZI", "YYYYY"] {
            assert!(PauliOperator::from_letters(s)
                .unwrap()
                .to_matrix()
                .is_unitary(1e-12));
        }
    }

    #[test]
    fn conjugate_density_matches_dense_route() {
        let psi =
            PureState::from_bit_terms(3, &[(1.0, "000"), (-0.5, "101"), (0.25, "110")]).unwrap();
        let rho = psi.to_density();
        for s in ["XIZ", "YYI", "IZY"] {
            let op = PauliOperator::from_letters(s).unwrap();
            let fast = op.conjugate_density(&rho);
            let dense = op.to_matrix().conjugate_density(&rho);
            assert!(fast.max_abs_diff(&dense) < 1e-12, "mismatch for {s}");
        }
    }

    #[test]
    fn token_forms() {
        let a = PauliOperator::from_token(5, "X4").unwrap();
        assert_eq!(a.label(), "IIIXI");
        let b = PauliOperator::from_token(5, "IIIXI").unwrap();
        assert_eq!(a, b);
        assert_eq!(PauliOperator::from_token(3, "I").unwrap().label(), "III");
        assert!(PauliOperator::from_token(3, "X4").is_err());
        assert!(PauliOperator::from_token(3, "W1").is_err());
    }

    #[test]
    fn sequence_set_validation() {
        let ops = standard_single_qubit_set(5, &LAFLAMME5_PERMUTED_SEQUENCE).unwrap();
        assert_eq!(ops.len(), 16);
        assert!(ops[0].is_identity());
        assert_eq!(ops[1].label(), "IIIXI");
        // Choice (I) and (II) for three qubits differ only in order.
        let one = standard_single_qubit_set(3, &["I", "X1", "X2", "X3"]).unwrap();
        let two = standard_single_qubit_set(3, &["I", "X2", "X1", "X3"]).unwrap();
        assert_eq!(one[1], two[2]);
        assert_eq!(one[2], two[1]);
        assert_eq!(one[3], two[3]);
        // Duplicates and out-of-range entries are rejected.
        assert!(standard_single_qubit_set(3, &["I", "X1", "X1"]).is_err());
        assert!(standard_single_qubit_set(3, &["I", "X7"]).is_err());
        assert!(standard_single_qubit_set(3, &["X1", "X2"]).is_err());
    }

    #[test]
    fn full_set_size() {
        let ops = full_single_qubit_set(5);
        assert_eq!(ops.len(), 16);
        assert!(ops[0].is_identity());
        let dedup: std::collections::HashSet<_> = ops.iter().map(|o| o.label()).collect();
        assert_eq!(dedup.len(), 16);
    }

    #[test]
    fn dagger_conjugates_phase() {
        let op = PauliOperator::new(vec![PauliLetter::Y], PauliPhase::PlusI).unwrap();
        let dag = op.dagger();
        assert_eq!(dag.phase(), PauliPhase::MinusI);
        let dense = op.to_matrix().dagger();
        assert!(dag.to_matrix().max_abs_diff(&dense) < 1e-15);
    }
}
