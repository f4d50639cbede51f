//! Construction of the complete unitary transformation from a syndrome
//! basis, the encoding and correction checks, and the matrix text format.
//!
//! The unitary maps the product basis `|e_m> (x) |b>` (ancilla index major,
//! principal qubit least significant, so column index `2m + b`) onto the
//! syndrome basis: column `2m` is `|m,+>` and column `2m + 1` is `|m,->`.
//! Encoding is the action on `|e_0> (x) |psi>`; applying the adjoint after a
//! correctable error returns `|e_m> (x) |psi>`, which is the whole protocol.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use std::io::{BufRead, Write};

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::errors::{ErrorModel, SyndromeBasis};
use crate::qstate::{Operator, PureState};

/// Residual-norm threshold below which a candidate completion vector is
/// considered linearly dependent and dropped.
const COMPLETION_THRESHOLD: f64 = 1e-6;

/// The complete unitary for a code and an ordered error set.
#[derive(Debug, Clone)]
pub struct CompleteUnitary {
    n_qubits: usize,
    matrix: Operator,
    class_count: usize,
    completion_dim: usize,
}

impl CompleteUnitary {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of ancilla qubits, `n - 1`.
    pub fn n_ancilla(&self) -> usize {
        self.n_qubits - 1
    }

    /// Number of syndrome classes, M + 1.
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Dimension of the orthonormally completed complement: `2^n - 2(M+1)`.
    pub fn completion_dim(&self) -> usize {
        self.completion_dim
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    /// The ancilla basis state `|e_m>` on `n - 1` qubits.
    pub fn ancilla_label(&self, m: usize) -> PureState {
        PureState::basis(self.n_ancilla(), m)
    }

    /// Applies the unitary to a raw vector.
    pub fn apply_vec(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        self.matrix.apply_vec(v)
    }

    /// Applies the adjoint to a raw vector.
    pub fn apply_adjoint_vec(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        let m = self.matrix.entries();
        let mut out = Array1::zeros(v.len());
        for j in 0..v.len() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..v.len() {
                acc += m[[i, j]].conj() * v[i];
            }
            out[j] = acc;
        }
        out
    }

    /// Encodes a single-qubit state: the image of `|e_0> (x) |psi>`.
    pub fn encode(&self, psi: &PureState) -> PureState {
        assert_eq!(psi.n_qubits(), 1, "encode takes a single-qubit state");
        let input = self.ancilla_label(0).tensor(psi);
        PureState::new(self.n_qubits, self.apply_vec(input.amplitudes()).to_vec())
            .expect("a unitary maps unit vectors to unit vectors")
    }
}

/// Builds the complete unitary from a verified syndrome basis.
///
/// Column `2m + b` receives `|m,+>` (b = 0) or `|m,->` (b = 1). When the
/// syndrome states do not fill the space, the remaining columns are a
/// deterministic Gram-Schmidt completion of the computational basis vectors
/// taken in index order, dropping dependents. The build is deterministic:
/// identical inputs give bitwise-identical matrices.
pub fn build_complete_unitary(basis: &SyndromeBasis) -> Result<CompleteUnitary> {
    let n_qubits = basis.n_qubits();
    let dim = 1usize << n_qubits;
    let assigned = 2 * basis.class_count();
    if assigned > dim {
        return Err(Error::BasisTooLarge {
            needed: assigned,
            dim,
        });
    }

    let mut matrix = Array2::<Complex64>::zeros((dim, dim));
    for (m, (plus, minus)) in basis.states().iter().enumerate() {
        for i in 0..dim {
            matrix[[i, 2 * m]] = plus.amplitude(i);
            matrix[[i, 2 * m + 1]] = minus.amplitude(i);
        }
    }

    let mut filled = assigned;
    for candidate in 0..dim {
        if filled == dim {
            break;
        }
        let mut v = Array1::<Complex64>::zeros(dim);
        v[candidate] = Complex64::new(1.0, 0.0);
        // Two orthogonalization passes keep the completion orthonormal to
        // machine precision even for small residuals.
        for _ in 0..2 {
            for col in 0..filled {
                let mut proj = Complex64::new(0.0, 0.0);
                for i in 0..dim {
                    proj += matrix[[i, col]].conj() * v[i];
                }
                for i in 0..dim {
                    let correction = proj * matrix[[i, col]];
                    v[i] -= correction;
                }
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm <= COMPLETION_THRESHOLD {
            continue;
        }
        for i in 0..dim {
            matrix[[i, filled]] = v[i] / norm;
        }
        filled += 1;
    }
    assert_eq!(
        filled, dim,
        "orthonormal completion must span the space for a valid basis"
    );

    let matrix = Operator::new(n_qubits, matrix)?;
    Ok(CompleteUnitary {
        n_qubits,
        matrix,
        class_count: basis.class_count(),
        completion_dim: dim - assigned,
    })
}

/// Fidelity between the encoded state `U(|e_0> (x) |psi>)` and the direct
/// codeword combination `alpha|0_L> + beta|1_L>`. Contract: 1 within 1e-10.
pub fn check_encoding(u: &CompleteUnitary, code: &Code, psi: &PureState) -> f64 {
    u.encode(psi).fidelity(&code.encode(psi))
}

/// Per-operator outcome of the correction check.
#[derive(Debug, Clone)]
pub struct CorrectionRecord {
    /// Index of the operator in the original model.
    pub op_index: usize,
    /// Class the operator belongs to.
    pub class_index: usize,
    /// Fidelity of `U' E U (|e_0> (x) |psi>)` against `|e_class> (x) |psi>`.
    pub fidelity: f64,
    /// The measured relative phase against the target.
    pub phase: Complex64,
    /// Entrywise distance to the target including phase. Representatives
    /// must land exactly (up to roundoff); other class members may carry a
    /// global phase.
    pub max_entry_deviation: f64,
}

/// Checks `U' E_m U (|e_0> (x) |psi>) = |e_{class(m)}> (x) |psi>` for every
/// operator of the model.
pub fn check_correction(
    u: &CompleteUnitary,
    model: &ErrorModel,
    class_map: &[usize],
    psi: &PureState,
) -> Vec<CorrectionRecord> {
    assert_eq!(
        model.len(),
        class_map.len(),
        "class map must cover the model"
    );
    let input = u.ancilla_label(0).tensor(psi);
    let encoded = u.apply_vec(input.amplitudes());
    model
        .entries()
        .iter()
        .enumerate()
        .map(|(op_index, (_, op))| {
            let class_index = class_map[op_index];
            let corrupted = op.apply_vec(&encoded);
            let recovered = u.apply_adjoint_vec(&corrupted);
            let target = u.ancilla_label(class_index).tensor(psi);
            let overlap: Complex64 = target
                .amplitudes()
                .iter()
                .zip(recovered.iter())
                .map(|(t, r)| t.conj() * r)
                .sum();
            let mut max_entry_deviation = 0.0f64;
            for (t, r) in target.amplitudes().iter().zip(recovered.iter()) {
                max_entry_deviation = max_entry_deviation.max((r - t).norm());
            }
            CorrectionRecord {
                op_index,
                class_index,
                fidelity: overlap.norm_sqr().clamp(0.0, 1.0),
                phase: overlap,
                max_entry_deviation,
            }
        })
        .collect()
}

/// Writes an operator in the text matrix format: `dim <2^n>` on the first
/// line, then row-major lines of whitespace-separated `re,im` entries with
/// 17 significant digits.
pub fn write_matrix<W: Write>(op: &Operator, mut w: W) -> Result<()> {
    let dim = op.dim();
    writeln!(w, "dim {dim}")?;
    let entries = op.entries();
    let mut line = String::new();
    for i in 0..dim {
        line.clear();
        for j in 0..dim {
            if j > 0 {
                line.push(' ');
            }
            let z = entries[[i, j]];
            line.push_str(&format!("{:.16e},{:.16e}", z.re, z.im));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Reads an operator written by [`write_matrix`].
pub fn read_matrix<R: BufRead>(r: R) -> Result<Operator> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        msg: "empty matrix file".into(),
    })?;
    let header = header?;
    let dim: usize = header
        .strip_prefix("dim ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("expected `dim <2^n>`, got `{header}`"),
        })?;
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("dimension {dim} is not a power of two"),
        });
    }
    let n_qubits = dim.trailing_zeros() as usize;
    let mut entries = Array2::zeros((dim, dim));
    for i in 0..dim {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: i + 2,
            msg: format!("expected {dim} matrix rows, found {i}"),
        })?;
        let line = line?;
        let mut count = 0usize;
        for (j, token) in line.split_whitespace().enumerate() {
            if j >= dim {
                return Err(Error::Parse {
                    line: line_no + 1,
                    msg: format!("row has more than {dim} entries"),
                });
            }
            let (re, im) = token.split_once(',').ok_or_else(|| Error::Parse {
                line: line_no + 1,
                msg: format!("entry `{token}` is not of the form re,im"),
            })?;
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no + 1,
                    msg: format!("`{s}` is not a number"),
                })
            };
            entries[[i, j]] = Complex64::new(parse(re)?, parse(im)?);
            count += 1;
        }
        if count != dim {
            return Err(Error::Parse {
                line: line_no + 1,
                msg: format!("row has {count} entries, expected {dim}"),
            });
        }
    }
    Operator::new(n_qubits, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin;
    use crate::errors::{build_syndrome_basis, syndrome_basis_from_model, ErrorModel};
    use crate::pauli::{
        full_single_qubit_set, laflamme5_permuted_sequence, standard_single_qubit_set,
    };
    use crate::qstate::{haar_qubit, DEFAULT_TOL, ONE};
    use rand::SeedableRng;

    fn bitflip3_unitary() -> CompleteUnitary {
        let code = builtin("bitflip3").unwrap();
        let ops = standard_single_qubit_set(3, &["I", "X1", "X2", "X3"]).unwrap();
        let basis = build_syndrome_basis(&code, &ops, DEFAULT_TOL).unwrap();
        build_complete_unitary(&basis).unwrap()
    }

    #[test]
    fn bitflip3_columns_match_protocol() {
        let u = bitflip3_unitary();
        let m = u.matrix().entries();
        // U(|00> (x) |0>) = |000>, U(|00> (x) |1>) = |111>
        assert_eq!(m[[0b000, 0]], ONE);
        assert_eq!(m[[0b111, 1]], ONE);
        // U(|01> (x) |0>) = |100>, U(|01> (x) |1>) = |011>
        assert_eq!(m[[0b100, 2]], ONE);
        assert_eq!(m[[0b011, 3]], ONE);
        assert_eq!(u.completion_dim(), 0);
    }

    #[test]
    fn permuted_five_qubit_code_fills_the_space() {
        let code = builtin("laflamme5-permuted").unwrap();
        let basis =
            build_syndrome_basis(&code, &laflamme5_permuted_sequence(), DEFAULT_TOL).unwrap();
        let u = build_complete_unitary(&basis).unwrap();
        assert_eq!(u.matrix().dim(), 32);
        assert_eq!(u.completion_dim(), 0);
        assert!(u.matrix().unitarity_deviation() <= 1e-10);
    }

    #[test]
    fn shor9_completion_fills_the_rest() {
        let code = builtin("shor9").unwrap();
        let model = ErrorModel::uniform(full_single_qubit_set(9)).unwrap();
        let (basis, classes) = syndrome_basis_from_model(&code, &model, DEFAULT_TOL).unwrap();
        let u = build_complete_unitary(&basis).unwrap();
        assert_eq!(classes.len(), 22);
        assert_eq!(u.completion_dim(), 512 - 44);
        assert!(u.matrix().unitarity_deviation() <= 1e-10);
    }

    #[test]
    fn encoding_fidelity_is_one() {
        let u = bitflip3_unitary();
        let code = builtin("bitflip3").unwrap();
        let zero = PureState::basis(1, 0);
        let plus = PureState::qubit(ONE, ONE);
        let imag = PureState::qubit(ONE, Complex64::new(0.0, 1.0));
        for psi in [&zero, &plus, &imag] {
            let f = check_encoding(&u, &code, psi);
            assert!((f - 1.0).abs() < 1e-10);
        }
        // psi = |0> encodes to |0_L> itself (first column by construction).
        assert!(u.encode(&zero).max_abs_diff(code.logical_zero()) < 1e-12);
    }

    #[test]
    fn column_property_is_linear_over_assigned_columns() {
        let code = builtin("laflamme5-permuted").unwrap();
        let basis =
            build_syndrome_basis(&code, &laflamme5_permuted_sequence(), DEFAULT_TOL).unwrap();
        let u = build_complete_unitary(&basis).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for m in 0..basis.class_count() {
            let psi = haar_qubit(&mut rng);
            let input = u.ancilla_label(m).tensor(&psi);
            let out = u.apply_vec(input.amplitudes());
            let (plus, minus) = &basis.states()[m];
            for i in 0..out.len() {
                let expected =
                    psi.amplitude(0) * plus.amplitude(i) + psi.amplitude(1) * minus.amplitude(i);
                assert!((out[i] - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn adjoint_sends_syndrome_states_back_to_labels() {
        let code = builtin("laflamme5").unwrap();
        let basis = build_syndrome_basis(&code, &full_single_qubit_set(5), DEFAULT_TOL).unwrap();
        let u = build_complete_unitary(&basis).unwrap();
        for (m, (plus, minus)) in basis.states().iter().enumerate() {
            let back_plus = u.apply_adjoint_vec(plus.amplitudes());
            let back_minus = u.apply_adjoint_vec(minus.amplitudes());
            for i in 0..back_plus.len() {
                let expected_plus = if i == 2 * m { 1.0 } else { 0.0 };
                let expected_minus = if i == 2 * m + 1 { 1.0 } else { 0.0 };
                assert!((back_plus[i] - Complex64::new(expected_plus, 0.0)).norm() < 1e-12);
                assert!((back_minus[i] - Complex64::new(expected_minus, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn correction_lands_on_labeled_ancilla() {
        let code = builtin("laflamme5-permuted").unwrap();
        let ops = laflamme5_permuted_sequence();
        let model = ErrorModel::uniform(ops).unwrap();
        let basis = build_syndrome_basis(&code, &model.operators(), DEFAULT_TOL).unwrap();
        let u = build_complete_unitary(&basis).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let psi = haar_qubit(&mut rng);
        let class_map: Vec<usize> = (0..model.len()).collect();
        for rec in check_correction(&u, &model, &class_map, &psi) {
            assert!((rec.fidelity - 1.0).abs() < 1e-10, "op {}", rec.op_index);
            // Representatives land exactly, phase included.
            assert!(rec.max_entry_deviation < 1e-10, "op {}", rec.op_index);
        }
    }

    #[test]
    fn degenerate_members_land_with_unit_fidelity() {
        let code = builtin("shor9").unwrap();
        let model = ErrorModel::uniform(full_single_qubit_set(9)).unwrap();
        let (basis, classes) = syndrome_basis_from_model(&code, &model, DEFAULT_TOL).unwrap();
        let u = build_complete_unitary(&basis).unwrap();
        let psi = PureState::qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let records = check_correction(&u, &model, basis.class_map(), &psi);
        for rec in &records {
            assert!((rec.fidelity - 1.0).abs() < 1e-10, "op {}", rec.op_index);
        }
        // Z2 (index 6) maps to the class of Z1 (class of index 3).
        assert_eq!(records[6].class_index, records[3].class_index);
        assert_eq!(classes.len(), 22);
    }

    #[test]
    fn identity_error_recovers_exactly() {
        let u = bitflip3_unitary();
        let model =
            ErrorModel::uniform(standard_single_qubit_set(3, &["I", "X1", "X2", "X3"]).unwrap())
                .unwrap();
        let psi = PureState::qubit(ONE, Complex64::new(-0.3, 0.4));
        let recs = check_correction(&u, &model, &[0, 1, 2, 3], &psi);
        assert!(recs[0].max_entry_deviation < 1e-12);
    }

    #[test]
    fn build_is_deterministic() {
        let code = builtin("shor9").unwrap();
        let model = ErrorModel::uniform(full_single_qubit_set(9)).unwrap();
        let (basis, _) = syndrome_basis_from_model(&code, &model, DEFAULT_TOL).unwrap();
        let a = build_complete_unitary(&basis).unwrap();
        let b = build_complete_unitary(&basis).unwrap();
        // Bitwise identical, not merely close.
        assert_eq!(a.matrix().entries(), b.matrix().entries());
    }

    #[test]
    fn matrix_roundtrip_through_text_format() {
        let code = builtin("bitflip3").unwrap();
        let ops = standard_single_qubit_set(3, &["I", "X1", "X2", "X3"]).unwrap();
        let basis = build_syndrome_basis(&code, &ops, DEFAULT_TOL).unwrap();
        let u = build_complete_unitary(&basis).unwrap();
        let mut buf = Vec::new();
        write_matrix(u.matrix(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("dim 8\n"));
        let back = read_matrix(std::io::Cursor::new(buf)).unwrap();
        // 17 significant digits round-trip f64 exactly.
        assert_eq!(back.entries(), u.matrix().entries());
    }

    #[test]
    fn malformed_matrix_files_are_rejected() {
        assert!(read_matrix(std::io::Cursor::new(b"dim 3\n".to_vec())).is_err());
        assert!(read_matrix(std::io::Cursor::new(b"dim 2\n1,0 0,0\n".to_vec())).is_err());
        assert!(read_matrix(std::io::Cursor::new(b"dim 2\n1,0\n0,0 1,0\n".to_vec())).is_err());
    }
}
