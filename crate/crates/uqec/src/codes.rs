//! Quantum error-correcting codes: the two orthonormal codewords protecting
//! one logical qubit, the builtin codes, and qubit relabeling.
//!
//! Builtin codewords are stored with the exact signs of their published
//! sources; see the guide's codes chapter for the term tables and citations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{Operator, PureState, DEFAULT_TOL};

/// A code on `n` qubits given by its logical codewords `|0_L>` and `|1_L>`.
///
/// Invariants: both codewords are normalized and mutually orthogonal within
/// 1e-10. The code-space projector `P_C = |0_L><0_L| + |1_L><1_L|` is derived
/// on demand.
#[derive(Debug, Clone)]
pub struct Code {
    name: String,
    n_qubits: usize,
    logical_zero: PureState,
    logical_one: PureState,
}

impl Code {
    pub fn new(name: &str, logical_zero: PureState, logical_one: PureState) -> Result<Self> {
        if logical_zero.n_qubits() != logical_one.n_qubits() {
            return Err(Error::DimensionMismatch(format!(
                "codewords on {} and {} qubits",
                logical_zero.n_qubits(),
                logical_one.n_qubits()
            )));
        }
        let overlap = logical_zero.inner(&logical_one).norm();
        if overlap > DEFAULT_TOL {
            return Err(Error::NonOrthogonalCodewords { overlap });
        }
        Ok(Self {
            name: name.to_string(),
            n_qubits: logical_zero.n_qubits(),
            logical_zero,
            logical_one,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn logical_zero(&self) -> &PureState {
        &self.logical_zero
    }

    pub fn logical_one(&self) -> &PureState {
        &self.logical_one
    }

    /// Encodes `alpha|0_L> + beta|1_L>` for a single-qubit input state.
    pub fn encode(&self, psi: &PureState) -> PureState {
        assert_eq!(psi.n_qubits(), 1, "encode takes a single-qubit state");
        let alpha = psi.amplitude(0);
        let beta = psi.amplitude(1);
        let amplitudes = self
            .logical_zero
            .amplitudes()
            .iter()
            .zip(self.logical_one.amplitudes().iter())
            .map(|(z, o)| alpha * z + beta * o)
            .collect();
        PureState::new(self.n_qubits, amplitudes).expect("codewords are orthonormal")
    }

    /// The code-space projector `P_C = |0_L><0_L| + |1_L><1_L|`.
    pub fn projector(&self) -> Operator {
        let dim = 1usize << self.n_qubits;
        let mut entries = ndarray::Array2::zeros((dim, dim));
        for psi in [&self.logical_zero, &self.logical_one] {
            let a = psi.amplitudes();
            for i in 0..dim {
                for j in 0..dim {
                    entries[[i, j]] += a[i] * a[j].conj();
                }
            }
        }
        Operator::new(self.n_qubits, entries).expect("square by construction")
    }

    /// Relabels qubit `i` to `perm[i-1]` (1-based positions) in both
    /// codewords.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        if perm.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "permutation has {} entries, expected {n}",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{perm:?} is not a bijection on 1..={n}"
                )));
            }
            seen[p - 1] = true;
        }
        let relabel = |psi: &PureState| {
            let dim = 1usize << n;
            let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
            for (index, &amp) in psi.amplitudes().iter().enumerate() {
                let mut target = 0usize;
                for qubit in 1..=n {
                    let bit = index >> (n - qubit) & 1;
                    target |= bit << (n - perm[qubit - 1]);
                }
                amplitudes[target] = amp;
            }
            PureState::new(n, amplitudes).expect("permutation preserves the norm")
        };
        Self::new(
            &format!("{}-permuted", self.name),
            relabel(&self.logical_zero),
            relabel(&self.logical_one),
        )
    }
}

/// Result of comparing two codes codeword-by-codeword.
///
/// An overlap of modulus 1 means the codewords agree up to the reported
/// global phase; overlap exactly 1 means they are identical.
#[derive(Debug, Clone, Copy)]
pub struct CodeComparison {
    pub zero_overlap: Complex64,
    pub one_overlap: Complex64,
}

impl CodeComparison {
    /// True when both codewords agree up to a (possibly different) global
    /// phase within `tol`.
    pub fn equal_up_to_phase(&self, tol: f64) -> bool {
        (self.zero_overlap.norm() - 1.0).abs() <= tol
            && (self.one_overlap.norm() - 1.0).abs() <= tol
    }

    /// True when both codewords agree exactly (phase 1) within `tol`.
    pub fn identical(&self, tol: f64) -> bool {
        (self.zero_overlap - Complex64::new(1.0, 0.0)).norm() <= tol
            && (self.one_overlap - Complex64::new(1.0, 0.0)).norm() <= tol
    }
}

/// Computes `<a_0L|b_0L>` and `<a_1L|b_1L>`.
pub fn compare_codes(a: &Code, b: &Code) -> Result<CodeComparison> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "comparing codes on {} and {} qubits",
            a.n_qubits(),
            b.n_qubits()
        )));
    }
    Ok(CodeComparison {
        zero_overlap: a.logical_zero().inner(b.logical_zero()),
        one_overlap: a.logical_one().inner(b.logical_one()),
    })
}

/// Names accepted by [`builtin`].
pub const BUILTIN_CODES: [&str; 6] = [
    "bitflip3",
    "laflamme5",
    "laflamme5-permuted",
    "shor9",
    "steane7",
    "bdsw5",
];

/// Returns a builtin code by name.
///
/// * `bitflip3` - the three-qubit repetition code, `|000>` / `|111>`.
/// * `laflamme5` - the Laflamme-Miquel-Paz-Zurek five-qubit code with the
///   eight-term codewords and signs of the original presentation.
/// * `laflamme5-permuted` - the same code with the third qubit moved to the
///   final position, so the information qubit sits last.
/// * `shor9` - Shor's nine-qubit code.
/// * `steane7` - Steane's seven-qubit code.
/// * `bdsw5` - the five-qubit code of Bennett, DiVincenzo, Smolin and
///   Wootters (sixteen-term codewords).
pub fn builtin(name: &str) -> Result<Code> {
    match name {
        "bitflip3" => Code::new(
            name,
            PureState::from_bit_terms(3, &[(1.0, "000")])?,
            PureState::from_bit_terms(3, &[(1.0, "111")])?,
        ),
        "laflamme5" => Code::new(
            name,
            PureState::from_bit_terms(
                5,
                &[
                    (-1.0, "00000"),
                    (1.0, "01111"),
                    (-1.0, "10011"),
                    (1.0, "11100"),
                    (1.0, "00110"),
                    (1.0, "01001"),
                    (1.0, "10101"),
                    (1.0, "11010"),
                ],
            )?,
            PureState::from_bit_terms(
                5,
                &[
                    (-1.0, "11111"),
                    (1.0, "10000"),
                    (1.0, "01100"),
                    (-1.0, "00011"),
                    (1.0, "11001"),
                    (1.0, "10110"),
                    (-1.0, "01010"),
                    (-1.0, "00101"),
                ],
            )?,
        ),
        "laflamme5-permuted" => Code::new(
            name,
            PureState::from_bit_terms(
                5,
                &[
                    (-1.0, "00000"),
                    (1.0, "00101"),
                    (1.0, "01010"),
                    (1.0, "01111"),
                    (1.0, "10011"),
                    (-1.0, "10110"),
                    (1.0, "11001"),
                    (1.0, "11100"),
                ],
            )?,
            PureState::from_bit_terms(
                5,
                &[
                    (-1.0, "00011"),
                    (-1.0, "00110"),
                    (1.0, "01001"),
                    (-1.0, "01100"),
                    (1.0, "10000"),
                    (1.0, "10101"),
                    (1.0, "11010"),
                    (-1.0, "11111"),
                ],
            )?,
        ),
        "shor9" => {
            let plus = PureState::from_bit_terms(3, &[(1.0, "000"), (1.0, "111")])?;
            let minus = PureState::from_bit_terms(3, &[(1.0, "000"), (-1.0, "111")])?;
            Code::new(
                name,
                plus.tensor(&plus).tensor(&plus),
                minus.tensor(&minus).tensor(&minus),
            )
        }
        "steane7" => {
            let zero_terms = [
                "0000000", "1010101", "0110011", "1100110", "0001111", "1011010", "0111100",
                "1101001",
            ];
            let one_terms = [
                "1111111", "0101010", "1001100", "0011001", "1110000", "0100101", "1000011",
                "0010110",
            ];
            Code::new(
                name,
                PureState::from_bit_terms(7, &zero_terms.map(|b| (1.0, b)))?,
                PureState::from_bit_terms(7, &one_terms.map(|b| (1.0, b)))?,
            )
        }
        "bdsw5" => Code::new(
            name,
            PureState::from_bit_terms(
                5,
                &[
                    (1.0, "00000"),
                    (1.0, "10010"),
                    (1.0, "01001"),
                    (1.0, "10100"),
                    (1.0, "01010"),
                    (-1.0, "11011"),
                    (-1.0, "00110"),
                    (-1.0, "11000"),
                    (-1.0, "11101"),
                    (-1.0, "00011"),
                    (-1.0, "11110"),
                    (-1.0, "01111"),
                    (-1.0, "10001"),
                    (-1.0, "01100"),
                    (-1.0, "10111"),
                    (1.0, "00101"),
                ],
            )?,
            PureState::from_bit_terms(
                5,
                &[
                    (1.0, "11111"),
                    (1.0, "01101"),
                    (1.0, "10110"),
                    (1.0, "01011"),
                    (1.0, "10101"),
                    (-1.0, "00100"),
                    (-1.0, "11001"),
                    (-1.0, "00111"),
                    (-1.0, "00010"),
                    (-1.0, "11100"),
                    (-1.0, "00001"),
                    (-1.0, "10000"),
                    (-1.0, "01110"),
                    (-1.0, "10011"),
                    (-1.0, "01000"),
                    (1.0, "11010"),
                ],
            )?,
        ),
        _ => Err(Error::UnknownCode {
            name: name.to_string(),
            available: BUILTIN_CODES.join(", "),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::bits_to_index;

    #[test]
    fn every_builtin_satisfies_code_invariants() {
        for name in BUILTIN_CODES {
            let code = builtin(name).unwrap();
            let zero = code.logical_zero();
            let one = code.logical_one();
            assert!((zero.inner(zero).re - 1.0).abs() < 1e-10, "{name}");
            assert!((one.inner(one).re - 1.0).abs() < 1e-10, "{name}");
            assert!(zero.inner(one).norm() < 1e-10, "{name}");
        }
    }

    #[test]
    fn bitflip3_codewords() {
        let code = builtin("bitflip3").unwrap();
        assert_eq!(code.logical_zero().amplitude(0).re, 1.0);
        assert_eq!(code.logical_one().amplitude(7).re, 1.0);
    }

    #[test]
    fn laflamme5_amplitudes_normalized_by_sqrt8() {
        let code = builtin("laflamme5").unwrap();
        let amp = code
            .logical_zero()
            .amplitude(bits_to_index(5, "00000").unwrap());
        assert!((amp.re + 1.0 / 8f64.sqrt()).abs() < 1e-15);
        let amp = code
            .logical_zero()
            .amplitude(bits_to_index(5, "01111").unwrap());
        assert!((amp.re - 1.0 / 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn unknown_name_lists_available_codes() {
        let err = builtin("nope").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bitflip3") && msg.contains("bdsw5"), "{msg}");
    }

    #[test]
    fn identity_permutation_is_identity() {
        let code = builtin("laflamme5").unwrap();
        let same = code.permute_qubits(&[1, 2, 3, 4, 5]).unwrap();
        let cmp = compare_codes(&code, &same).unwrap();
        assert!(cmp.identical(1e-15));
    }

    #[test]
    fn swapping_symmetric_qubits_fixes_bitflip3() {
        let code = builtin("bitflip3").unwrap();
        let swapped = code.permute_qubits(&[2, 1, 3]).unwrap();
        assert!(compare_codes(&code, &swapped).unwrap().identical(1e-15));
    }

    #[test]
    fn moving_third_qubit_last_reproduces_permuted_code() {
        // Relabel 3 -> 5, 4 -> 3, 5 -> 4 and compare with the printed
        // permuted codewords: they must coincide exactly, phase +1 on both.
        let code = builtin("laflamme5").unwrap();
        let moved = code.permute_qubits(&[1, 2, 5, 3, 4]).unwrap();
        let target = builtin("laflamme5-permuted").unwrap();
        let cmp = compare_codes(&moved, &target).unwrap();
        assert!(cmp.equal_up_to_phase(1e-12));
        assert!(cmp.identical(1e-12), "phases: {:?}", cmp);
    }

    #[test]
    fn permutation_preserves_inner_products() {
        let code = builtin("bdsw5").unwrap();
        let p = code.permute_qubits(&[3, 1, 4, 5, 2]).unwrap();
        assert!(p.logical_zero().inner(p.logical_one()).norm() < 1e-12);
    }

    #[test]
    fn non_bijective_permutation_rejected() {
        let code = builtin("bitflip3").unwrap();
        assert!(code.permute_qubits(&[1, 1, 2]).is_err());
        assert!(code.permute_qubits(&[1, 2]).is_err());
        assert!(code.permute_qubits(&[0, 1, 2]).is_err());
    }

    #[test]
    fn encode_is_linear_in_the_input() {
        let code = builtin("steane7").unwrap();
        let psi = PureState::qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let enc = code.encode(&psi);
        let z = code.logical_zero().amplitudes();
        let o = code.logical_one().amplitudes();
        for i in 0..enc.dim() {
            let expected = Complex64::new(0.6, 0.0) * z[i] + Complex64::new(0.0, 0.8) * o[i];
            assert!((enc.amplitude(i) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn projector_is_idempotent_with_rank_two() {
        let code = builtin("laflamme5").unwrap();
        let p = code.projector();
        let sq = p.mul(&p);
        assert!(sq.max_abs_diff(&p) < 1e-12);
        let tr: Complex64 = p.entries().diag().sum();
        assert!((tr.re - 2.0).abs() < 1e-10);
    }
}
