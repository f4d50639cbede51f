//! Process tomography of the effective logical channel on the principal
//! qubit: reconstruct the chi matrix in the Pauli basis from the channel's
//! action on four informationally complete input states and certify that the
//! protocol leaves an identity channel behind.

use ndarray::Array2;
use num_complex::Complex64;

use crate::channel::{transformed_kraus, KrausChannel};
use crate::error::{Error, Result};
use crate::errors::ErrorModel;
use crate::pauli::PauliLetter;
use crate::qstate::{DensityMatrix, PureState};
use crate::unitary::CompleteUnitary;

/// The effective channel on the principal qubit:
/// `rho_B -> Tr_A(eps~(|e_0><e_0| (x) rho_B))`, evaluated exactly by dense
/// simulation.
#[derive(Debug, Clone)]
pub struct LogicalChannel {
    channel: KrausChannel,
    n_ancilla: usize,
}

impl LogicalChannel {
    /// Builds the transformed channel for the pair and wraps it.
    pub fn new(u: &CompleteUnitary, model: &ErrorModel) -> Result<Self> {
        Ok(Self::from_channel(transformed_kraus(u, model)?))
    }

    /// Wraps an already-built n-qubit channel (its first two basis states
    /// are the `|e_0> (x) |0/1>` block).
    pub fn from_channel(channel: KrausChannel) -> Self {
        let n_ancilla = channel.n_qubits() - 1;
        Self { channel, n_ancilla }
    }

    /// The baseline with no encoding: the physical channel itself conjugated
    /// by nothing, so the principal qubit sees whatever the noise does to
    /// the last physical qubit.
    pub fn unencoded(model: &ErrorModel) -> Result<Self> {
        Ok(Self::from_channel(KrausChannel::from_model(model)?))
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    /// Applies the map to a single-qubit state.
    pub fn apply(&self, rho_b: &DensityMatrix) -> Result<DensityMatrix> {
        if rho_b.n_qubits() != 1 {
            return Err(Error::InvalidState(
                "the logical channel acts on a single qubit".into(),
            ));
        }
        let dim = 1usize << (self.n_ancilla + 1);
        let mut factor = Array2::<Complex64>::zeros((dim, 2));
        factor[[0, 0]] = Complex64::new(1.0, 0.0);
        factor[[1, 1]] = Complex64::new(1.0, 0.0);
        let out = self.channel.apply_factored(&factor, rho_b.entries());

        // Trace out the ancilla (most significant qubits).
        let mut reduced = Array2::<Complex64>::zeros((2, 2));
        for m in 0..dim / 2 {
            for i in 0..2 {
                for j in 0..2 {
                    reduced[[i, j]] += out[[2 * m + i, 2 * m + j]];
                }
            }
        }
        Ok(DensityMatrix::from_valid(1, reduced))
    }
}

/// A single-qubit process matrix in the Pauli operator basis {I, X, Y, Z}:
/// `eps(rho) = sum_mn chi[m][n] P_m rho P_n`.
#[derive(Debug, Clone)]
pub struct ProcessMatrix {
    chi: [[Complex64; 4]; 4],
}

impl ProcessMatrix {
    /// Validates Hermiticity and the trace-1 normalization of a
    /// trace-preserving channel, both within 1e-9.
    pub fn new(chi: [[Complex64; 4]; 4]) -> Result<Self> {
        let mut herm = 0.0f64;
        let mut trace = Complex64::new(0.0, 0.0);
        for m in 0..4 {
            trace += chi[m][m];
            for n in 0..4 {
                herm = herm.max((chi[m][n] - chi[n][m].conj()).norm());
            }
        }
        if herm > 1e-9 {
            return Err(Error::InvalidOperator(format!(
                "process matrix is not Hermitian: deviation {herm:.3e}"
            )));
        }
        if (trace - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(Error::InvalidOperator(format!(
                "process matrix trace is {trace}, expected 1"
            )));
        }
        Ok(Self { chi })
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.chi
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.chi[m][n]
    }

    /// Largest entrywise deviation from another process matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..4 {
            for n in 0..4 {
                worst = worst.max((self.chi[m][n] - other.chi[m][n]).norm());
            }
        }
        worst
    }
}

/// Overlap of the process with the identity process: `Re chi[0][0]`.
pub fn process_fidelity(chi: &ProcessMatrix) -> f64 {
    chi.entry(0, 0).re
}

/// The four tomography input states: `|0>`, `|1>`, `(|0>+|1>)/sqrt2`,
/// `(|0>+i|1>)/sqrt2`.
pub fn tomography_inputs() -> [PureState; 4] {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        PureState::basis(1, 0),
        PureState::basis(1, 1),
        PureState::qubit(one, one),
        PureState::qubit(one, i),
    ]
}

/// Standard process tomography by linear inversion from exactly the four
/// canonical input states.
///
/// The channel's action on the operator basis `|i><j|` is recovered by
/// linear combination of the four output states, assembled into the
/// superoperator, and projected onto the Pauli basis.
pub fn sqpt<F>(channel: F) -> Result<ProcessMatrix>
where
    F: Fn(&DensityMatrix) -> Result<DensityMatrix>,
{
    let [zero, one, plus, plus_i] = tomography_inputs();
    let r1 = channel(&zero.to_density())?;
    let r4 = channel(&one.to_density())?;
    let rp = channel(&plus.to_density())?;
    let rm = channel(&plus_i.to_density())?;

    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    // eps(|0><1|) and eps(|1><0|) from the four outputs.
    let mut r2 = Array2::<Complex64>::zeros((2, 2));
    let mut r3 = Array2::<Complex64>::zeros((2, 2));
    for a in 0..2 {
        for b in 0..2 {
            let sum14 = r1.entries()[[a, b]] + r4.entries()[[a, b]];
            r2[[a, b]] = rp.entries()[[a, b]] + i * rm.entries()[[a, b]]
                - (Complex64::new(1.0, 1.0) * half) * sum14;
            r3[[a, b]] = rp.entries()[[a, b]]
                - i * rm.entries()[[a, b]]
                - (Complex64::new(1.0, -1.0) * half) * sum14;
        }
    }

    // Superoperator on column-major vectorized density matrices:
    // column (j*2 + i) holds vec(eps(|i><j|)).
    let mut superop = Array2::<Complex64>::zeros((4, 4));
    let images: [(usize, usize, &Array2<Complex64>); 4] = [
        (0, 0, r1.entries()),
        (0, 1, &r2),
        (1, 0, &r3),
        (1, 1, r4.entries()),
    ];
    for (row, col, image) in images {
        for jj in 0..2 {
            for ii in 0..2 {
                superop[[jj * 2 + ii, col * 2 + row]] = image[[ii, jj]];
            }
        }
    }

    // chi_mn = Tr[(P_n^T (x) P_m)' S] / 4; the basis {P_n^T (x) P_m} is
    // orthogonal with norm 4 under the Hilbert-Schmidt inner product.
    let paulis = [
        PauliLetter::I.matrix(),
        PauliLetter::X.matrix(),
        PauliLetter::Y.matrix(),
        PauliLetter::Z.matrix(),
    ];
    let mut chi = [[Complex64::new(0.0, 0.0); 4]; 4];
    for m in 0..4 {
        for n in 0..4 {
            let basis = crate::qstate::kron(&paulis[n].t().to_owned(), &paulis[m]);
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..4 {
                for c in 0..4 {
                    acc += basis[[r, c]].conj() * superop[[r, c]];
                }
            }
            chi[m][n] = acc / 4.0;
        }
    }
    ProcessMatrix::new(chi)
}
