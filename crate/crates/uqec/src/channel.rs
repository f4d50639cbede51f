//! Kraus-channel simulation of the protocol: the physical channel, the
//! transformed channel conjugated by the complete unitary, the full
//! encode-noise-recover roundtrip, and the projected-identity check that
//! places the protocol in the operator-QEC framework with trivial recovery.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::errors::ErrorModel;
use crate::qstate::{DensityMatrix, Operator, PureState};
use crate::unitary::CompleteUnitary;

/// A quantum channel as a list of Kraus operators with the weights folded
/// in: `K_m = sqrt(p_m) E_m`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    n_qubits: usize,
    kraus_ops: Vec<Operator>,
}

impl KrausChannel {
    /// Validates completeness `sum K' K = I` within 1e-9 and stores the
    /// operators. Channels are checked eagerly here, not at apply time.
    pub fn new(n_qubits: usize, kraus_ops: Vec<Operator>) -> Result<Self> {
        if kraus_ops.is_empty() {
            return Err(Error::IncompleteChannel { deficit: 1.0 });
        }
        let dim = 1usize << n_qubits;
        for k in &kraus_ops {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator of dimension {} in a {dim}-dimensional channel",
                    k.dim()
                )));
            }
        }
        let mut sum = Array2::<Complex64>::zeros((dim, dim));
        for k in &kraus_ops {
            sum += &k.dagger().entries().dot(k.entries());
        }
        let mut deficit = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                deficit = deficit.max((sum[[i, j]] - expected).norm());
            }
        }
        if deficit > 1e-9 {
            return Err(Error::IncompleteChannel { deficit });
        }
        Ok(Self {
            n_qubits,
            kraus_ops,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn kraus_ops(&self) -> &[Operator] {
        &self.kraus_ops
    }

    /// Builds the channel of a Pauli error model, `K_m = sqrt(p_m) E_m`.
    pub fn from_model(model: &ErrorModel) -> Result<Self> {
        let ops = model
            .entries()
            .iter()
            .map(|(p, op)| {
                let dense = op.to_matrix();
                let scaled = dense.entries().mapv(|z| z * p.sqrt());
                Operator::new(model.n_qubits(), scaled)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(model.n_qubits(), ops)
    }

    /// Applies the channel: `rho -> sum K rho K'`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 1 << self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "state of dimension {} through a {}-qubit channel",
                rho.dim(),
                self.n_qubits
            )));
        }
        let dim = rho.dim();
        let mut out = Array2::<Complex64>::zeros((dim, dim));
        for k in &self.kraus_ops {
            let m = k.entries();
            let tmp = m.dot(rho.entries());
            out += &tmp.dot(&m.t().mapv(|z| z.conj()));
        }
        Ok(DensityMatrix::from_valid(self.n_qubits, out))
    }

    /// Applies the channel to a factored input `F rho_f F'` where `F` is a
    /// tall `dim x r` factor. Each Kraus term costs only `O(r dim^2)`.
    pub(crate) fn apply_factored(
        &self,
        factor: &Array2<Complex64>,
        rho_f: &Array2<Complex64>,
    ) -> Array2<Complex64> {
        let dim = factor.nrows();
        let mut out = Array2::<Complex64>::zeros((dim, dim));
        for k in &self.kraus_ops {
            let kf = k.entries().dot(factor);
            let tmp = kf.dot(rho_f);
            out += &tmp.dot(&kf.t().mapv(|z| z.conj()));
        }
        out
    }
}

/// The transformed channel: Kraus operators `sqrt(p_m) U' E_m U` for every
/// operator of the model, order preserved.
pub fn transformed_kraus(u: &CompleteUnitary, model: &ErrorModel) -> Result<KrausChannel> {
    if model.n_qubits() != u.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "model on {} qubits with a {}-qubit unitary",
            model.n_qubits(),
            u.n_qubits()
        )));
    }
    let dim = 1usize << u.n_qubits();
    let u_dag = u.matrix().dagger();
    let ops = model
        .entries()
        .iter()
        .map(|(p, op)| {
            // E U column-by-column is a phase permutation; one dense product
            // with U' finishes the conjugation.
            let mut eu = Array2::<Complex64>::zeros((dim, dim));
            for j in 0..dim {
                let col = op.apply_vec(&u.matrix().entries().column(j).to_owned());
                for i in 0..dim {
                    eu[[i, j]] = col[i];
                }
            }
            let transformed = u_dag.entries().dot(&eu);
            Operator::new(u.n_qubits(), transformed.mapv(|z| z * p.sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(u.n_qubits(), ops)
}

/// Outcome of one encode-noise-recover roundtrip.
#[derive(Debug, Clone)]
pub struct RoundtripReport {
    /// Fidelity of the principal-system marginal against the input state.
    pub b_marginal_fidelity: f64,
    /// Diagonal of the ancilla marginal in the `|e_m>` basis.
    pub ancilla_diagonal: Vec<f64>,
    /// Largest off-diagonal magnitude between distinct ancilla blocks; the
    /// output must be block-diagonal in `|e_m>`.
    pub block_offdiagonal_max: f64,
    /// The full output density matrix.
    pub rho_out: DensityMatrix,
}

impl RoundtripReport {
    /// Largest deviation of the ancilla diagonal from the expected class
    /// probabilities (entries beyond the class count must vanish).
    pub fn diagonal_deviation(&self, class_probabilities: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (m, &d) in self.ancilla_diagonal.iter().enumerate() {
            let expected = class_probabilities.get(m).copied().unwrap_or(0.0);
            worst = worst.max((d - expected).abs());
        }
        worst
    }
}

/// Runs the unitary protocol on `rho_in = |e_0><e_0| (x) |psi><psi|`:
/// conjugate by the complete unitary, apply the physical channel, conjugate
/// by the adjoint. The input is pure, so each Kraus branch stays a vector
/// until the output mixture is assembled.
pub fn simulate_roundtrip(
    u: &CompleteUnitary,
    model: &ErrorModel,
    psi: &PureState,
) -> Result<RoundtripReport> {
    if psi.n_qubits() != 1 {
        return Err(Error::InvalidState(
            "roundtrip takes a single principal qubit".into(),
        ));
    }
    if model.n_qubits() != u.n_qubits() {
        return Err(Error::DimensionMismatch(format!(
            "model on {} qubits with a {}-qubit unitary",
            model.n_qubits(),
            u.n_qubits()
        )));
    }
    let dim = 1usize << u.n_qubits();
    let input = u.ancilla_label(0).tensor(psi);
    let encoded = u.apply_vec(input.amplitudes());

    let mut rho_out = Array2::<Complex64>::zeros((dim, dim));
    for (p, op) in model.entries() {
        let corrupted = op.apply_vec(&encoded);
        let recovered = u.apply_adjoint_vec(&corrupted);
        for i in 0..dim {
            let wi = recovered[i] * p;
            for j in 0..dim {
                rho_out[[i, j]] += wi * recovered[j].conj();
            }
        }
    }
    let rho_out = DensityMatrix::from_valid(u.n_qubits(), rho_out);

    let b_marginal = rho_out.partial_trace_ancilla(u.n_ancilla())?;
    let b_marginal_fidelity = b_marginal.fidelity_pure(psi);
    let ancilla = rho_out.partial_trace_principal(1)?;
    let ancilla_diagonal = ancilla.diagonal();

    let mut block_offdiagonal_max = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            if i / 2 != j / 2 {
                block_offdiagonal_max = block_offdiagonal_max.max(rho_out.entries()[[i, j]].norm());
            }
        }
    }

    Ok(RoundtripReport {
        b_marginal_fidelity,
        ancilla_diagonal,
        block_offdiagonal_max,
        rho_out,
    })
}

/// Outcome of the projected-identity check.
#[derive(Debug, Clone, Copy)]
pub struct UnifiedReport {
    /// Max-abs deviation of `P_U eps(rho) P_U` from `w * rho`, where `w` is
    /// the identity-class probability: the literal proportionality.
    pub literal_deviation: f64,
    /// Max-abs deviation of `Tr_A(P_U eps(rho) P_U) / w` from `rho_B`.
    pub renormalized_deviation: f64,
    /// The numerical projection weight `Tr(P_U eps(rho) P_U)`.
    pub projection_weight: f64,
    /// The expected weight (identity-class probability).
    pub expected_weight: f64,
}

/// Runs the projected-identity check on `rho = |e_0><e_0| (x) rho_B` through
/// the transformed channel: project onto the `|e_0>` block, compare with
/// `w * rho` (literal form) and, after renormalizing and tracing out the
/// ancilla, with `rho_B` itself.
///
/// `identity_class_probability` is the summed probability of the operators
/// in the identity's class (just `p_0` for a non-degenerate model).
pub fn unified_check_with(
    transformed: &KrausChannel,
    identity_class_probability: f64,
    rho_b: &DensityMatrix,
) -> Result<UnifiedReport> {
    if rho_b.n_qubits() != 1 {
        return Err(Error::InvalidState(
            "the principal system is a single qubit".into(),
        ));
    }
    let n = transformed.n_qubits();
    let dim = 1usize << n;

    // rho = |e_0><e_0| (x) rho_B factors through the first two basis columns.
    let mut factor = Array2::<Complex64>::zeros((dim, 2));
    factor[[0, 0]] = Complex64::new(1.0, 0.0);
    factor[[1, 1]] = Complex64::new(1.0, 0.0);
    let out = transformed.apply_factored(&factor, rho_b.entries());

    // P_U = |e_0><e_0| (x) I_B keeps the top-left 2x2 block.
    let mut projected = Array2::<Complex64>::zeros((dim, dim));
    for i in 0..2 {
        for j in 0..2 {
            projected[[i, j]] = out[[i, j]];
        }
    }
    let projection_weight = (projected[[0, 0]] + projected[[1, 1]]).re;

    let mut literal_deviation = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let expected = if i < 2 && j < 2 {
                rho_b.entries()[[i, j]] * identity_class_probability
            } else {
                Complex64::new(0.0, 0.0)
            };
            literal_deviation = literal_deviation.max((projected[[i, j]] - expected).norm());
        }
    }

    if projection_weight.abs() < 1e-12 {
        return Err(Error::DegenerateProjection {
            weight: projection_weight,
        });
    }
    let mut renormalized_deviation = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let traced = projected[[i, j]] / projection_weight;
            renormalized_deviation =
                renormalized_deviation.max((traced - rho_b.entries()[[i, j]]).norm());
        }
    }

    Ok(UnifiedReport {
        literal_deviation,
        renormalized_deviation,
        projection_weight,
        expected_weight: identity_class_probability,
    })
}

/// Convenience form of [`unified_check_with`] that builds the transformed
/// channel and resolves the identity-class probability from the model by
/// locating which ancilla block each transformed operator maps `|e_0>` to.
pub fn unified_check(
    u: &CompleteUnitary,
    model: &ErrorModel,
    rho_b: &DensityMatrix,
) -> Result<UnifiedReport> {
    let transformed = transformed_kraus(u, model)?;
    let mut p_identity = 0.0f64;
    for (m, (p, _)) in model.entries().iter().enumerate() {
        let k = &transformed.kraus_ops()[m];
        // Column 0 of K_m is sqrt(p_m) U' E_m U |e_0,0>; its support block
        // is the ancilla label of the operator's class.
        let mut best = (0usize, 0.0f64);
        for i in 0..k.dim() {
            let w = k.entries()[[i, 0]].norm_sqr();
            if w > best.1 {
                best = (i / 2, w);
            }
        }
        if best.0 == 0 {
            p_identity += p;
        }
    }
    unified_check_with(&transformed, p_identity, rho_b)
}
