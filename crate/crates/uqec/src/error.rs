/// Errors reported by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("codewords are not orthogonal: |<0L|1L>| = {overlap:.6e}")]
    NonOrthogonalCodewords { overlap: f64 },

    #[error("unknown code `{name}`; available: {available}")]
    UnknownCode { name: String, available: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid error model: {0}")]
    InvalidErrorModel(String),

    #[error("Knill-Laflamme condition failed: {0}")]
    KlFailed(String),

    #[error(
        "unsupported degeneracy: |<0L|E{m}' E{n}|0L>| = {modulus:.6} is neither ~0 nor ~1; \
         mixing degeneracies are out of scope"
    )]
    UnsupportedDegeneracy { m: usize, n: usize, modulus: f64 },

    #[error("syndrome states not orthonormal: <{a}|{b}> deviates by {worst:.6e}")]
    NotOrthonormal { a: String, b: String, worst: f64 },

    #[error("syndrome basis dimension {needed} exceeds the space dimension {dim}")]
    BasisTooLarge { needed: usize, dim: usize },

    #[error("Kraus completeness violated: max |sum K'K - I| = {deficit:.6e}")]
    IncompleteChannel { deficit: f64 },

    #[error("degenerate projection: weight {weight:.6e} is too small to renormalize")]
    DegenerateProjection { weight: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("not a valid state: {0}")]
    InvalidState(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn not_orthonormal(a: (usize, char), b: (usize, char), deviation: f64) -> Self {
        Error::NotOrthonormal {
            a: format!("{},{}", a.0, a.1),
            b: format!("{},{}", b.0, b.1),
            worst: deviation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
