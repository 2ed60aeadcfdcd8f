use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar from {0:?}")]
    ScalarParse(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("invalid q-Racah parameters: {0}")]
    InvalidParams(String),
    #[error("eigenvalues are not mutually distinct")]
    RepeatedEigenvalue,
    #[error(
        "minimal polynomial check failed: matrix is not diagonalizable with the given spectrum"
    )]
    MinimalPolynomial,
    #[error("split-form parameter phi[{0}] is zero")]
    ZeroPhi(usize),
    #[error("TD axiom {axiom} failed: {detail}")]
    AxiomFailed { axiom: &'static str, detail: String },
    #[error("no valid phi found for the given c: {0}")]
    NoValidPhi(String),
    #[error("split decomposition check failed: {0}")]
    SplitDecomposition(String),
    #[error("operator postcondition failed: {0}")]
    OperatorPostcondition(String),
    #[error("invertibility precondition failed: {0}")]
    NotInvertible(String),
    #[error("module check failed: {0}")]
    ModuleCheck(String),
    #[error("missing generator label {0}")]
    MissingLabel(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
