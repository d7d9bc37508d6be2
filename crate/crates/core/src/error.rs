use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graphs must have between 1 and {max} vertices, got {n}")]
    BadVertexCount { n: usize, max: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("invalid family parameters: {0}")]
    BadFamily(String),

    #[error("Steane graph failed validation: {0}")]
    SteaneValidation(String),

    #[error("vertex set is not independent: edge ({0}, {1}) lies inside it")]
    NotIndependent(usize, usize),

    #[error("invalid bipartition: {0}")]
    BadBipartition(String),

    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("{n} qubits exceeds the dense-oracle cap of {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("state vector is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("invalid Pauli string: {0}")]
    BadPauli(String),

    #[error("tableau is not in graph form: {0}")]
    NotGraphForm(String),

    #[error("graph needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("bounds are not exact (E in [{low}, {high}])")]
    NotExact { low: usize, high: usize },

    #[error("invalid mixed state: {0}")]
    BadMixture(String),

    #[error("two-graph mixture condition ({condition}) violated: {detail}")]
    MixtureCondition { condition: &'static str, detail: String },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("ensemble entry '{0}' is not flagged additive")]
    NonAdditive(String),

    #[error("empty ensemble")]
    EmptyEnsemble,

    #[error("malformed input: {0}")]
    Malformed(String),
}
