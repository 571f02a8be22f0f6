use thiserror::Error;

use crate::spectra::OperatorKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid branching spec: {0}")]
    InvalidSpec(String),

    #[error("operator {operator:?} is not supported for the {family} family")]
    UnsupportedOperator {
        family: String,
        operator: OperatorKind,
    },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error(
        "eigenpair residual {residual:.3e} exceeds {tol:.3e} at node {node} (lambda = {lambda})"
    )]
    ResidualTooLarge {
        node: usize,
        residual: f64,
        tol: f64,
        lambda: f64,
    },

    #[error("ambiguous clustering: cluster gap {gap:.3e} is below the {required:.3e} guard")]
    AmbiguousClustering { gap: f64, required: f64 },

    #[error("found {found} real roots but the squarefree part has degree {expected}")]
    RootCountMismatch { found: usize, expected: usize },

    #[error("multiplicity total {total} does not match the node count {expected}")]
    InconsistentTotal { total: u64, expected: u64 },

    #[error("zero vector rejected")]
    ZeroVector,

    #[error("CDFs use different normalization schemes")]
    SchemeMismatch,

    #[error("{a} and {m} are not coprime")]
    NotCoprime { a: u64, m: u64 },

    #[error("eigenvalue iteration failed to converge at index {0}")]
    IterationFailure(usize),

    #[error("node {0} is isolated; the random-walk operator is undefined")]
    IsolatedNode(usize),

    #[error("uncertified input: residual {residual:.3e} exceeds {tol:.3e}")]
    Uncertified { residual: f64, tol: f64 },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
