use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("formula syntax error at byte {pos}: {msg}")]
    FormulaSyntax { pos: usize, msg: String },

    #[error("unbound variable `{0}` in formula")]
    UnboundVariable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("graph has {n} vertices, exact treedepth is capped at {budget}")]
    TooLargeForExact { n: usize, budget: usize },

    #[error("invalid treedepth certificate: edge {0}-{1} does not join an ancestor-descendant pair")]
    ClosureViolated(usize, usize),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("coloring is certified at order {have}, but order {need} is required")]
    ColoringNotVerified { have: usize, need: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("extended formulation is unbounded")]
    Unbounded,

    #[error("scale cap exceeded: {0}")]
    CapExceeded(String),

    #[error("existential required: {0}")]
    NotExistential(String),

    #[error("arity mismatch: formula has {expected} free variables, got a {got}-tuple")]
    Arity { expected: usize, got: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
