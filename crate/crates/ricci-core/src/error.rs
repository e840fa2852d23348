use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("nonpositive weight {weight} at line {line}")]
    NonpositiveWeight { line: usize, weight: f64 },
    #[error("unknown node id {0}")]
    UnknownNode(usize),
    #[error("unknown node label {0:?}")]
    UnknownLabel(String),
    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(usize),
    #[error("duplicate edge {src} -> {dst}")]
    DuplicateEdge { src: usize, dst: usize },
    #[error("edge weight must be positive, got {0}")]
    NonpositiveEdgeWeight(f64),
    #[error("graph is not weakly connected")]
    NotWeaklyConnected,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("node {0} has no outgoing edge; out-measure undefined for alpha < 1 (augment the graph first)")]
    UndefinedOutMeasure(usize),
    #[error("alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("step size must lie in (0, 1), got {0}")]
    InvalidStepSize(f64),
    #[error("iteration count must be at least 1")]
    InvalidIterations,
    #[error("removal ratio must lie in (0, 1), got {0}")]
    InvalidRemovalRatio(f64),
    #[error("artificial weight must be positive, got {0}")]
    InvalidArtificialWeight(f64),
    #[error("infinite ground cost between support points: not strongly connected")]
    InfiniteGroundCost,
    #[error("transport solver failed to converge: {0}")]
    TransportFailure(String),
    #[error("flow weight bound violated at step {step}, edge {edge}: weight {weight} outside [{lower}, {upper}] (internal consistency error)")]
    BoundViolation {
        step: usize,
        edge: usize,
        weight: f64,
        lower: f64,
        upper: f64,
    },
    #[error("core subgraph is empty")]
    EmptyCore,
    #[error("k must lie in 1..=n, got {k} for n={n}")]
    InvalidK { k: usize, n: usize },
    #[error("pagerank did not converge after {iterations} iterations (residual {residual})")]
    PagerankNonConvergence { iterations: usize, residual: f64 },
    #[error("weight vector length {got} does not match edge count {expected}")]
    WeightLengthMismatch { got: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, GraphError>;
