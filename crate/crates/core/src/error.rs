use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Best iterate of an eigensolver that ran out of iterations.
#[derive(Debug, Clone)]
pub struct EigenFailure {
    pub eigenvalue: f64,
    pub eigenvector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Best iterate of an SDP solve that ran out of iterations.
#[derive(Debug, Clone)]
pub struct SdpFailure {
    pub n: usize,
    /// Row-major PSD-projected iterate.
    pub y: Vec<f64>,
    pub psd_violation: f64,
    pub diag_deviation: f64,
    pub sum_violation: f64,
    pub iterations: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid type assignment: {0}")]
    InvalidAssignment(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("infinite weight for label `{label}`")]
    InfiniteWeight { label: String },
    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("size limit exceeded: {0}")]
    SizeGuard(String),
    #[error("balance constraint: {0}")]
    Balance(String),
    #[error("zero-probability observation: {0}")]
    ZeroProbability(String),
    #[error("degenerate test: {0}")]
    DegenerateTest(String),
    #[error("cycle census: {0}")]
    Census(String),
    #[error(
        "eigensolver did not converge after {} iterations (residual {:e})",
        .0.iterations,
        .0.residual
    )]
    EigenNonConvergence(Box<EigenFailure>),
    #[error(
        "SDP solver did not converge after {} iterations (diag {:e}, sum {:e}, psd {:e})",
        .0.iterations,
        .0.diag_deviation,
        .0.sum_violation,
        .0.psd_violation
    )]
    SdpNonConvergence(Box<SdpFailure>),
    #[error("SDP solution not feasible enough to round: {0}")]
    Infeasible(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
