use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error(
        "strategy does not terminate within {rounds} rounds \
         (residual mass {residual:.3e}, partial expectation {partial:.6})"
    )]
    Nonterminating {
        rounds: usize,
        residual: f64,
        partial: f64,
    },

    #[error("no convergence after {sweeps} sweeps (last residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("state space of {states} states exceeds the cap of {cap}")]
    StateSpaceTooLarge { states: u128, cap: u128 },

    #[error("no cop count up to {max_k} captures the robber")]
    CopNumberAboveCap { max_k: usize },

    #[error("policy undefined at cops {config:?}, robber {robber}")]
    PolicyUndefined { config: Vec<usize>, robber: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
