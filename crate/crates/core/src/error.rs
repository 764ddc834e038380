//! Error type shared by every module of the engine.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WresError {
    #[error("divergent symbol: rational function is not proper")]
    DivergentSymbol,
    #[error("conditionally convergent, unsupported: degree gap {gap} < 2")]
    ConditionallyConvergent { gap: i64 },
    #[error("division by structurally-zero polynomial")]
    DivisionByZero,
    #[error("size guard exceeded: p={p}, q={q} (limits p<=8, q<=6)")]
    SizeGuard { p: usize, q: usize },
    #[error("symbol order unavailable: {0}")]
    SymbolOrderUnavailable(String),
    #[error("unknown kind: {0}")]
    UnknownKind(String),
    #[error("unregistered scenario: dim {dim}, powers ({p1},{p2})")]
    UnregisteredScenario { dim: usize, p1: usize, p2: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("domain error at t={t}: {message}")]
    Domain { t: f64, message: String },
    #[error("quadrature did not converge: estimated error {error:e} above tolerance {tolerance:e}")]
    Quadrature { error: f64, tolerance: f64 },
    #[error("config error at line {line}, column {column}: {message}")]
    Config { line: usize, column: usize, message: String },
    #[error("non-integrable tail: {0}")]
    NonIntegrableTail(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, WresError>;
