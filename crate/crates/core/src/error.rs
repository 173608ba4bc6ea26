use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("infeasible: more vehicles than subframes ({vehicles} > {subframes})")]
    MoreVehiclesThanSubframes { vehicles: usize, subframes: usize },

    #[error("infeasible: more rows than columns ({rows} > {cols})")]
    MoreRowsThanColumns { rows: usize, cols: usize },

    #[error("non-finite weight at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("infeasible assignment: {0}")]
    InfeasibleAssignment(String),

    #[error("instance too large for oracle: {count} feasible assignments exceed cap {cap}")]
    OracleCapExceeded { count: u128, cap: u128 },

    #[error("invalid smoothing parameter beta = {0}")]
    InvalidBeta(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty input: {0}")]
    Empty(String),
}
