use thiserror::Error;

/// Errors shared across the crate.
///
/// Coordinates in error messages are 1-indexed, matching the public API.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order {0}: must be between 1 and 16")]
    InvalidOrder(usize),

    #[error("triple ({row},{col};{symbol}) out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },

    #[error("cell ({row},{col}) is already filled")]
    CellOccupied { row: usize, col: usize },

    #[error("symbol {symbol} already occurs in row {row}")]
    RowConflict { row: usize, symbol: usize },

    #[error("symbol {symbol} already occurs in column {col}")]
    ColumnConflict { col: usize, symbol: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("square is not complete: {missing} empty cells")]
    NotComplete { missing: usize },

    #[error("no unique completion: found {found}")]
    NotUnique { found: u64 },

    #[error("no candidate left for some empty cell")]
    Infeasible,

    #[error("the given cells are not a subset of the square")]
    NotSubset,

    #[error("order {order} unsupported here (maximum {max})")]
    UnsupportedOrder { order: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no recorded value for order {0} (known orders: 1..=10)")]
    UnknownOrder(usize),

    #[error("argument out of supported range: {0}")]
    OutOfSupportedRange(String),

    #[error("no corpus entry named {0:?}")]
    UnknownEntry(String),

    #[error("not a valid trade: {0}")]
    NotATrade(String),
}

pub type Result<T> = std::result::Result<T, Error>;
