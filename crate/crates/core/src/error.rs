use thiserror::Error;

use crate::matrix::{Entry, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimensions {rows}x{cols} exceed the limit of {MAX_DIM}")]
    TooLarge { rows: usize, cols: usize },
    #[error("entry {entry} lies outside a {rows}x{cols} matrix")]
    OutOfBounds { entry: Entry, rows: usize, cols: usize },
    #[error("a pattern needs at least one 1-entry")]
    EmptyPattern,
    #[error("pattern row {0} is empty")]
    EmptyRow(usize),
    #[error("pattern column {0} is empty")]
    EmptyColumn(usize),
    #[error("{0} is not a 1-entry")]
    NotAnEntry(Entry),
    #[error("width and height are undefined for an empty entry set")]
    EmptySet,
    #[error("block has {found} rows, expected {expected}")]
    BlockMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: malformed header {text:?}, expected \"# rows cols\"")]
    Header { line: usize, text: String },
    #[error("line {line}: expected {expected} glyphs, found {found}")]
    Ragged { line: usize, expected: usize, found: usize },
    #[error("line {line}, column {col}: illegal glyph {glyph:?}")]
    IllegalGlyph { line: usize, col: usize, glyph: char },
    #[error("expected {expected} grid rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("permutation shorthand: {0}")]
    Permutation(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillationError {
    #[error("pattern is not a permutation matrix")]
    NotPermutation,
    #[error("{0} is not a 1-entry of the pattern")]
    NotAnEntry(Entry),
    #[error("{0} occurs more than once in the sequence")]
    Duplicate(Entry),
    #[error("sequence is not a valid {0}")]
    Invalid(&'static str),
    #[error("sequence has length {found} but the minimum spanning oscillation has length {minimum}")]
    NotMinimum { minimum: usize, found: usize },
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pattern is decomposable and has no witness")]
    Decomposable,
    #[error("no construction applies to this pattern")]
    Unsupported,
    #[error("internal verification failure: {0}")]
    Verification(String),
    #[error("seed is not a witness: {0}")]
    NotAWitness(String),
    #[error("cannot pad a {rows}x{cols} matrix down to {target_rows}x{target_cols}")]
    PadTooSmall { rows: usize, cols: usize, target_rows: usize, target_cols: usize },
    #[error("certificate lists no expandable {0}")]
    MissingLine(&'static str),
    #[error(transparent)]
    Oscillation(#[from] OscillationError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{rows}x{cols} has {cells} cells, above the brute-force limit of {limit}")]
    Guard { rows: usize, cols: usize, cells: usize, limit: usize },
    #[error("internal error: no saturating matrix found")]
    NoSaturatingMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{axis} index {index} is outside 1..={len}")]
pub struct IndexError {
    pub axis: &'static str,
    pub index: usize,
    pub len: usize,
}
