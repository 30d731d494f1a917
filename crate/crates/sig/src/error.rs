use crate::word::Word;
use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("tensor shape mismatch: alphabet {left_alphabet} depth {left_depth} vs alphabet {right_alphabet} depth {right_depth}")]
    ShapeMismatch {
        left_alphabet: usize,
        left_depth: usize,
        right_alphabet: usize,
        right_depth: usize,
    },

    #[error("word ({word}) has length {len}, beyond truncation depth {depth}")]
    WordTooLong { word: Word, len: usize, depth: usize },

    #[error("letter {letter} of word ({word}) outside alphabet 1..={alphabet}")]
    LetterOutOfRange {
        word: Word,
        letter: u8,
        alphabet: usize,
    },

    #[error("cannot parse word from {input:?}: {reason}")]
    WordParse { input: String, reason: String },

    #[error("stream dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("alphabet {alphabet} at depth {depth} needs more coefficients than this build supports")]
    TensorTooLarge { alphabet: usize, depth: usize },

    #[error("symbolic signature exceeded {cap} stored monomials at step {step}; use a shorter stream or a smaller depth")]
    MonomialCapExceeded { cap: usize, step: usize },

    #[error("polynomial references variable index {variable} but only {provided} values were supplied")]
    UnknownVariable { variable: usize, provided: usize },

    #[error("no exact solution: the linear system for the requested functional is infeasible")]
    Infeasible,

    #[error("certification failed at L={length}: functional gave {actual}, direct moment is {expected} (witness increments {witness})")]
    CertificationFailed {
        length: usize,
        witness: String,
        expected: String,
        actual: String,
    },

    #[error("coordinate index {index} outside 1..={dimension}")]
    CoordinateOutOfRange { index: usize, dimension: usize },

    #[error("moment indices must be pairwise distinct, got ({i1}, {i2}, {i3})")]
    IndicesNotDistinct { i1: usize, i2: usize, i3: usize },

    #[error("column {column} has zero variance; correlation is undefined")]
    ZeroVariance { column: usize },

    #[error("correlation must lie in [-1, 1], got {value}")]
    CorrelationOutOfRange { value: f64 },

    #[error("invalid {context}: {reason}")]
    InvalidInput { context: String, reason: String },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed value in row {row}, column {column}: {value:?}")]
    CsvField {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("malformed tensor json: {0}")]
    TensorJson(String),

    #[error("malformed combination json: {0}")]
    CombinationJson(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid_input(context: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            context: context.into(),
            reason: reason.into(),
        }
    }
}
