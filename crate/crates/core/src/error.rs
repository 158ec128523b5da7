use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the empty set is not a valid operand for {0}")]
    EmptyOperand(&'static str),

    #[error("element {element} exceeds the element bound {bound}")]
    Capacity { element: u64, bound: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u32, u32),

    #[error("unsupported base {0} (expected 2..=36)")]
    InvalidBase(u32),

    #[error("digit {digit} is out of range for base {base}")]
    InvalidDigit { digit: u32, base: u32 },

    #[error("height mismatch: {0} vs {1}")]
    HeightMismatch(usize, usize),

    #[error("coordinates do not form a descending chain at level {0}")]
    BrokenChain(usize),

    #[error("multiplicity {multiplicity} of element {element} exceeds height {height}")]
    MultiplicityOverflow {
        element: usize,
        multiplicity: u32,
        height: usize,
    },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("{0} is not a headstrong composition")]
    NotHeadstrong(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A malformed textual literal. `position` is the byte offset of the
/// offending character in `input`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(input: &str, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_owned(),
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot parse {:?} at position {}: {}",
            self.input, self.position, self.message
        )
    }
}

impl std::error::Error for ParseError {}
