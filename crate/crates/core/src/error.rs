use std::fmt;

use thiserror::Error;

/// Failure to decode a canonical byte encoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("expected {expected} bytes for {what}, got {actual}")]
    Length {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("invalid {0} encoding")]
    Invalid(&'static str),
    #[error("non-canonical {0} encoding")]
    NonCanonical(&'static str),
    #[error("unexpected end of input while reading {0}")]
    Truncated(&'static str),
    #[error("{0} trailing bytes after message")]
    Trailing(usize),
    #[error("bad magic bytes for {0}")]
    Magic(&'static str),
    #[error("unsupported {what} version {version}")]
    Version { what: &'static str, version: u8 },
    #[error("unsupported curve id {0}")]
    Curve(u8),
    #[error("{what} too large: {value}")]
    TooLarge { what: &'static str, value: u64 },
}

/// The check that caused a zero-knowledge proof to be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("challenge {0} does not match its transcript")]
    Challenge(&'static str),
    #[error("verification equation {0} does not hold")]
    Equation(&'static str),
    #[error("proof shape does not match the statement: {0}")]
    Shape(&'static str),
    #[error("proof is bound to a different key echo")]
    KeyEcho,
}

/// A cell coordinate on the 1-based grid: `col` runs over `1..=m`, `row` over `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.col, self.row)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("pairing slot mismatch: {0}")]
    SideMismatch(&'static str),
    #[error("payload authentication failed for cell {0}")]
    Integrity(Cell),
    #[error("payload authentication failed")]
    PayloadIntegrity,
    #[error("proof rejected: {0}")]
    Rejected(#[from] Rejection),
    #[error("session in state {state} cannot {action}")]
    Transition { state: &'static str, action: &'static str },
    #[error("query asks for {cells} cells, the provider allows at most {max}")]
    QueryTooLarge { cells: u64, max: u64 },
    #[error("session aborted: {0}")]
    Aborted(String),
    #[error("peer aborted the session ({reason}): {message}")]
    PeerAborted {
        reason: crate::wire::AbortReason,
        message: String,
    },
    #[error("operation tracing: {0}")]
    Usage(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
