use std::fmt;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside an operation's domain (bad direction, out-of-range
    /// argument, table index past the end, ...).
    Domain(String),
    /// A shape could not be constructed (negative tension sample, empty
    /// envelope, degenerate mesh).
    Build(String),
    /// A solver failed (volume target unattainable, bracket not found,
    /// cube too small for the scaled shape).
    Solve(String),
    /// An internal exactness check failed; indicates a bug, not bad input.
    Integrity(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Build(msg) => write!(f, "build error: {msg}"),
            Error::Solve(msg) => write!(f, "solver error: {msg}"),
            Error::Integrity(msg) => write!(f, "integrity error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
