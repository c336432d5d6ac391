use alloc::string::String;
use core::fmt;

/// Errors raised by the exact engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division by a coefficient that is not a monomial.
    NonMonomialDivision(String),
    /// Matrix with determinant other than ±1.
    NotUnimodular(String),
    /// A rewrite rule precondition failed; the message names the failing bracket.
    Precondition(String),
    /// A directive or builder was given an out-of-range or ill-typed argument.
    BadArgument(String),
    /// Proof-script syntax error at a 1-based line and column.
    Syntax { line: usize, column: usize, message: String },
    /// Hopf map undefined on the given element (e.g. Δ of Z₂^{-1}).
    Undefined(String),
    /// A groupoid move is not applicable to the current triangulation.
    InapplicableMove(String),
    /// Script replay finished with unequal sides.
    NotEqual(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonMonomialDivision(s) => write!(f, "division by non-monomial coefficient {s}"),
            Error::NotUnimodular(s) => write!(f, "matrix is not unimodular: {s}"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::BadArgument(s) => write!(f, "bad argument: {s}"),
            Error::Syntax { line, column, message } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            Error::Undefined(s) => write!(f, "undefined: {s}"),
            Error::InapplicableMove(s) => write!(f, "inapplicable move: {s}"),
            Error::NotEqual(s) => write!(f, "sides differ: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
