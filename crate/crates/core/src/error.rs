use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the function.
    Domain(&'static str),
    /// An argument is valid mathematically but outside the supported range
    /// (currently: non-centrality halves of 700 or more).
    Range(&'static str),
    /// A size or term budget would be exceeded.
    Resource { what: &'static str, requested: usize, limit: usize },
    /// An iterative evaluation did not converge.
    Convergence(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::Resource { what, requested, limit } => {
                write!(f, "resource limit: {what} needs {requested}, limit is {limit}")
            }
            Error::Convergence(msg) => write!(f, "no convergence: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
