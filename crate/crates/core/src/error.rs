use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: expected size {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },

    #[error("element {element} is outside the domain of size {size}")]
    OutOfDomain { element: usize, size: usize },

    #[error("resource limit exceeded: {what} requires {requested}, bound is {bound}")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        bound: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("unresolved name `{0}`")]
    UnresolvedName(String),

    #[error("arity mismatch for `{name}`: expected {expected}, found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("variable x{0} is not assigned")]
    UnboundVariable(usize),

    #[error("quotient is not a permutation: offending blocks {blocks:?}")]
    NonFunctionalQuotient { blocks: Vec<usize> },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn limit(what: &'static str, requested: impl Into<u128>, bound: impl Into<u128>) -> Self {
        Error::ResourceLimit {
            what,
            requested: requested.into(),
            bound: bound.into(),
        }
    }
}
