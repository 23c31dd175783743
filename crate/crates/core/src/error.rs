use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed edge-list input.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Malformed formula text; `position` is a byte offset into the input.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Exhaustive search refused because the instance exceeds a configured cap.
    #[error("{what}: size {size} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// Model checking refused because the enumeration would be too large.
    #[error("evaluation would enumerate about {estimate:.3e} environments, above the bound of {bound:.3e}")]
    Resource { estimate: f64, bound: f64 },

    #[error("unbound {kind} variable `{name}`")]
    UnboundVariable { kind: &'static str, name: String },

    #[error("unknown formula `{0}`")]
    UnknownFormula(String),

    /// A documented precondition was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
