use thiserror::Error;

/// Errors surfaced by graph construction, expression parsing and the
/// algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed expression text.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An identifier in an expression that names neither a vertex nor an edge.
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdent { name: String, pos: usize },

    /// A graph description that violates the graph invariants.
    #[error("invalid graph: {0}")]
    Graph(String),

    /// An operation was invoked outside its stated precondition.
    #[error("{0}")]
    Precondition(String),

    /// A divisibility equation with no solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Inversion of a truncated power series with zero constant term.
    #[error("power series is not invertible: zero constant term")]
    NotInvertible,

    /// An internal consistency check failed; always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors caused by unparseable input rather than by
    /// well-formed input outside an operation's domain.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnknownIdent { .. } | Error::Graph(_)
        )
    }
}
