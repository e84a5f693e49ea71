use std::fmt;

use thiserror::Error;

use crate::poset::VarId;

/// Where a syntax error was detected in some textual input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    /// 1-based line number.
    pub line: usize,
    /// 1-based column (in characters).
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Position, message: String },

    #[error("invalid identifier {0:?}")]
    InvalidIdentifier(String),

    #[error("unknown node `{0}`")]
    UnknownNode(VarId),

    #[error("unknown variable `{0}`")]
    UnknownVariable(VarId),

    #[error("node `{0}` declared twice")]
    DuplicateNode(VarId),

    #[error("cycle in order relation: `{0}` and `{1}` lie below each other")]
    Cycle(VarId, VarId),

    #[error("empty poset")]
    EmptyPoset,

    #[error("size limit exceeded for {what}: {actual} > {limit}")]
    SizeLimit {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos: Position { line, column },
            message: message.into(),
        }
    }

    /// True for errors caused by malformed text (as opposed to well-formed
    /// input describing an invalid object).
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::InvalidIdentifier(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
