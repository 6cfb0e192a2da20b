use std::fmt;

/// Errors surfaced by the library. Everything is a plain data value so the
/// CLI can map variants onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameter outside its documented domain.
    Domain(String),
    /// Family text format violation, with the 1-based offending line.
    Parse { line: usize, msg: String },
    /// Enumeration refused: a level set exceeds the configured limit.
    ScaleGuard {
        a_level: usize,
        b_level: usize,
        limit: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::ScaleGuard {
                a_level,
                b_level,
                limit,
            } => write!(
                f,
                "scale guard: level sets have {a_level} and {b_level} members, limit is {limit} each"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
