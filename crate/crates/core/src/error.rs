use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("substitution for divisorial variable `{0}` is not the variable times a unit")]
    NotAdapted(String),

    #[error("parameter variable `{0}` cannot be substituted or used as a center variable")]
    ParameterVariable(String),

    #[error("initial form of the zero polynomial")]
    ZeroInput,

    #[error("no element of order one in the cotangent ideal")]
    EmptyContact,

    #[error("invariant recursion exceeded {0} levels")]
    RecursionGuard(usize),

    #[error("center is not admissible: {0}")]
    NotAdmissible(String),

    #[error("point lies on the vertex of the cobordant blow-up")]
    VertexPoint,

    #[error("ideal is not principal after restriction")]
    NotPrincipal,

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {message}")]
    Input { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn assertion(msg: impl Into<String>) -> Self {
        Error::Assertion(msg.into())
    }

    /// Process exit code: 3 for malformed input, 4 for a failed internal
    /// check, 2 for everything the algorithms do not cover.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::DuplicateVariable(_)
            | Error::Input { .. }
            | Error::Usage(_) => 3,
            Error::Assertion(_) => 4,
            _ => 2,
        }
    }
}
