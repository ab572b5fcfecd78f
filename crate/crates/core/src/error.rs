use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    Field(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("zero has no inverse")]
    ZeroInverse,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("{}", cap_message(*cap, *partial))]
    CapExceeded { cap: usize, partial: usize },

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("inversion is not a homomorphism on non-abelian groups")]
    NotAbelian,

    #[error("operation undefined on the trivial group: {0}")]
    TrivialGroup(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

fn cap_message(cap: usize, partial: usize) -> String {
    if partial == 0 {
        format!("enumeration cap of {cap} elements exceeded (predicted order is larger)")
    } else {
        format!("enumeration cap of {cap} elements exceeded ({partial} elements found so far)")
    }
}
