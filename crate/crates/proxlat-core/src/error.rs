use alloc::string::String;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An input or intermediate object exceeds a configured bound.
    #[error("size cap exceeded: {what} is {actual}, limit {limit}")]
    SizeCap { what: &'static str, limit: usize, actual: usize },
    /// A structure violates an invariant; the message carries a witness.
    #[error("invalid structure: {0}")]
    Invalid(String),
    /// Two operands live over incompatible carriers.
    #[error("dimension mismatch: {0}")]
    Mismatch(String),
    /// A rational grid lacks a closure property required by the caller.
    #[error("grid closure violation: {0}")]
    GridClosure(String),
    /// Theorem identifier not known to the duality suite.
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn cap(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::SizeCap { what, limit, actual })
    } else {
        Ok(())
    }
}
