//! Error type shared by the fallible, data-facing entry points.
//!
//! Internal categorical plumbing panics on ill-typed composites (those are
//! programmer errors); everything that can be reached from user-supplied
//! data returns [`Error`].

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("objects do not match: {0}")]
    ObjectMismatch(String),
    #[error("element is not below the minuend")]
    NotBelow,
    #[error("carrier too large: {size} exceeds bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("cannot normalize the zero element")]
    ZeroElement,
    #[error("effect algebra is not a lattice: {0}")]
    NotLattice(String),
    #[error("effect algebra does not have the Mackey property: {0}")]
    NotMackey(String),
    #[error("predicate is not sharp")]
    NotSharp,
    #[error("family is not an observable: components do not sum to truth")]
    NotObservable,
    #[error("test is not an instrument: domain and codomain differ")]
    NotInstrument,
    #[error("matrix is not positive semidefinite (min eigenvalue {0})")]
    NotPsd(f64),
    #[error("matrix is not a projection")]
    NotProjection,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("tolerance violation: {0}")]
    Tolerance(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
