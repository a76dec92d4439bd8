//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("generalized Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is singular")]
    SingularCartan,
    #[error("diagram is decomposable")]
    Decomposable,
    #[error("node index {node} out of range for rank {rank}")]
    BadNode { node: usize, rank: usize },
    #[error("marked diagram is not extensible")]
    NotExtensible,
    #[error("pair is not extensible")]
    NotExtensiblePair,
    #[error("no admissible chain length with nonzero determinant")]
    NoAdmissibleM,
    #[error("two-sided weight has nonzero number of boxes ({0})")]
    NonzeroBoxes(i64),
    #[error("middle root coefficients are not constant")]
    MiddleNotConstant,
    #[error("support needs k >= {need}, got k = {k}")]
    SupportTooWide { need: i64, k: i64 },
    #[error("diagram is not of indefinite type")]
    NotIndefinite,
    #[error("weights are not comparable in the dominance order")]
    NotComparable,
    #[error("difference is not in the positive root cone: {0}")]
    NotInRootCone(String),
    #[error("path does not vanish on the excluded middle nodes")]
    NotSupported,
    #[error("diagram is not of finite type")]
    NotFiniteType,
    #[error("height condition fails: {0}")]
    HeightMismatch(String),
    #[error("budget of {limit} path nodes exhausted")]
    BudgetExceeded { limit: usize },
    #[error("weight is not dominant")]
    NotDominant,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
