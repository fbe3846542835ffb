use thiserror::Error;

/// Errors raised by the library.
///
/// `Internal` marks a broken consistency check (two independent computations
/// that must agree did not). Every other variant is a domain or input error.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroOrder,

    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group axiom violated: {axiom} (witness {witness:?})")]
    GroupAxiom { axiom: &'static str, witness: (u32, u32, u32) },
    #[error("group order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("elements belong to different groups")]
    GroupMismatch,

    #[error("|H| = {order} is not invertible in characteristic {characteristic}")]
    NotInvertible { order: u64, characteristic: u64 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("matrix is not {0}")]
    NotInSubring(String),
    #[error("join shapes differ")]
    ShapeMismatch,
    #[error("group is not abelian")]
    NonAbelian,
    #[error("characteristic {characteristic} divides the group order {order}")]
    ModularCase { order: u64, characteristic: u64 },
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("zeta functions over different bases ({0} and {1})")]
    BaseMismatch(u64, u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    CapExceeded { size: String, cap: u64 },
    #[error("io error: {0}")]
    Io(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
