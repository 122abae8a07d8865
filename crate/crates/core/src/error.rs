use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field of order {p}^{m} exceeds the supported maximum of 2^32")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("{k} and {p} are not coprime")]
    NotCoprime { k: u64, p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements or objects belong to different fields")]
    FieldMismatch,
    #[error("no primitive {k}-th root of unity in a field of order {q}")]
    NoSuchRoot { k: u64, q: u64 },
    #[error("field of order {q} does not contain the {k}-th roots of unity")]
    NoKthRoots { k: u64, q: u64 },
    #[error("invalid field element encoding {0}")]
    BadElement(u64),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("hyperplanes {0} and {1} coincide")]
    DuplicateHyperplane(usize, usize),
    #[error("hyperplanes are not in general position")]
    NotGeneralPosition,
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("budget exceeded: {needed} > cap {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("point is not on the variety")]
    NotOnVariety,
    #[error("bad index {0}")]
    BadIndex(usize),
    #[error("arrangement symmetry {0:?} has no monomial lift: {1}")]
    LiftObstruction(Vec<usize>, String),
    #[error("parse error: {0}")]
    Parse(String),
}
