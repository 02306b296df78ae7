use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not regular (minimal polynomial has degree < n)")]
    NotRegular,
    #[error("eigenvalue {0} appears in more than one Jordan block")]
    DuplicateEigenvalue(String),
    #[error("matrix is not split (not in Jordan form with eigenvalues in the field)")]
    NotSplit,
    #[error("characteristic polynomial is not irreducible")]
    NotIrreducible,
    #[error("no invertible symmetric intertwiner between beta and its transpose was found")]
    SingularTraceForm,
    #[error("complement is not transversal to the centralizer algebra")]
    ComplementNotTransversal,
    #[error("element is not a unit of the centralizer algebra")]
    NotUnit,
    #[error("cocycle class is not trivial")]
    NotTrivialClass,
    #[error("coboundary solver modulus {0} exceeds 2^63")]
    SolverOverflow(u128),
    #[error("coboundary solver failed at modulus {0}")]
    SolverFailed(u64),
    #[error("beta is not in the quadratic normal form [[0, a], [1, 0]] with a a nonsquare")]
    WrongNormalForm,
    #[error("characteristic {p} too small: closed form requires p > {min}")]
    CharTooSmall { p: u32, min: u32 },
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("the given functional does not extend rho")]
    NotAnExtension,
    #[error("odd characteristic required")]
    OddCharRequired,
    #[error("intertwiner product is not scalar (deviation {0})")]
    IntertwinerNotScalar(String),
    #[error("value is not within tolerance of a root of unity of order {0}")]
    SnapFailure(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group too large for a full table ({0} elements)")]
    GroupTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
