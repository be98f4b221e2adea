use thiserror::Error;

/// Errors raised by the exact computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero polynomial has no roots to isolate")]
    ZeroPolynomial,

    #[error("polynomial is not monic with integer coefficients")]
    NotMonicInteger,

    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("gram matrix has signature ({pos}, {neg}) with {zero} null directions; expected (1, n-1)")]
    BadSignature { pos: usize, neg: usize, zero: usize },

    #[error("matrix does not preserve the form: entry ({row}, {col}) is {got}, expected {expected}")]
    NotIsometry {
        row: usize,
        col: usize,
        got: String,
        expected: String,
    },

    #[error("isometry has type {found}, operation requires {required}")]
    WrongType { found: String, required: String },

    #[error("rank {0} is not supported here")]
    UnsupportedRank(usize),

    #[error("discriminant {0} is a perfect square: the lattice has no hyperbolic isometry")]
    SquareDiscriminant(String),

    #[error("search bound {0} exhausted without finding a hyperbolic isometry")]
    SearchExhausted(u64),

    #[error("class is not in the positive cone")]
    NotPositive,

    #[error("class is not ample")]
    NotAmple,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("product {0}·{1} is not declared in the product table")]
    UndeclaredProduct(String, String),

    #[error("unknown basis label {0}")]
    UnknownLabel(String),

    #[error("period matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("inconsistent declarations: {0}")]
    Inconsistent(String),

    #[error("integers {0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("composition degenerates: {0}")]
    DegenerateComposition(String),

    #[error("degree blow-up: {0}")]
    DegreeCap(String),

    #[error("line is contained in the curve")]
    LineInCurve,

    #[error("indeterminacy point without a rational coordinate")]
    IrrationalIndeterminacy,

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
