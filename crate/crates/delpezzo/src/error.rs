use thiserror::Error;

/// Errors surfaced by the exact-arithmetic pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined gcd: both inputs are zero")]
    UndefinedGcd,
    #[error("identically zero discriminant")]
    ZeroDiscriminant,
    #[error("degree bound exceeded: degree {0} > {1}")]
    DegreeBound(usize, usize),
    #[error("degenerate pencil: discriminant vanishes identically")]
    DegeneratePencil,
    #[error("no nondegenerate member found over the base field")]
    NoNondegenerateMember,
    #[error("generators do not span a pencil (linearly dependent quadrics)")]
    DependentGenerators,
    #[error("dependent points do not span a line")]
    DependentPoints,
    #[error("line is not contained in the base locus")]
    LineNotInBaseLocus,
    #[error("singular transform")]
    SingularTransform,
    #[error("not a curve: Hilbert function tail is not linear")]
    NotACurve,
    #[error("t = {0} outside the admissible range (0, 1/2]")]
    ParameterOutOfRange(String),
    #[error("one-parameter subgroup weights must sum to zero and not all vanish")]
    BadOneParameterSubgroup,
    #[error("no value declared for top-degree monomial {0}")]
    UndeclaredMonomial(String),
    #[error("expression is not homogeneous of the model dimension")]
    NotTopDegree,
    #[error("malformed rational number: {0}")]
    BadNumber(String),
    #[error("bad monomial key: {0}")]
    BadMonomial(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
