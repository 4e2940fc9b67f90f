use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QmaError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix size n must be at least 2, got {0}")]
    InvalidSize(usize),
    #[error("index ({0},{1}) out of range for n = {2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("operation requires a named family")]
    CustomFamily,
    #[error("identical index pairs ({0},{1})")]
    EqualPairs(usize, usize),
    #[error("index pattern ({0},{1}),({2},{3}) is not of the form i<s, j<t")]
    NotCrossing(usize, usize, usize, usize),
    #[error("order of root of unity must be positive and different from 2, got {0}")]
    InvalidRootOrder(u32),
    #[error("limit does not exist: the numerator does not vanish at the root of unity")]
    PoleError,
    #[error("negative power is only allowed for a single invertible monomial")]
    NegativePower,
    #[error("element is zero")]
    ZeroInput,
    #[error("element is not covariant with respect to generator {0}")]
    NotCovariant(String),
    #[error("no integer exponents make the expansion hold")]
    Unsolvable,
    #[error("family `{0}` has no center generator list")]
    UnsupportedFamily(String),
    #[error("non-central residue survives the semiclassical limit")]
    NonCentralResidue,
    #[error("semiclassical bracket coefficient is not rational")]
    NonRationalBracket,
    #[error("opposite-diagonal generators do not commute")]
    ConditionCommuFailed,
    #[error("constructed matrices violate a defining relation")]
    RepresentationInvalid,
    #[error("parameter q with q^2 = 1 is not allowed")]
    DegenerateParameter,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, QmaError>;
