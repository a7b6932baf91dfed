use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("diagram closes up to a link with {components} components, not a knot")]
    MultiComponentLink { components: usize },

    #[error("invalid PD code: {0}")]
    InvalidPd(String),

    #[error("torus knot parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },

    #[error("unknown knot `{0}`")]
    UnknownKnot(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("presentation has no longitude")]
    MissingLongitude,

    #[error("Alexander polynomial normalization failed: {0}")]
    NormalizationFailure(String),

    #[error("b1 of the {n}-fold branched cover is positive; the character family is infinite")]
    InfiniteFamily { n: usize },

    #[error("problem size {size} exceeds the configured cap {cap}")]
    Intractable { size: String, cap: u64 },

    #[error("relator {relator} is not sent to the identity: {detail}")]
    RelatorViolation { relator: usize, detail: String },

    #[error("singular value {value:e} lies inside the ambiguity band around tolerance {tol:e}")]
    ToleranceAmbiguous { value: f64, tol: f64 },

    #[error("adjoint decomposition mismatch: {0}")]
    DecompositionMismatch(String),

    #[error("det(rho(x) t - I) vanishes for every generator")]
    SingularDenominator,

    #[error("representation is not regular: {0}")]
    NotRegular(String),

    #[error("obstruction at order {order} does not vanish (residual {residual:e})")]
    ObstructionNonzero { order: usize, residual: f64 },

    #[error("Newton iteration diverged at t = {t}")]
    NewtonDiverged { t: f64 },

    #[error("character does not have the required order: {0}")]
    WrongOrder(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
