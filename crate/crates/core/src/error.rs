use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes identically under substitution")]
    VanishingDenominator,

    #[error("pole of order {order} at {pole}; only simple poles are supported")]
    HigherOrderPole { pole: String, order: usize },

    #[error("euler class undefined: trivial weight has net multiplicity {multiplicity}")]
    TrivialWeight { multiplicity: i64 },

    #[error("geometry ({l1},{l2},{l3}) violates l1+l2+l3 = -2")]
    NotCalabiYau { l1: i64, l2: i64, l3: i64 },

    #[error("unsupported geometry ({l1},{l2},{l3}) for degree {d}")]
    UnsupportedGeometry { l1: i64, l2: i64, l3: i64, d: i64 },

    #[error("curve degree must be positive, got {0}")]
    NonPositiveDegree(i64),

    #[error("{d} does not divide {n}")]
    NotDivisible { n: i64, d: i64 },

    #[error("stability parameter t = {t} lies on the wall of class {class}; pass a side")]
    OnWall { t: String, class: String },

    #[error("missing n(beta) entry for class {0}")]
    MissingNMin(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
