use thiserror::Error;

/// Errors shared by the construction and verification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("reciprocal of a series whose constant term vanishes")]
    ZeroConstantTerm,

    #[error("evaluation radius {radius} exceeds the supported maximum {max}")]
    RadiusTooLarge { radius: f64, max: f64 },

    #[error(
        "truncation tail {tail:.3e} at radius {radius} exceeds the accuracy budget {budget:.1e}; \
         rebuild the mapping at a higher order"
    )]
    AccuracyLoss { tail: f64, radius: f64, budget: f64 },

    #[error("invalid dilatation: {reason}")]
    InvalidDilatation { reason: String },

    #[error("shear target must vanish at 0 and have unit derivative there")]
    TargetNotNormalized,

    #[error("mapping is not normalized: need h(0) = 0, h'(0) = 1, g(0) = 0")]
    NotNormalized,

    #[error("analytic part has vanishing derivative at 0; dilatation is undefined")]
    DegenerateAtOrigin,

    #[error("blend weights must satisfy a >= 0, b >= 0, a + b > 0")]
    InvalidBlend,

    #[error("combination weights eta + lambda(1 - eta) vanish; the dilatation formula is singular")]
    SingularCombination,

    #[error("weights sum to {sum}, expected 1 within {tol:e}")]
    WeightSum { sum: f64, tol: f64 },

    #[error("expected {expected} weights for {expected} mappings, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dilatation bound alpha = {value} must lie strictly between 0 and 1")]
    AlphaOutOfRange { value: f64 },

    #[error("mappings are not shears of the expected kernel target: coefficient residual {residual:.3e}")]
    WrongShearConvention { residual: f64 },

    #[error("inverse of the coefficient-scaling operator requires a zero constant term")]
    ConstantTermNotZero,

    #[error("boundary polygon needs at least {min} vertices, got {got}")]
    TooFewVertices { got: usize, min: usize },

    #[error("grid radii must be strictly increasing within (0, {max}]")]
    InvalidGrid { max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
