use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero quaternion")]
    ZeroDivision,

    /// A denominator vanished (below the pole floor) at the given point.
    #[error("pole at ({x1}, {y1}, {x2}, {y2})")]
    Pole { x1: f64, y1: f64, x2: f64, y2: f64 },

    #[error("function is identically zero")]
    IdenticallyZero,

    #[error("denominator is not real-valued: {0}")]
    NonRealDenominator(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error at byte {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },

    #[error("unknown catalogue entry `{0}`")]
    UnknownName(String),

    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },

    #[error("`{0}` is not hyperholomorphic")]
    NotHyperholomorphic(String),

    #[error("`{0}` is not hypermeromorphic")]
    NotHypermeromorphic(String),

    #[error("operation needs a symbolic function, got a sampler")]
    NotSymbolic,

    #[error("operation needs polynomial components")]
    NotPolynomial,

    #[error("quadrature too coarse: {0}")]
    TooCoarse(String),

    #[error("invalid epsilon schedule: {0}")]
    InvalidSchedule(String),

    /// |f| vanishes inside the integration domain.
    #[error("zero of f inside the integration domain near ({x1}, {y1}, {x2}, {y2})")]
    PoleOnDomain { x1: f64, y1: f64, x2: f64, y2: f64 },

    /// The level set |f| = ε is not a radial graph over the unit sphere.
    #[error("level set |f| = {eps} is not star-shaped about the origin")]
    NotStarShaped { eps: f64 },
}

impl Error {
    pub(crate) fn pole_at(q: &crate::Quat64) -> Self {
        let [x1, y1, x2, y2] = q.to_parts();
        Error::Pole { x1, y1, x2, y2 }
    }

    /// Variant name, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDivision => "ZeroDivision",
            Error::Pole { .. } => "Pole",
            Error::IdenticallyZero => "IdenticallyZero",
            Error::NonRealDenominator(_) => "NonRealDenominator",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::Parse { .. } => "Parse",
            Error::UnknownName(_) => "UnknownName",
            Error::BadParams { .. } => "BadParams",
            Error::NotHyperholomorphic(_) => "NotHyperholomorphic",
            Error::NotHypermeromorphic(_) => "NotHypermeromorphic",
            Error::NotSymbolic => "NotSymbolic",
            Error::NotPolynomial => "NotPolynomial",
            Error::TooCoarse(_) => "TooCoarse",
            Error::InvalidSchedule(_) => "InvalidSchedule",
            Error::PoleOnDomain { .. } => "PoleOnDomain",
            Error::NotStarShaped { .. } => "NotStarShaped",
        }
    }

    /// True for errors caused by the mathematical domain (poles, zero sets),
    /// as opposed to malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroDivision
                | Error::Pole { .. }
                | Error::IdenticallyZero
                | Error::PoleOnDomain { .. }
                | Error::NotStarShaped { .. }
                | Error::NotHyperholomorphic(_)
                | Error::NotHypermeromorphic(_)
        )
    }
}
