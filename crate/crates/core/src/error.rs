use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("invalid rotor state: {0}")]
    InvalidState(String),

    #[error("permittivity pole at omega = omega_T with zero damping (material `{0}`)")]
    PermittivityPole(String),

    #[error("|d/R| = {ratio:.4} exceeds the validity cap {cap} of the first-order curvature expansion")]
    CurvatureTooLarge { ratio: f64, cap: f64 },

    #[error("Matsubara sum not converged after {terms} terms (partial sum {partial:e} J)")]
    NotConverged { terms: usize, partial: f64 },

    #[error("quadrature not converged: orders {low} and {high} differ by {diff:e} (relative)")]
    QuadratureNotConverged { low: usize, high: usize, diff: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
