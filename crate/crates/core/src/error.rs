use thiserror::Error;

/// Errors produced by parameter validation and model evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unstable configuration: parametric gain G/kappa0 = {g_tilde} must satisfy 0 <= G/kappa0 < 1/2")]
    Unstable { g_tilde: f64 },

    #[error("detection frequency omega/kappa0 = {omega_tilde} must be > 0")]
    NonPositiveFrequency { omega_tilde: f64 },

    #[error("phase quadrature carries no force signal (phi = {phi} rad gives cos(phi) = 0)")]
    PhaseQuadrature { phi: f64 },

    #[error("detection frequency omega/kappa0 = {omega_tilde} must lie above the mechanical resonance omega_m/kappa0 = {omega_m_tilde}")]
    BelowResonance {
        omega_tilde: f64,
        omega_m_tilde: f64,
    },

    #[error(
        "the oscillator model is lossless only (gamma_tilde = {gamma_tilde}, theta = {theta})"
    )]
    LossyOscillator { gamma_tilde: f64, theta: f64 },

    #[error("invalid range for `{axis}`: {reason}")]
    InvalidRange { axis: String, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn range(axis: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidRange {
            axis: axis.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
