//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors raised by basis construction, state algebra, and the physics
/// harnesses built on top of them.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Mode-space description is unusable (no modes, duplicate labels, ...).
    #[error("invalid mode space: {0}")]
    InvalidModeSpace(String),

    /// Requested basis would exceed the state cap.
    #[error("basis would hold {dim} states, above the cap of {cap}")]
    CapacityExceeded { dim: usize, cap: usize },

    /// A mode index or label does not exist in the space.
    #[error("unknown mode: {0}")]
    UnknownMode(String),

    /// Photon number outside the truncated range.
    #[error("photon number {n} outside 0..={n_max}")]
    PhotonNumberOutOfRange { n: usize, n_max: usize },

    /// Two operands live on different bases.
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    /// Vector or weight normalization failed.
    #[error("normalization error: {0}")]
    Normalization(String),

    /// A matrix failed density-matrix validation.
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// An eigenvalue sits below the allowed negative band.
    #[error("eigenvalue {value:.3e} below -{tol:.1e}; matrix is not positive semidefinite")]
    NegativeEigenvalue { value: f64, tol: f64 },

    /// Photon-number truncation discards more mass than allowed.
    #[error("truncation discards probability mass {loss:.3e}, above the allowed {tol:.1e}")]
    TruncationLoss { loss: f64, tol: f64 },

    /// A source description is inconsistent with itself or with the basis.
    #[error("invalid gun: {0}")]
    InvalidGun(String),

    /// A target description is inconsistent with itself or with the basis.
    #[error("invalid target: {0}")]
    InvalidTarget(String),

    /// A numeric argument is outside its documented domain.
    #[error("argument out of domain: {0}")]
    Domain(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
