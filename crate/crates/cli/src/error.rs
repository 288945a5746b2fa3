//! Error classification for the batch tool.
//!
//! Two classes map onto the two nonzero exit codes: scenario errors (bad
//! file, bad schema, inconsistent physics description) exit 1, capacity
//! and numeric errors (basis over the cap, truncation loss, eigenvalue
//! repair failure) exit 2.

use rate_core::CoreError;

#[derive(Debug)]
pub enum CliError {
    Scenario(String),
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn scenario(msg: impl Into<String>) -> Self {
        CliError::Scenario(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        CliError::Capacity(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Scenario(_) => 1,
            CliError::Capacity(_) => 2,
        }
    }

    /// Prefixes the message with its sweep point so a mid-sweep failure
    /// names the offending grid value.
    pub fn at_sweep_point(self, index: usize, parameter: &str, value: f64) -> Self {
        let tag = format!("sweep point {index} ({parameter} = {value}): ");
        match self {
            CliError::Scenario(m) => CliError::Scenario(format!("{tag}{m}")),
            CliError::Capacity(m) => CliError::Capacity(format!("{tag}{m}")),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Scenario(m) => write!(f, "scenario error: {m}"),
            CliError::Capacity(m) => write!(f, "capacity/numeric error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CapacityExceeded { .. }
            | CoreError::TruncationLoss { .. }
            | CoreError::NegativeEigenvalue { .. }
            | CoreError::InvalidDensity(_)
            | CoreError::Normalization(_) => CliError::Capacity(e.to_string()),
            other => CliError::Scenario(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_errors_classify_by_exit_code() {
        let cap: CliError = CoreError::CapacityExceeded { dim: 5, cap: 4 }.into();
        assert_eq!(cap.exit_code(), 2);
        let bad: CliError = CoreError::InvalidGun("x".into()).into();
        assert_eq!(bad.exit_code(), 1);
    }

    #[test]
    fn sweep_annotation_keeps_the_class() {
        let e = CliError::capacity("boom").at_sweep_point(3, "epsilon", 0.3);
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("sweep point 3"));
        assert!(e.to_string().contains("epsilon = 0.3"));
    }
}
