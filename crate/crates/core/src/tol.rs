//! Central numerical tolerances.
//!
//! Every comparison in the crate goes through one of these named constants
//! so that the accuracy contract is stated once and tested once.

/// Validation tolerance for physical-state checks: Hermiticity deviation,
/// trace deviation from one, eigenvalues below zero, normalization of
/// weights and amplitudes. Chosen three orders above f64 round-off
/// accumulation at the dimensions this crate targets (a few hundred).
pub const VALIDATION: f64 = 1e-9;

/// Tolerance for algebra that is exact up to round-off: operator identities,
/// conservation laws, closed-form overlaps. Violations above this level
/// indicate a logic error, not accumulation.
pub const EXACT: f64 = 1e-12;

/// Basis-size cap. Enumeration refuses to build more states than this so a
/// mistyped scenario fails fast instead of allocating gigabytes.
pub const STATE_CAP: usize = 20_000;

/// Probability mass a coherent source may lose to photon-number truncation
/// before realization is refused. Above this the truncated state is no
/// longer a faithful stand-in for the intended source.
pub const COHERENT_TRUNCATION_LOSS: f64 = 1e-6;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_are_ordered() {
        assert!(EXACT > 0.0);
        assert!(VALIDATION > EXACT);
        assert!(COHERENT_TRUNCATION_LOSS > VALIDATION);
        assert!(STATE_CAP >= 1000);
    }
}
