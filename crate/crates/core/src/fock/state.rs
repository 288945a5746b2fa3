//! Pure states as normalized amplitude vectors over a [`FockBasis`].

use crate::error::{CoreError, Result};
use crate::fock::basis::FockBasis;
use crate::{C64, CVector};

/// Normalized pure state. Construction always renormalizes, so a held value
/// has unit L2 norm up to round-off.
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: FockBasis,
    amplitudes: CVector,
}

impl StateVector {
    /// Wraps and normalizes an amplitude vector. Rejects vectors whose norm
    /// is too small to normalize meaningfully.
    pub fn new(basis: FockBasis, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(CoreError::BasisMismatch(format!(
                "amplitude vector has {} entries, basis has {} states",
                amplitudes.len(),
                basis.dim()
            )));
        }
        let norm = amplitudes.norm();
        if norm < 1e-300 || !norm.is_finite() {
            return Err(CoreError::Normalization(format!(
                "cannot normalize vector with norm {norm:.3e}"
            )));
        }
        Ok(Self {
            basis,
            amplitudes: amplitudes / C64::new(norm, 0.0),
        })
    }

    /// The vacuum state |0,...,0⟩.
    pub fn vacuum(basis: FockBasis) -> Self {
        let mut v = CVector::zeros(basis.dim());
        v[0] = C64::new(1.0, 0.0);
        // Vacuum is index 0 by the grading invariant.
        Self {
            basis,
            amplitudes: v,
        }
    }

    /// Basis state for an explicit occupation vector.
    pub fn basis_state(basis: FockBasis, occupation: &[u32]) -> Result<Self> {
        let i = basis.position(occupation).ok_or_else(|| {
            CoreError::PhotonNumberOutOfRange {
                n: occupation.iter().map(|&x| x as usize).sum(),
                n_max: basis.n_max(),
            }
        })?;
        let mut v = CVector::zeros(basis.dim());
        v[i] = C64::new(1.0, 0.0);
        Ok(Self {
            basis,
            amplitudes: v,
        })
    }

    /// One photon in the given flat mode index, vacuum elsewhere.
    pub fn single_photon(basis: FockBasis, mode: usize) -> Result<Self> {
        if mode >= basis.space().mode_count() {
            return Err(CoreError::UnknownMode(format!(
                "mode index {mode} out of range"
            )));
        }
        let mut occ = vec![0u32; basis.space().mode_count()];
        occ[mode] = 1;
        Self::basis_state(basis, &occ)
    }

    /// Normalized linear combination of states on a common basis.
    pub fn superpose(terms: &[(C64, StateVector)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| CoreError::Normalization("empty superposition".into()))?;
        let basis = first.basis.clone();
        let mut acc = CVector::zeros(basis.dim());
        for (c, s) in terms {
            if !s.basis.same_basis(&basis) {
                return Err(CoreError::BasisMismatch(
                    "superposition terms live on different bases".into(),
                ));
            }
            acc += &s.amplitudes * *c;
        }
        Self::new(basis, acc)
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if !self.basis.same_basis(&other.basis) {
            return Err(CoreError::BasisMismatch(
                "inner product across different bases".into(),
            ));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Applies a matrix and renormalizes. Errors if the image is (numerically)
    /// zero, e.g. after annihilating the vacuum.
    pub fn apply(&self, op: &crate::CMatrix) -> Result<Self> {
        if op.ncols() != self.basis.dim() || op.nrows() != self.basis.dim() {
            return Err(CoreError::BasisMismatch(format!(
                "operator is {}x{}, basis dimension is {}",
                op.nrows(),
                op.ncols(),
                self.basis.dim()
            )));
        }
        Self::new(self.basis.clone(), op * &self.amplitudes)
    }
}
