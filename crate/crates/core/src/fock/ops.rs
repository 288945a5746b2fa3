//! Ladder operators and number projectors as dense matrices on the
//! truncated basis.

use crate::error::{CoreError, Result};
use crate::fock::basis::FockBasis;
use crate::{C64, CMatrix, CVector};

/// Creation operator â† for one mode: ⟨n+1|â†|n⟩ = √(n+1) per mode, with
/// states that would exceed `n_max` total photons mapped to zero
/// (truncation).
pub fn creation_op(basis: &FockBasis, mode: usize) -> Result<CMatrix> {
    let modes = basis.space().mode_count();
    if mode >= modes {
        return Err(CoreError::UnknownMode(format!(
            "mode index {mode} out of range (space has {modes} modes)"
        )));
    }
    let dim = basis.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        if basis.total_photons(j) as usize + 1 > basis.n_max() {
            continue;
        }
        let mut occ = basis.occupation(j).to_vec();
        occ[mode] += 1;
        // Raised state is inside the truncated basis by the grade check.
        let i = basis
            .position(&occ)
            .expect("raised occupation within n_max must be enumerated");
        m[(i, j)] = C64::new(f64::from(occ[mode]).sqrt(), 0.0);
    }
    Ok(m)
}

/// Annihilation operator â for one mode, the adjoint of [`creation_op`].
pub fn annihilation_op(basis: &FockBasis, mode: usize) -> Result<CMatrix> {
    Ok(creation_op(basis, mode)?.adjoint())
}

/// Projector onto the total-photon-number-`n` sector.
pub fn number_projector(basis: &FockBasis, n: usize) -> Result<CMatrix> {
    if n > basis.n_max() {
        return Err(CoreError::PhotonNumberOutOfRange {
            n,
            n_max: basis.n_max(),
        });
    }
    let dim = basis.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        if basis.total_photons(i) as usize == n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
    }
    Ok(m)
}

/// Applies the operator Σ_m c_m â†_m to a state held as a dense amplitude
/// vector, without building the dim×dim matrix. Components that would
/// exceed `n_max` total photons are dropped (truncation), matching
/// [`creation_op`].
pub(crate) fn apply_creation_terms(
    basis: &FockBasis,
    terms: &[(usize, C64)],
    state: &CVector,
) -> CVector {
    let mut out = CVector::zeros(basis.dim());
    for i in 0..basis.dim() {
        let amp = state[i];
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        if basis.total_photons(i) as usize >= basis.n_max() {
            continue;
        }
        let occ = basis.occupation(i);
        for &(m, c) in terms {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let mut raised = occ.to_vec();
            raised[m] += 1;
            let idx = basis
                .position(&raised)
                .expect("raised occupation within n_max must be enumerated");
            out[idx] += amp * c * C64::new(f64::from(raised[m]).sqrt(), 0.0);
        }
    }
    out
}
