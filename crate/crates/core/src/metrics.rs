//! Figures of merit comparing a source state against a target.
//!
//! Two families live here. The linear overlap `F_AB = Tr(ρ_A ρ_B)` and its
//! normalized form, the suitability `S_GT = F_GT / F_TT`, rate how much of
//! the source output the target application accepts. The Jozsa fidelity
//! `f_AB = {Tr[(√ρ_A ρ_B √ρ_A)^{1/2}]}²` is the conventional closeness
//! measure, kept for comparison; it penalizes mixedness that the acceptance
//! view does not care about.
//!
//! `S_GT` obeys the Cauchy–Schwarz bound `S_GT ≤ √(F_GG / F_TT)`
//! unconditionally. The tighter purity-ratio bound `S_GT ≤ F_GG / F_TT`
//! holds only when the source emits entirely inside the target subspace;
//! [`suitability`] reports whether that premise holds rather than assuming
//! it. The integration suite (`tests/metric_properties.rs`) exhibits a
//! mixed state that violates the unrestricted form.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::fock::density::{hermitian_eigenvalues, hermitize};
use crate::fock::DensityMatrix;
use crate::targets::TargetSpec;
use crate::tol;
use crate::{C64, CMatrix};

/// Linear overlap F_AB = Re Tr(ρ_A ρ_B). Symmetric, and equal to |⟨a|b⟩|²
/// when both states are pure.
pub fn overlap(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if !a.basis().same_basis(b.basis()) {
        return Err(CoreError::BasisMismatch(
            "overlap of states on different bases".into(),
        ));
    }
    let (ma, mb) = (a.matrix(), b.matrix());
    let mut acc = 0.0;
    for i in 0..ma.nrows() {
        for j in 0..ma.ncols() {
            acc += (ma[(i, j)] * mb[(j, i)]).re;
        }
    }
    Ok(acc)
}

/// Purity Tr(ρ²): 1 for pure states, 1/dim for the maximally mixed state.
pub fn purity(a: &DensityMatrix) -> f64 {
    overlap(a, a).expect("a state always shares its own basis")
}

/// Principal square root of a Hermitian positive-semidefinite matrix via
/// eigendecomposition. Eigenvalues in `[-tolerance, 0)` are treated as
/// round-off and clamped to zero; anything lower is an error.
pub fn hermitian_psd_sqrt(m: &CMatrix, tolerance: f64) -> Result<CMatrix> {
    let eig = hermitize(m).symmetric_eigen();
    let mut vals = Vec::with_capacity(eig.eigenvalues.len());
    for &v in eig.eigenvalues.iter() {
        if v < -tolerance {
            return Err(CoreError::NegativeEigenvalue {
                value: v,
                tol: tolerance,
            });
        }
        vals.push(v.max(0.0).sqrt());
    }
    let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(
        vals.into_iter().map(|v| C64::new(v, 0.0)).collect(),
    ));
    Ok(&eig.eigenvectors * diag * eig.eigenvectors.adjoint())
}

/// √ρ of a density matrix.
pub fn psd_sqrt(a: &DensityMatrix) -> Result<CMatrix> {
    hermitian_psd_sqrt(a.matrix(), tol::VALIDATION)
}

/// Jozsa fidelity f_AB = {Tr[(√ρ_A ρ_B √ρ_A)^{1/2}]}².
///
/// Symmetric in its arguments, 1 iff the states coincide, and equal to
/// ⟨a|ρ_B|a⟩ when ρ_A = |a⟩⟨a| is pure. For commuting states it reduces to
/// (Σᵢ √(pᵢ qᵢ))².
pub fn jozsa_fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if !a.basis().same_basis(b.basis()) {
        return Err(CoreError::BasisMismatch(
            "fidelity of states on different bases".into(),
        ));
    }
    let sa = psd_sqrt(a)?;
    let inner = &sa * b.matrix() * &sa;
    let mut root_sum = 0.0;
    for v in hermitian_eigenvalues(&inner) {
        if v < -tol::VALIDATION {
            return Err(CoreError::NegativeEigenvalue {
                value: v,
                tol: tol::VALIDATION,
            });
        }
        root_sum += v.max(0.0).sqrt();
    }
    Ok(root_sum * root_sum)
}

/// Single-photon-projected overlap F¹_AB = Re Tr(ρ_A P₁ ρ_B), the overlap
/// restricted to the one-photon sector. For a source whose single photon is
/// spread uniformly over d bins, F¹_GG = 1/d.
pub fn single_photon_overlap(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if !a.basis().same_basis(b.basis()) {
        return Err(CoreError::BasisMismatch(
            "single-photon overlap of states on different bases".into(),
        ));
    }
    let (ma, mb) = (a.matrix(), b.matrix());
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..a.dim() {
        if a.basis().total_photons(k) != 1 {
            continue;
        }
        for i in 0..a.dim() {
            acc += ma[(i, k)] * mb[(k, i)];
        }
    }
    Ok(acc.re)
}

/// Full rating of a source against a target subspace.
#[derive(Debug, Clone, Serialize)]
pub struct MetricReport {
    /// Overlap between source and target state, F_GT = Tr(ρ_G ρ_T).
    pub f_gt: f64,
    /// Target self-overlap F_TT; exactly 1/dim for a subspace target.
    pub f_tt: f64,
    /// Source purity F_GG = Tr(ρ_G²).
    pub f_gg: f64,
    /// Single-photon-projected source self-overlap F¹_GG.
    pub f1_gg: f64,
    /// Suitability S_GT = F_GT / F_TT: the probability mass the target
    /// accepts. 1 means every emitted state is accepted.
    pub suitability: f64,
    /// Unconditional Cauchy–Schwarz bound √(F_GG / F_TT) ≥ S_GT.
    pub cs_bound: f64,
    /// Purity-ratio bound F_GG / F_TT. Upper-bounds S_GT only when
    /// `purity_bound_applicable` is true; unrestricted it can be violated.
    pub purity_bound: f64,
    /// True when the source emits entirely inside the target subspace
    /// (outside mass at most the validation tolerance).
    pub purity_bound_applicable: bool,
    /// Source probability mass outside the target subspace,
    /// Tr[(I-P) ρ_G (I-P)].
    pub outside_target_mass: f64,
    /// Dimension of the target subspace.
    pub target_dim: usize,
}

/// Rates a source state against a target: computes the overlap family, the
/// suitability, and both upper bounds with their applicability.
pub fn suitability(gun: &DensityMatrix, target: &TargetSpec) -> Result<MetricReport> {
    if !gun.basis().same_basis(target.basis()) {
        return Err(CoreError::BasisMismatch(
            "source and target live on different bases".into(),
        ));
    }
    let f_gt = overlap(gun, target.state())?;
    let f_tt = target.f_tt();
    let f_gg = purity(gun);
    let f1_gg = single_photon_overlap(gun, gun)?;
    let s = f_gt / f_tt;

    // Mass outside the target subspace, Tr[(I-P) ρ (I-P)] = Tr ρ - Tr(P ρ)
    // for a projector P; computed from the literal trace so an unnormalized
    // input shows up rather than cancelling.
    let p = target.projector();
    let mut inside = 0.0;
    for i in 0..gun.dim() {
        for j in 0..gun.dim() {
            inside += (p[(i, j)] * gun.matrix()[(j, i)]).re;
        }
    }
    let outside = gun.trace() - inside;

    Ok(MetricReport {
        f_gt,
        f_tt,
        f_gg,
        f1_gg,
        suitability: s,
        cs_bound: (f_gg / f_tt).sqrt(),
        purity_bound: f_gg / f_tt,
        purity_bound_applicable: outside <= tol::VALIDATION,
        outside_target_mass: outside,
        target_dim: target.dim(),
    })
}
