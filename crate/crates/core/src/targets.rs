//! Acceptance subspaces: what the downstream application counts as "the
//! photon it asked for".
//!
//! A target is a subspace projector P together with the flat state
//! ρ_T = P / dim(P). With that normalization the suitability
//! S_GT = Tr(ρ_G ρ_T) / Tr(ρ_T²) of any source equals Tr(ρ_G P), the
//! probability mass the application accepts, because Tr(ρ_T²) = 1/dim(P).
//!
//! Three concrete targets are provided: the key-distribution target (fixed
//! polarization, any arrival bin) and the two-photon interference pair,
//! meaning the detector-side target spanning "both photons exit the same
//! arm" and its source-side preimage under the balanced beam splitter.

use crate::error::{CoreError, Result};
use crate::fock::{DensityMatrix, FockBasis, StateVector};
use crate::optics;
use crate::tol;
use crate::{C64, CMatrix};

/// Subspace target: projector, its dimension, and the flat state P/dim.
#[derive(Debug, Clone)]
pub struct TargetSpec {
    basis: FockBasis,
    projector: CMatrix,
    dim: usize,
    state: DensityMatrix,
    label: String,
}

impl TargetSpec {
    fn from_validated_projector(
        basis: FockBasis,
        projector: CMatrix,
        dim: usize,
        label: String,
    ) -> Self {
        let state = DensityMatrix::from_parts_unchecked(
            basis.clone(),
            &projector * C64::new(1.0 / dim as f64, 0.0),
        );
        Self {
            basis,
            projector,
            dim,
            state,
            label,
        }
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn projector(&self) -> &CMatrix {
        &self.projector
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The flat target state ρ_T = P / dim.
    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    /// Target self-overlap F_TT = Tr(ρ_T²) = 1/dim, exact by construction.
    pub fn f_tt(&self) -> f64 {
        1.0 / self.dim as f64
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Target spanning an explicit orthonormal family of states.
pub fn target_from_states(states: &[StateVector]) -> Result<TargetSpec> {
    let first = states
        .first()
        .ok_or_else(|| CoreError::InvalidTarget("empty state list".into()))?;
    let basis = first.basis().clone();
    for (i, a) in states.iter().enumerate() {
        if !a.basis().same_basis(&basis) {
            return Err(CoreError::BasisMismatch(
                "target states live on different bases".into(),
            ));
        }
        for (j, b) in states.iter().enumerate().take(i + 1) {
            let g = a.inner(b)?;
            let want = if i == j { 1.0 } else { 0.0 };
            if (g - C64::new(want, 0.0)).norm() > tol::VALIDATION {
                return Err(CoreError::InvalidTarget(format!(
                    "states {j} and {i} are not orthonormal: ⟨{j}|{i}⟩ = {g}"
                )));
            }
        }
    }
    let mut p = CMatrix::zeros(basis.dim(), basis.dim());
    for s in states {
        p += s.amplitudes() * s.amplitudes().adjoint();
    }
    let dim = states.len();
    Ok(TargetSpec::from_validated_projector(
        basis,
        p,
        dim,
        format!("span of {dim} states"),
    ))
}

/// Target from an explicit projector matrix. The matrix must be Hermitian
/// and idempotent within the validation tolerance and project onto at least
/// one dimension.
pub fn target_from_projector(basis: FockBasis, projector: CMatrix) -> Result<TargetSpec> {
    if projector.nrows() != basis.dim() || projector.ncols() != basis.dim() {
        return Err(CoreError::BasisMismatch(format!(
            "projector is {}x{}, basis dimension is {}",
            projector.nrows(),
            projector.ncols(),
            basis.dim()
        )));
    }
    let herm_dev = (&projector - projector.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if herm_dev > tol::VALIDATION {
        return Err(CoreError::InvalidTarget(format!(
            "projector not Hermitian (deviation {herm_dev:.3e})"
        )));
    }
    let idem_dev = (&projector * &projector - &projector)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if idem_dev > tol::VALIDATION {
        return Err(CoreError::InvalidTarget(format!(
            "projector not idempotent (deviation {idem_dev:.3e})"
        )));
    }
    let tr = projector.trace();
    let dim = tr.re.round();
    if (tr.re - dim).abs() > tol::VALIDATION || tr.im.abs() > tol::VALIDATION || dim < 1.0 {
        return Err(CoreError::InvalidTarget(format!(
            "projector trace {tr} is not a positive integer"
        )));
    }
    let dim = dim as usize;
    Ok(TargetSpec::from_validated_projector(
        basis,
        projector,
        dim,
        format!("{dim}-dimensional projector"),
    ))
}

/// Key-distribution target: exactly one photon, in a fixed polarization
/// state, in any arrival bin.
///
/// `polarization` holds amplitudes on the two declared polarization labels
/// in declaration order and must be normalized. The subspace has one basis
/// vector per bin, so dim = number of bins and F_TT = 1/bins: arrival
/// jitter costs a source nothing here.
pub fn qkd_target(basis: &FockBasis, polarization: [C64; 2]) -> Result<TargetSpec> {
    let space = basis.space();
    if space.spatial_labels().len() != 1 {
        return Err(CoreError::InvalidTarget(format!(
            "key-distribution target needs a single spatial mode, space has {}",
            space.spatial_labels().len()
        )));
    }
    if space.polarization_labels().len() != 2 {
        return Err(CoreError::InvalidTarget(format!(
            "key-distribution target needs two polarization labels, space has {}",
            space.polarization_labels().len()
        )));
    }
    if basis.n_max() < 1 {
        return Err(CoreError::InvalidTarget(
            "basis must allow at least one photon".into(),
        ));
    }
    let norm = (polarization[0].norm_sqr() + polarization[1].norm_sqr()).sqrt();
    if (norm - 1.0).abs() > tol::VALIDATION {
        return Err(CoreError::InvalidTarget(format!(
            "polarization amplitude has norm {norm}, expected 1"
        )));
    }
    let spatial = &space.spatial_labels()[0];
    let pols = space.polarization_labels().to_vec();
    let mut states = Vec::with_capacity(space.aux_bins());
    for bin in 0..space.aux_bins() {
        let mut v = crate::CVector::zeros(basis.dim());
        for (pi, pol_label) in pols.iter().enumerate() {
            let mode = space.mode_index(spatial, Some(pol_label), bin)?;
            let mut occ = vec![0u32; space.mode_count()];
            occ[mode] = 1;
            let idx = basis
                .position(&occ)
                .expect("one-photon state exists for n_max >= 1");
            v[idx] = polarization[pi];
        }
        states.push(StateVector::new(basis.clone(), v)?);
    }
    let d = space.aux_bins();
    Ok(target_from_states(&states)?
        .with_label(format!("fixed polarization over {d} bins")))
}

/// Indices of all two-photon basis states with both photons on the same
/// spatial arm.
fn same_arm_pair_indices(basis: &FockBasis) -> Result<Vec<usize>> {
    let space = basis.space();
    if space.spatial_labels().len() != 2 {
        return Err(CoreError::InvalidTarget(format!(
            "interference target needs exactly two spatial modes, space has {}",
            space.spatial_labels().len()
        )));
    }
    if basis.n_max() < 2 {
        return Err(CoreError::InvalidTarget(
            "basis must allow two photons".into(),
        ));
    }
    let arm0 = space.modes_of_spatial(&space.spatial_labels()[0])?;
    let mut indices = Vec::new();
    for i in 0..basis.dim() {
        if basis.total_photons(i) != 2 {
            continue;
        }
        let occ = basis.occupation(i);
        let on_arm0: u32 = arm0.clone().map(|m| occ[m]).sum();
        if on_arm0 == 0 || on_arm0 == 2 {
            indices.push(i);
        }
    }
    Ok(indices)
}

/// Detector-side interference target: the span of every two-photon state
/// with both photons leaving the same arm, the signature of perfect
/// bunching after a balanced beam splitter.
pub fn hom_detector_target(basis: &FockBasis) -> Result<TargetSpec> {
    let indices = same_arm_pair_indices(basis)?;
    let mut p = CMatrix::zeros(basis.dim(), basis.dim());
    for &i in &indices {
        p[(i, i)] = C64::new(1.0, 0.0);
    }
    let dim = indices.len();
    Ok(TargetSpec::from_validated_projector(
        basis.clone(),
        p,
        dim,
        "two photons on one arm (detector side)".into(),
    ))
}

/// Source-side interference target: the preimage of
/// [`hom_detector_target`] under the balanced beam splitter, P_src = U† P U.
/// A source pair rates S = 1 here exactly when its output bunches
/// perfectly.
pub fn hom_source_target(basis: &FockBasis) -> Result<TargetSpec> {
    let detector = hom_detector_target(basis)?;
    let space = basis.space();
    let arms = (
        space.spatial_labels()[0].as_str(),
        space.spatial_labels()[1].as_str(),
    );
    let bs = optics::beam_splitter(basis, arms)?;
    let u = bs.unitary();
    let p = u.adjoint() * detector.projector() * u;
    Ok(TargetSpec::from_validated_projector(
        basis.clone(),
        p,
        detector.dim(),
        "bunches perfectly at the splitter (source side)".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeSpace;
    use crate::metrics;

    const TOL: f64 = 1e-12;

    fn qkd_basis(bins: usize) -> FockBasis {
        let sp = ModeSpace::new(
            vec!["s".into()],
            vec!["H".into(), "V".into()],
            bins,
        )
        .unwrap();
        FockBasis::enumerate(sp, 2).unwrap()
    }

    fn hom_basis(bins: usize) -> FockBasis {
        let sp = ModeSpace::new(vec!["c".into(), "d".into()], vec![], bins).unwrap();
        FockBasis::enumerate(sp, 2).unwrap()
    }

    fn one(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn span_target_requires_orthonormal_states() {
        let b = qkd_basis(1);
        let h = StateVector::single_photon(b.clone(), 0).unwrap();
        let v = StateVector::single_photon(b.clone(), 1).unwrap();
        assert!(target_from_states(&[h.clone(), v]).is_ok());
        assert!(target_from_states(&[h.clone(), h.clone()]).is_err());
        assert!(target_from_states(&[]).is_err());
        let plus =
            StateVector::superpose(&[(one(1.0), h.clone()), (one(1.0), {
                StateVector::single_photon(b, 1).unwrap()
            })])
            .unwrap();
        assert!(target_from_states(&[h, plus]).is_err());
    }

    #[test]
    fn projector_target_validates_input() {
        let b = qkd_basis(1);
        let d = b.dim();
        let p = crate::fock::number_projector(&b, 1).unwrap();
        let t = target_from_projector(b.clone(), p).unwrap();
        assert_eq!(t.dim(), 2);
        assert!((t.f_tt() - 0.5).abs() < TOL);
        // Not idempotent.
        let half = CMatrix::identity(d, d) * one(0.5);
        assert!(target_from_projector(b.clone(), half).is_err());
        // Not Hermitian.
        let mut skew = CMatrix::zeros(d, d);
        skew[(0, 1)] = one(1.0);
        assert!(target_from_projector(b.clone(), skew).is_err());
        // Zero projector.
        assert!(target_from_projector(b, CMatrix::zeros(d, d)).is_err());
    }

    #[test]
    fn target_state_self_overlap_matches_analytic_f_tt() {
        let b = qkd_basis(3);
        let t = qkd_target(&b, [one(1.0), one(0.0)]).unwrap();
        assert_eq!(t.dim(), 3);
        let via_overlap = metrics::overlap(t.state(), t.state()).unwrap();
        assert!((via_overlap - t.f_tt()).abs() < TOL);
        assert!((t.f_tt() - 1.0 / 3.0).abs() < TOL);
    }

    #[test]
    fn qkd_target_accepts_any_bin() {
        // An aligned one-photon source rates S = 1 regardless of bin.
        let b = qkd_basis(3);
        let t = qkd_target(&b, [one(1.0), one(0.0)]).unwrap();
        for bin in 0..3 {
            let mode = b.space().mode_index("s", Some("H"), bin).unwrap();
            let s = StateVector::single_photon(b.clone(), mode).unwrap();
            let rho = DensityMatrix::from_pure(&s);
            let r = metrics::suitability(&rho, &t).unwrap();
            assert!((r.suitability - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn qkd_target_scores_polarization_overlap() {
        // Circular target vs linear source: S = |⟨L|H⟩|² d / d = 1/2.
        let b = qkd_basis(2);
        let inv = 1.0 / 2f64.sqrt();
        let t = qkd_target(&b, [one(inv), C64::new(0.0, inv)]).unwrap();
        let mode = b.space().mode_index("s", Some("H"), 0).unwrap();
        let rho =
            DensityMatrix::from_pure(&StateVector::single_photon(b.clone(), mode).unwrap());
        let r = metrics::suitability(&rho, &t).unwrap();
        assert!((r.suitability - 0.5).abs() < 1e-9);
    }

    #[test]
    fn qkd_target_rejects_bad_input() {
        let b = qkd_basis(1);
        assert!(qkd_target(&b, [one(1.0), one(1.0)]).is_err());
        let no_pol = FockBasis::enumerate(ModeSpace::bins_only(2).unwrap(), 1).unwrap();
        assert!(qkd_target(&no_pol, [one(1.0), one(0.0)]).is_err());
    }

    #[test]
    fn detector_target_dimension_counts_same_arm_pairs() {
        // One bin: {|2,0⟩, |0,2⟩}. Two bins: per arm (2,0),(1,1),(0,2) on
        // the arm's bins, so 3 per arm.
        assert_eq!(hom_detector_target(&hom_basis(1)).unwrap().dim(), 2);
        assert_eq!(hom_detector_target(&hom_basis(2)).unwrap().dim(), 6);
    }

    #[test]
    fn source_target_rates_cross_arm_pair_perfectly() {
        // |1,1⟩ maps to (|2,0⟩ - |0,2⟩)/√2, fully inside the detector span.
        let b = hom_basis(1);
        let t = hom_source_target(&b).unwrap();
        assert_eq!(t.dim(), 2);
        let s = StateVector::basis_state(b, &[1, 1]).unwrap();
        let rho = DensityMatrix::from_pure(&s);
        let r = metrics::suitability(&rho, &t).unwrap();
        assert!((r.suitability - 1.0).abs() < 1e-9);
    }

    #[test]
    fn source_target_rejects_antisymmetric_pair() {
        // (|1,0;0,1⟩ - |0,1;1,0⟩)/√2 across different bins never bunches.
        let b = hom_basis(2);
        let t = hom_source_target(&b).unwrap();
        let s = StateVector::superpose(&[
            (one(1.0), StateVector::basis_state(b.clone(), &[1, 0, 0, 1]).unwrap()),
            (one(-1.0), StateVector::basis_state(b.clone(), &[0, 1, 1, 0]).unwrap()),
        ])
        .unwrap();
        let rho = DensityMatrix::from_pure(&s);
        let r = metrics::suitability(&rho, &t).unwrap();
        assert!(r.suitability.abs() < 1e-9);
    }
}
