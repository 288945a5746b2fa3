//! Density matrices on a truncated Fock basis, with validation, repair,
//! composition (tensor product) and reduction (partial trace).

use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::fock::basis::FockBasis;
use crate::fock::space::ModeSpace;
use crate::fock::state::StateVector;
use crate::tol;
use crate::{C64, CMatrix};

/// Validation report for a candidate density matrix. `passes` is true when
/// the matrix is Hermitian and trace-one within the tolerance and has no
/// eigenvalue below `-tolerance`.
#[derive(Debug, Clone, Copy)]
pub struct DensityCheck {
    pub hermiticity_dev: f64,
    pub trace_dev: f64,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub passes: bool,
}

/// Mixed state on a [`FockBasis`]: Hermitian, unit-trace, positive
/// semidefinite within [`tol::VALIDATION`].
///
/// Constructors either guarantee validity structurally (pure states,
/// mixtures of valid states) or validate explicitly
/// ([`from_matrix`](Self::from_matrix)). Small negative eigenvalues from
/// round-off are never clamped silently; use
/// [`repair_psd`](Self::repair_psd) to clamp them deliberately.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    basis: FockBasis,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// |ψ⟩⟨ψ| of a normalized pure state.
    pub fn from_pure(state: &StateVector) -> Self {
        let v = state.amplitudes();
        Self {
            basis: state.basis().clone(),
            matrix: v * v.adjoint(),
        }
    }

    /// Convex mixture Σᵢ wᵢ ρᵢ. Weights must be nonnegative and sum to one
    /// within [`tol::VALIDATION`]; the result is renormalized by the exact
    /// weight sum so its trace is one to round-off.
    pub fn mixture(terms: &[(f64, DensityMatrix)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| CoreError::Normalization("empty mixture".into()))?;
        let basis = first.basis.clone();
        let mut sum = 0.0;
        for (w, rho) in terms {
            if *w < 0.0 || !w.is_finite() {
                return Err(CoreError::Normalization(format!(
                    "mixture weight {w} is not a finite nonnegative number"
                )));
            }
            if !rho.basis.same_basis(&basis) {
                return Err(CoreError::BasisMismatch(
                    "mixture terms live on different bases".into(),
                ));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > tol::VALIDATION {
            return Err(CoreError::Normalization(format!(
                "mixture weights sum to {sum}, expected 1"
            )));
        }
        let mut acc = CMatrix::zeros(basis.dim(), basis.dim());
        for (w, rho) in terms {
            acc += &rho.matrix * C64::new(w / sum, 0.0);
        }
        Ok(Self { basis, matrix: acc })
    }

    /// Wraps an explicit matrix after validating it at [`tol::VALIDATION`].
    pub fn from_matrix(basis: FockBasis, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(CoreError::BasisMismatch(format!(
                "matrix is {}x{}, basis dimension is {}",
                matrix.nrows(),
                matrix.ncols(),
                basis.dim()
            )));
        }
        let rho = Self { basis, matrix };
        let check = rho.validate(tol::VALIDATION);
        if !check.passes {
            return Err(CoreError::InvalidDensity(format!(
                "hermiticity dev {:.3e}, trace dev {:.3e}, min eigenvalue {:.3e} (tolerance {:.1e})",
                check.hermiticity_dev, check.trace_dev, check.min_eigenvalue, check.tolerance
            )));
        }
        Ok(rho)
    }

    /// Identity / dim: the maximally mixed state.
    pub fn maximally_mixed(basis: FockBasis) -> Self {
        let d = basis.dim();
        let matrix = CMatrix::identity(d, d) * C64::new(1.0 / d as f64, 0.0);
        Self { basis, matrix }
    }

    /// Internal constructor for operations that preserve validity
    /// structurally (unitary conjugation, partial trace, ...).
    pub(crate) fn from_parts_unchecked(basis: FockBasis, matrix: CMatrix) -> Self {
        Self { basis, matrix }
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Re Tr ρ.
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Measures how far the matrix is from a valid density matrix.
    pub fn validate(&self, tolerance: f64) -> DensityCheck {
        let herm = &self.matrix - self.matrix.adjoint();
        let hermiticity_dev = herm.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let trace_dev = (self.matrix.trace().re - 1.0).abs().max(self.matrix.trace().im.abs());
        let min_eigenvalue = hermitian_eigenvalues(&self.matrix)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let passes = hermiticity_dev <= tolerance
            && trace_dev <= tolerance
            && min_eigenvalue >= -tolerance;
        DensityCheck {
            hermiticity_dev,
            trace_dev,
            min_eigenvalue,
            tolerance,
            passes,
        }
    }

    /// Clamps round-off eigenvalues in `[-tolerance, 0)` to zero and
    /// renormalizes the trace. Refuses matrices with eigenvalues below
    /// `-tolerance`: those are wrong, not noisy.
    pub fn repair_psd(&self, tolerance: f64) -> Result<Self> {
        let eig = hermitize(&self.matrix).symmetric_eigen();
        let mut min = f64::INFINITY;
        for &v in eig.eigenvalues.iter() {
            min = min.min(v);
        }
        if min < -tolerance {
            return Err(CoreError::NegativeEigenvalue {
                value: min,
                tol: tolerance,
            });
        }
        let clamped = eig.eigenvalues.map(|v| v.max(0.0));
        let total: f64 = clamped.iter().sum();
        if total <= 0.0 {
            return Err(CoreError::InvalidDensity(
                "all eigenvalues vanish after clamping".into(),
            ));
        }
        let diag = CMatrix::from_diagonal(&clamped.map(|v| C64::new(v / total, 0.0)));
        let m = &eig.eigenvectors * diag * eig.eigenvectors.adjoint();
        Ok(Self {
            basis: self.basis.clone(),
            matrix: m,
        })
    }

    /// Probability mass in the total-photon-number-`n` sector, Tr(P_n ρ).
    pub fn photon_number_mass(&self, n: usize) -> f64 {
        (0..self.dim())
            .filter(|&i| self.basis.total_photons(i) as usize == n)
            .map(|i| self.matrix[(i, i)].re)
            .sum()
    }

    /// Probability mass in all sectors with two or more photons.
    pub fn multi_photon_mass(&self) -> f64 {
        (2..=self.basis.n_max())
            .map(|n| self.photon_number_mass(n))
            .sum()
    }
}

/// Tensor product ρ_A ⊗ ρ_B re-expressed in the joint graded basis.
///
/// The operand spaces must share polarization labels and bin count and have
/// disjoint spatial labels; the joint space concatenates the spatial lists
/// (A first) and the joint photon cap is `max(n_max_A, n_max_B)`. Joint
/// components above the cap are discarded; if they carry probability mass
/// above [`tol::EXACT`] the product is refused rather than silently
/// truncated.
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let sa = a.basis().space();
    let sb = b.basis().space();
    if sa.polarization_labels() != sb.polarization_labels() || sa.aux_bins() != sb.aux_bins() {
        return Err(CoreError::BasisMismatch(
            "tensor factors must share polarization labels and bin count".into(),
        ));
    }
    for s in sb.spatial_labels() {
        if sa.spatial_labels().contains(s) {
            return Err(CoreError::BasisMismatch(format!(
                "tensor factors share spatial mode {s:?}"
            )));
        }
    }
    let joint_spatial: Vec<String> = sa
        .spatial_labels()
        .iter()
        .chain(sb.spatial_labels())
        .cloned()
        .collect();
    let joint_space = ModeSpace::new(
        joint_spatial,
        sa.polarization_labels().to_vec(),
        sa.aux_bins(),
    )?;
    let n_max = a.basis().n_max().max(b.basis().n_max());
    let joint = FockBasis::enumerate(joint_space, n_max)?;

    // Mass on discarded (total > n_max) components, from the diagonals.
    let mut discarded = 0.0;
    for ia in 0..a.dim() {
        let ta = a.basis().total_photons(ia) as usize;
        for ib in 0..b.dim() {
            if ta + b.basis().total_photons(ib) as usize > n_max {
                discarded += a.matrix()[(ia, ia)].re * b.matrix()[(ib, ib)].re;
            }
        }
    }
    if discarded > tol::EXACT {
        return Err(CoreError::TruncationLoss {
            loss: discarded,
            tol: tol::EXACT,
        });
    }

    // Joint occupations split as concat(occ_A, occ_B) because A's spatial
    // modes precede B's in the joint flat order.
    let ma = sa.mode_count();
    let lookup: Vec<Option<(usize, usize)>> = (0..joint.dim())
        .map(|i| {
            let occ = joint.occupation(i);
            let ia = a.basis().position(&occ[..ma])?;
            let ib = b.basis().position(&occ[ma..])?;
            Some((ia, ib))
        })
        .collect();
    let mut m = CMatrix::zeros(joint.dim(), joint.dim());
    for (i, &li) in lookup.iter().enumerate() {
        let Some((ia, ib)) = li else { continue };
        for (j, &lj) in lookup.iter().enumerate() {
            let Some((ja, jb)) = lj else { continue };
            m[(i, j)] = a.matrix()[(ia, ja)] * b.matrix()[(ib, jb)];
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(joint, m))
}

/// Partial trace keeping the listed spatial modes (each kept arm retains its
/// full polarization/bin structure). The kept labels must be a nonempty,
/// duplicate-free subset of the state's spatial modes; the result keeps the
/// original declaration order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[&str]) -> Result<DensityMatrix> {
    let space = rho.basis().space();
    if keep.is_empty() {
        return Err(CoreError::UnknownMode(
            "partial trace must keep at least one spatial mode".into(),
        ));
    }
    for (i, k) in keep.iter().enumerate() {
        if !space.spatial_labels().iter().any(|s| s == k) {
            return Err(CoreError::UnknownMode(format!("spatial mode {k:?}")));
        }
        if keep[..i].contains(k) {
            return Err(CoreError::UnknownMode(format!(
                "spatial mode {k:?} listed twice"
            )));
        }
    }
    let kept_labels: Vec<String> = space
        .spatial_labels()
        .iter()
        .filter(|s| keep.contains(&s.as_str()))
        .cloned()
        .collect();
    let mut kept_modes = Vec::new();
    let mut traced_modes = Vec::new();
    for s in space.spatial_labels() {
        let range = space.modes_of_spatial(s)?;
        if kept_labels.contains(s) {
            kept_modes.extend(range);
        } else {
            traced_modes.extend(range);
        }
    }
    let kept_space = ModeSpace::new(
        kept_labels,
        space.polarization_labels().to_vec(),
        space.aux_bins(),
    )?;
    let kept_basis = FockBasis::enumerate(kept_space, rho.basis().n_max())?;

    // Group joint indices by their traced-out occupation; entries within a
    // group contribute to the reduced matrix, across groups they vanish.
    let gather = |occ: &[u32], idx: &[usize]| -> Vec<u32> {
        idx.iter().map(|&m| occ[m]).collect()
    };
    let mut groups: BTreeMap<Vec<u32>, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..rho.dim() {
        let occ = rho.basis().occupation(i);
        let k = kept_basis
            .position(&gather(occ, &kept_modes))
            .expect("kept occupation within n_max must be enumerated");
        groups
            .entry(gather(occ, &traced_modes))
            .or_default()
            .push((i, k));
    }
    let mut m = CMatrix::zeros(kept_basis.dim(), kept_basis.dim());
    for members in groups.values() {
        for &(i, ki) in members {
            for &(j, kj) in members {
                m[(ki, kj)] += rho.matrix()[(i, j)];
            }
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(kept_basis, m))
}

/// (m + m†)/2, guarding eigendecomposition against round-off asymmetry.
pub(crate) fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigenvalues of the hermitized matrix, as reals.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    hermitize(m)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect()
}
