//! Passive linear optics on the truncated Fock space: the balanced beam
//! splitter and the two-photon interference (coincidence) harness.

use crate::error::{CoreError, Result};
use crate::fock::ops::apply_creation_terms;
use crate::fock::{tensor_product, DensityMatrix, FockBasis, ModeSpace, StateVector};
use crate::guns::{realize_gun, GunSpec};
use crate::metrics;
use crate::targets;
use crate::tol;
use crate::{C64, CMatrix, CVector};

/// Balanced (50:50) beam splitter between two spatial arms, lifted to the
/// Fock basis.
///
/// Convention, per shared (polarization, bin) label with `a† ≡` first arm
/// and `b† ≡` second arm:
///
/// ```text
/// a† → (a† + b†)/√2        b† → (a† − b†)/√2
/// ```
///
/// so a cross-arm pair interferes as
/// `|1,1⟩ → (|2,0⟩ − |0,2⟩)/√2`. The lift is photon-number conserving and
/// unitary on every number sector.
#[derive(Debug, Clone)]
pub struct BeamSplitter {
    basis: FockBasis,
    unitary: CMatrix,
}

/// Builds the balanced beam splitter mixing two spatial arms of the basis.
/// Every other arm (if any) passes through untouched.
pub fn beam_splitter(basis: &FockBasis, arms: (&str, &str)) -> Result<BeamSplitter> {
    let space = basis.space();
    if arms.0 == arms.1 {
        return Err(CoreError::UnknownMode(format!(
            "beam splitter arms must differ (got {:?} twice)",
            arms.0
        )));
    }
    let range0 = space.modes_of_spatial(arms.0)?;
    let range1 = space.modes_of_spatial(arms.1)?;
    let modes = space.mode_count();

    // Single-particle map: column m holds the image of a†_m.
    let inv = 1.0 / 2f64.sqrt();
    let mut u1 = CMatrix::identity(modes, modes);
    for (m0, m1) in range0.zip(range1) {
        u1[(m0, m0)] = C64::new(inv, 0.0);
        u1[(m1, m0)] = C64::new(inv, 0.0);
        u1[(m0, m1)] = C64::new(inv, 0.0);
        u1[(m1, m1)] = C64::new(-inv, 0.0);
    }
    let unitary = lift_mode_map(basis, &u1)?;
    Ok(BeamSplitter {
        basis: basis.clone(),
        unitary,
    })
}

/// Lifts a unitary single-particle mode map to the truncated Fock basis by
/// rewriting each basis state's creation monomial in the new operators.
/// Exact for number-conserving maps: no truncation occurs because photon
/// number never exceeds the input state's total.
fn lift_mode_map(basis: &FockBasis, u1: &CMatrix) -> Result<CMatrix> {
    let dim = basis.dim();
    let modes = basis.space().mode_count();
    // Sparse column views of the single-particle map.
    let columns: Vec<Vec<(usize, C64)>> = (0..modes)
        .map(|m| {
            (0..modes)
                .filter(|&r| u1[(r, m)].norm_sqr() > 0.0)
                .map(|r| (r, u1[(r, m)]))
                .collect()
        })
        .collect();
    let mut u = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let occ = basis.occupation(j);
        let mut col = CVector::zeros(dim);
        col[0] = C64::new(1.0, 0.0);
        let mut norm = 1.0;
        for m in 0..modes {
            for _ in 0..occ[m] {
                col = apply_creation_terms(basis, &columns[m], &col);
            }
            for k in 1..=occ[m] {
                norm *= f64::from(k);
            }
        }
        col /= C64::new(norm.sqrt(), 0.0);
        u.set_column(j, &col);
    }
    let dev = (&u * u.adjoint() - CMatrix::identity(dim, dim))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if dev > tol::VALIDATION {
        return Err(CoreError::Domain(format!(
            "mode map did not lift to a unitary (deviation {dev:.3e}); \
             the single-particle map is not unitary"
        )));
    }
    Ok(u)
}

impl BeamSplitter {
    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    /// The lifted Fock-space unitary.
    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    /// U ρ U†.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if !rho.basis().same_basis(&self.basis) {
            return Err(CoreError::BasisMismatch(
                "state and beam splitter live on different bases".into(),
            ));
        }
        let m = &self.unitary * rho.matrix() * self.unitary.adjoint();
        Ok(DensityMatrix::from_parts_unchecked(self.basis.clone(), m))
    }

    /// U|ψ⟩.
    pub fn apply_state(&self, psi: &StateVector) -> Result<StateVector> {
        if !psi.basis().same_basis(&self.basis) {
            return Err(CoreError::BasisMismatch(
                "state and beam splitter live on different bases".into(),
            ));
        }
        StateVector::new(self.basis.clone(), &self.unitary * psi.amplitudes())
    }
}

/// Classifies two-photon diagonal mass for a two-arm basis: exactly one
/// photon on each arm (coincidence), both photons on one arm (bunched).
fn two_photon_masses(rho: &DensityMatrix) -> Result<(f64, f64)> {
    let space = rho.basis().space();
    if space.spatial_labels().len() != 2 {
        return Err(CoreError::InvalidModeSpace(format!(
            "coincidence needs exactly two spatial arms, space has {}",
            space.spatial_labels().len()
        )));
    }
    let arm0 = space.modes_of_spatial(&space.spatial_labels()[0])?;
    let mut coincidence = 0.0;
    let mut bunched = 0.0;
    for i in 0..rho.dim() {
        if rho.basis().total_photons(i) != 2 {
            continue;
        }
        let occ = rho.basis().occupation(i);
        let on_arm0: u32 = arm0.clone().map(|m| occ[m]).sum();
        let p = rho.matrix()[(i, i)].re;
        if on_arm0 == 1 {
            coincidence += p;
        } else {
            bunched += p;
        }
    }
    Ok((coincidence, bunched))
}

/// Probability that detectors on the two arms click together: total mass on
/// two-photon states with exactly one photon per arm, any internal label.
pub fn coincidence_probability(rho: &DensityMatrix) -> Result<f64> {
    Ok(two_photon_masses(rho)?.0)
}

/// Outcome of a two-photon interference experiment.
#[derive(Debug, Clone)]
pub struct HomResult {
    /// Mass on "one photon per arm" after the splitter.
    pub coincidence_probability: f64,
    /// Mass on "both photons one arm" after the splitter.
    pub same_arm_probability: f64,
    /// Mass outside the two-photon sector (vacuum, singles, higher).
    pub other_sector_probability: f64,
    /// Dip depth v = 1 − coincidence: 1 for indistinguishable pairs, 1/2
    /// for fully distinguishable ones.
    pub visibility: f64,
    /// Rating of the joint input against the source-side bunching target.
    pub source_suitability: f64,
    /// Joint state after the splitter.
    pub output_state: DensityMatrix,
}

/// Runs the interference experiment: realizes one source per arm, combines
/// them, applies the balanced splitter, and reads out coincidence mass.
///
/// `basis` must have exactly two spatial arms; each source is realized on
/// its own arm and the pair is combined by tensor product.
pub fn hom_visibility(gun1: &GunSpec, gun2: &GunSpec, basis: &FockBasis) -> Result<HomResult> {
    let space = basis.space();
    if space.spatial_labels().len() != 2 {
        return Err(CoreError::InvalidModeSpace(format!(
            "interference needs exactly two spatial arms, space has {}",
            space.spatial_labels().len()
        )));
    }
    let arm = |i: usize| -> Result<FockBasis> {
        let sp = ModeSpace::new(
            vec![space.spatial_labels()[i].clone()],
            space.polarization_labels().to_vec(),
            space.aux_bins(),
        )?;
        FockBasis::enumerate(sp, basis.n_max())
    };
    let rho1 = realize_gun(gun1, &arm(0)?)?;
    let rho2 = realize_gun(gun2, &arm(1)?)?;
    let joint = tensor_product(&rho1, &rho2)?;
    debug_assert!(joint.basis().same_basis(basis));

    let source_target = targets::hom_source_target(basis)?;
    let source_suitability = metrics::suitability(&joint, &source_target)?.suitability;

    let arms = (
        space.spatial_labels()[0].as_str(),
        space.spatial_labels()[1].as_str(),
    );
    let bs = beam_splitter(basis, arms)?;
    let output = bs.apply(&joint)?;
    let (coincidence, bunched) = two_photon_masses(&output)?;
    let other = 1.0 - (coincidence + bunched);
    Ok(HomResult {
        coincidence_probability: coincidence,
        same_arm_probability: bunched,
        other_sector_probability: other,
        visibility: 1.0 - coincidence,
        source_suitability,
        output_state: output,
    })
}
