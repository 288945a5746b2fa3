//! Source ("gun") models realized as density matrices, and the
//! key-distribution security figures derived from them.
//!
//! Every model is built around the same story: the application asks for one
//! photon in a fixed polarization; real sources add arrival-time jitter
//! (mass spread over bins), multi-photon contamination, or vacuum. The
//! security-relevant split is
//!
//! * `s_gt`, the mass the receiving application accepts, and
//! * `s_ge`, the multi-photon mass an eavesdropper can tap without
//!   touching the photon the receiver keeps.
//!
//! For the heralded-down-conversion model with two-photon fraction ε these
//! are exactly 1 − ε and ε.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::fock::ops::apply_creation_terms;
use crate::fock::{tensor_product, DensityMatrix, FockBasis, ModeSpace, StateVector};
use crate::metrics;
use crate::targets::TargetSpec;
use crate::tol;
use crate::{C64, CVector};

/// Normalized two-component polarization amplitude, ordered as the space's
/// declared polarization labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Polarization(pub [C64; 2]);

impl Polarization {
    /// Validates normalization; amplitudes are kept as given.
    pub fn new(amplitudes: [C64; 2]) -> Result<Self> {
        let norm = (amplitudes[0].norm_sqr() + amplitudes[1].norm_sqr()).sqrt();
        if (norm - 1.0).abs() > tol::VALIDATION {
            return Err(CoreError::Normalization(format!(
                "polarization amplitude has norm {norm}, expected 1"
            )));
        }
        Ok(Self(amplitudes))
    }

    /// First declared label (conventionally H).
    pub fn h() -> Self {
        Self([C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
    }

    /// Second declared label (conventionally V).
    pub fn v() -> Self {
        Self([C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
    }

    /// (H + V)/√2.
    pub fn diagonal() -> Self {
        let inv = 1.0 / 2f64.sqrt();
        Self([C64::new(inv, 0.0), C64::new(inv, 0.0)])
    }

    /// (H − V)/√2.
    pub fn antidiagonal() -> Self {
        let inv = 1.0 / 2f64.sqrt();
        Self([C64::new(inv, 0.0), C64::new(-inv, 0.0)])
    }

    /// (H + iV)/√2.
    pub fn left_circular() -> Self {
        let inv = 1.0 / 2f64.sqrt();
        Self([C64::new(inv, 0.0), C64::new(0.0, inv)])
    }

    /// (H − iV)/√2.
    pub fn right_circular() -> Self {
        let inv = 1.0 / 2f64.sqrt();
        Self([C64::new(inv, 0.0), C64::new(0.0, -inv)])
    }
}

/// The four-state alphabet used by the standard prepare-and-measure
/// key-distribution protocol: H, V, and the two circular states. Averaging
/// equal-weight pulses over it leaves the polarization maximally mixed.
pub fn bb84_alphabet() -> [Polarization; 4] {
    [
        Polarization::h(),
        Polarization::v(),
        Polarization::left_circular(),
        Polarization::right_circular(),
    ]
}

/// Where a single photon sits across the arrival bins.
#[derive(Debug, Clone, PartialEq)]
pub enum BinProfile {
    /// Delta on one bin.
    Bin(usize),
    /// Normalized amplitude over all bins (coherent superposition).
    Amplitudes(Vec<C64>),
}

impl Default for BinProfile {
    fn default() -> Self {
        BinProfile::Bin(0)
    }
}

/// Declarative source description, realized on a basis by [`realize_gun`].
///
/// Simple kinds occupy a single spatial arm; `Product` combines two simple
/// sources on the two arms of a two-arm basis. When the space declares
/// polarization labels there must be exactly two, and a missing
/// `polarization` defaults to the first label.
#[derive(Debug, Clone)]
pub enum GunSpec {
    /// Exactly one photon in a pure internal state: polarization times a
    /// bin profile.
    Ideal {
        polarization: Option<Polarization>,
        bins: BinProfile,
    },
    /// One photon whose arrival bin is classical noise: an incoherent
    /// mixture over bins with the given weights (uniform when omitted).
    Jittered {
        polarization: Option<Polarization>,
        bin_weights: Option<Vec<f64>>,
    },
    /// Attenuated-laser model: a truncated coherent state with amplitude
    /// `alpha` in one bin. `heralded` conditions on at least one photon.
    /// Phase is kept: coherences between number sectors survive.
    Coherent {
        alpha: C64,
        polarization: Option<Polarization>,
        bin: usize,
        heralded: bool,
    },
    /// Heralded down-conversion with double-pair contamination: no vacuum,
    /// one photon with probability 1 − epsilon, two photons (in the same
    /// polarization and bin pattern) with probability epsilon.
    SpdcHeralded {
        polarization: Option<Polarization>,
        bin_weights: Option<Vec<f64>>,
        epsilon: f64,
    },
    /// Two independent sources on the two arms of a two-arm basis.
    Product {
        left: Box<GunSpec>,
        right: Box<GunSpec>,
    },
}

/// Per-polarization-slot amplitudes for a gun on this space: `[1]` for
/// spaces without polarization, two amplitudes otherwise.
fn resolve_polarization(space: &ModeSpace, pol: &Option<Polarization>) -> Result<Vec<C64>> {
    match (space.polarization_labels().len(), pol) {
        (0, None) => Ok(vec![C64::new(1.0, 0.0)]),
        (0, Some(_)) => Err(CoreError::InvalidGun(
            "polarization given but the space has no polarization labels".into(),
        )),
        (2, maybe) => {
            let p = maybe.clone().unwrap_or_else(Polarization::h);
            Ok(vec![p.0[0], p.0[1]])
        }
        (n, _) => Err(CoreError::InvalidGun(format!(
            "source models support exactly two polarization labels, space has {n}"
        ))),
    }
}

/// Validated bin weights: uniform when omitted.
fn resolve_weights(space: &ModeSpace, weights: &Option<Vec<f64>>) -> Result<Vec<f64>> {
    let d = space.aux_bins();
    match weights {
        None => Ok(vec![1.0 / d as f64; d]),
        Some(w) => {
            if w.len() != d {
                return Err(CoreError::InvalidGun(format!(
                    "{} bin weights for a space with {d} bins",
                    w.len()
                )));
            }
            let mut sum = 0.0;
            for &x in w {
                if !x.is_finite() || x < 0.0 {
                    return Err(CoreError::InvalidGun(format!(
                        "bin weight {x} is not a finite nonnegative number"
                    )));
                }
                sum += x;
            }
            if (sum - 1.0).abs() > tol::VALIDATION {
                return Err(CoreError::InvalidGun(format!(
                    "bin weights sum to {sum}, expected 1"
                )));
            }
            Ok(w.clone())
        }
    }
}

/// Creation terms for one photon with the given polarization amplitudes in
/// the given bin of a single-arm space.
fn dressed_creation_terms(
    basis: &FockBasis,
    pol: &[C64],
    bin: usize,
) -> Result<Vec<(usize, C64)>> {
    let space = basis.space();
    let spatial = &space.spatial_labels()[0];
    let mut terms = Vec::new();
    if space.polarization_labels().is_empty() {
        terms.push((space.mode_index(spatial, None, bin)?, pol[0]));
    } else {
        for (pi, label) in space.polarization_labels().iter().enumerate() {
            terms.push((space.mode_index(spatial, Some(label), bin)?, pol[pi]));
        }
    }
    Ok(terms)
}

/// Pure n-photon state (Â†)ⁿ|0⟩/√(n!) of the dressed mode Â† given by the
/// creation terms.
fn dressed_number_state(
    basis: &FockBasis,
    terms: &[(usize, C64)],
    n: usize,
) -> Result<StateVector> {
    if n > basis.n_max() {
        return Err(CoreError::PhotonNumberOutOfRange {
            n,
            n_max: basis.n_max(),
        });
    }
    let mut v = CVector::zeros(basis.dim());
    v[0] = C64::new(1.0, 0.0);
    for _ in 0..n {
        v = apply_creation_terms(basis, terms, &v);
    }
    StateVector::new(basis.clone(), v)
}

fn require_single_arm(basis: &FockBasis, kind: &str) -> Result<()> {
    let arms = basis.space().spatial_labels().len();
    if arms != 1 {
        return Err(CoreError::InvalidGun(format!(
            "{kind} source occupies one spatial arm, the basis has {arms}"
        )));
    }
    Ok(())
}

/// Realizes a source description as a density matrix on the basis.
pub fn realize_gun(spec: &GunSpec, basis: &FockBasis) -> Result<DensityMatrix> {
    let space = basis.space();
    match spec {
        GunSpec::Ideal { polarization, bins } => {
            require_single_arm(basis, "ideal")?;
            if basis.n_max() < 1 {
                return Err(CoreError::InvalidGun(
                    "basis must allow at least one photon".into(),
                ));
            }
            let pol = resolve_polarization(space, polarization)?;
            let bin_amps: Vec<C64> = match bins {
                BinProfile::Bin(b) => {
                    if *b >= space.aux_bins() {
                        return Err(CoreError::InvalidGun(format!(
                            "bin {b} out of range (space has {} bins)",
                            space.aux_bins()
                        )));
                    }
                    (0..space.aux_bins())
                        .map(|i| C64::new(if i == *b { 1.0 } else { 0.0 }, 0.0))
                        .collect()
                }
                BinProfile::Amplitudes(a) => {
                    if a.len() != space.aux_bins() {
                        return Err(CoreError::InvalidGun(format!(
                            "{} bin amplitudes for a space with {} bins",
                            a.len(),
                            space.aux_bins()
                        )));
                    }
                    let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    if (norm - 1.0).abs() > tol::VALIDATION {
                        return Err(CoreError::InvalidGun(format!(
                            "bin amplitudes have norm {norm}, expected 1"
                        )));
                    }
                    a.clone()
                }
            };
            let mut terms = Vec::new();
            for (bin, amp) in bin_amps.iter().enumerate() {
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                for (mode, c) in dressed_creation_terms(basis, &pol, bin)? {
                    terms.push((mode, c * amp));
                }
            }
            Ok(DensityMatrix::from_pure(&dressed_number_state(
                basis, &terms, 1,
            )?))
        }

        GunSpec::Jittered {
            polarization,
            bin_weights,
        } => {
            require_single_arm(basis, "jittered")?;
            if basis.n_max() < 1 {
                return Err(CoreError::InvalidGun(
                    "basis must allow at least one photon".into(),
                ));
            }
            let pol = resolve_polarization(space, polarization)?;
            let weights = resolve_weights(space, bin_weights)?;
            let mut parts = Vec::new();
            for (bin, &w) in weights.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let terms = dressed_creation_terms(basis, &pol, bin)?;
                let one = dressed_number_state(basis, &terms, 1)?;
                parts.push((w, DensityMatrix::from_pure(&one)));
            }
            DensityMatrix::mixture(&parts)
        }

        GunSpec::Coherent {
            alpha,
            polarization,
            bin,
            heralded,
        } => {
            require_single_arm(basis, "coherent")?;
            if *bin >= space.aux_bins() {
                return Err(CoreError::InvalidGun(format!(
                    "bin {bin} out of range (space has {} bins)",
                    space.aux_bins()
                )));
            }
            let pol = resolve_polarization(space, polarization)?;
            let terms = dressed_creation_terms(basis, &pol, *bin)?;
            let mu = alpha.norm_sqr();

            // Kept Poisson mass p_n = e^{-μ} μⁿ/n! for n ≤ n_max; the rest
            // is truncation loss, conditioned on non-vacuum when heralding.
            let mut p = (-mu).exp();
            let mut kept = 0.0;
            let mut masses = Vec::with_capacity(basis.n_max() + 1);
            for n in 0..=basis.n_max() {
                if n > 0 {
                    p *= mu / n as f64;
                }
                masses.push(p);
                kept += p;
            }
            let loss = if *heralded {
                let nonvac = 1.0 - masses[0];
                if nonvac <= 0.0 {
                    return Err(CoreError::InvalidGun(
                        "heralded coherent source needs alpha != 0".into(),
                    ));
                }
                (1.0 - kept) / nonvac
            } else {
                1.0 - kept
            };
            if loss > tol::COHERENT_TRUNCATION_LOSS {
                return Err(CoreError::TruncationLoss {
                    loss,
                    tol: tol::COHERENT_TRUNCATION_LOSS,
                });
            }

            // Σₙ (αⁿ/n!) (Â†)ⁿ|0⟩, i.e. amplitude αⁿ/√(n!) on |n⟩ of the
            // dressed mode; normalization happens in StateVector::new.
            let mut v = CVector::zeros(basis.dim());
            let mut rung = CVector::zeros(basis.dim());
            rung[0] = C64::new(1.0, 0.0);
            let mut coeff = C64::new(1.0, 0.0);
            let start = usize::from(*heralded);
            for n in 0..=basis.n_max() {
                if n > 0 {
                    rung = apply_creation_terms(basis, &terms, &rung);
                    coeff *= *alpha / C64::new(n as f64, 0.0);
                }
                if n >= start {
                    v += &rung * coeff;
                }
            }
            Ok(DensityMatrix::from_pure(&StateVector::new(
                basis.clone(),
                v,
            )?))
        }

        GunSpec::SpdcHeralded {
            polarization,
            bin_weights,
            epsilon,
        } => {
            require_single_arm(basis, "heralded down-conversion")?;
            if !(0.0..=1.0).contains(epsilon) || !epsilon.is_finite() {
                return Err(CoreError::InvalidGun(format!(
                    "two-photon fraction epsilon = {epsilon} outside [0, 1]"
                )));
            }
            let needed = if *epsilon > 0.0 { 2 } else { 1 };
            if basis.n_max() < needed {
                return Err(CoreError::InvalidGun(format!(
                    "basis allows {} photons but the source emits up to {needed}",
                    basis.n_max()
                )));
            }
            let pol = resolve_polarization(space, polarization)?;
            let weights = resolve_weights(space, bin_weights)?;
            let mut parts = Vec::new();
            for (bin, &w) in weights.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let terms = dressed_creation_terms(basis, &pol, bin)?;
                if *epsilon < 1.0 {
                    let one = dressed_number_state(basis, &terms, 1)?;
                    parts.push((w * (1.0 - epsilon), DensityMatrix::from_pure(&one)));
                }
                if *epsilon > 0.0 {
                    let two = dressed_number_state(basis, &terms, 2)?;
                    parts.push((w * epsilon, DensityMatrix::from_pure(&two)));
                }
            }
            DensityMatrix::mixture(&parts)
        }

        GunSpec::Product { left, right } => {
            let arms = space.spatial_labels();
            if arms.len() != 2 {
                return Err(CoreError::InvalidGun(format!(
                    "product source needs a two-arm basis, the basis has {}",
                    arms.len()
                )));
            }
            if matches!(**left, GunSpec::Product { .. })
                || matches!(**right, GunSpec::Product { .. })
            {
                return Err(CoreError::InvalidGun(
                    "product sources do not nest".into(),
                ));
            }
            let sub = |arm: &str| -> Result<FockBasis> {
                let sp = ModeSpace::new(
                    vec![arm.to_string()],
                    space.polarization_labels().to_vec(),
                    space.aux_bins(),
                )?;
                FockBasis::enumerate(sp, basis.n_max())
            };
            let rho_l = realize_gun(left, &sub(&arms[0])?)?;
            let rho_r = realize_gun(right, &sub(&arms[1])?)?;
            tensor_product(&rho_l, &rho_r)
        }
    }
}

/// Security-relevant figures for one source against one target.
#[derive(Debug, Clone, Serialize)]
pub struct QkdSecurityReport {
    /// Suitability against the receiver's target: accepted mass.
    pub s_gt: f64,
    /// Multi-photon mass: the eavesdropper's tappable fraction.
    pub s_ge: f64,
    /// Two-photon fraction echoed from the source description, when it has
    /// one.
    pub epsilon: Option<f64>,
    /// Single-photon-projected self-overlap of the source.
    pub f1_gg: f64,
}

/// Rates a source for key distribution: accepted mass `s_gt`, tappable
/// multi-photon mass `s_ge`, and the single-photon self-overlap.
pub fn qkd_security(
    spec: &GunSpec,
    basis: &FockBasis,
    target: &TargetSpec,
) -> Result<QkdSecurityReport> {
    let rho = realize_gun(spec, basis)?;
    let report = metrics::suitability(&rho, target)?;
    Ok(QkdSecurityReport {
        s_gt: report.suitability,
        s_ge: rho.multi_photon_mass(),
        epsilon: match spec {
            GunSpec::SpdcHeralded { epsilon, .. } => Some(*epsilon),
            _ => None,
        },
        f1_gg: report.f1_gg,
    })
}

/// Two-photon fraction of a heralded pair source inferred from pair
/// statistics: Poisson pair number with mean `mu`, herald detector
/// efficiency `eta`, truncated at `n_cut` pairs.
///
/// ε = Σ_{n≥2} P(n)(1−(1−η)ⁿ) / Σ_{n≥1} P(n)(1−(1−η)ⁿ), the fraction of
/// heralded events caused by more than one pair. Increases with `mu`
/// (brighter pumping makes double pairs likelier) and decreases with
/// `eta`: a lossy herald clicks with probability growing in n, which
/// biases the heralded ensemble toward multi-pair events, and that bias is
/// strongest at low efficiency. At η = 1 it reduces to P(n≥2 | n≥1).
pub fn epsilon_from_pair_statistics(mu: f64, eta: f64, n_cut: usize) -> Result<f64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(CoreError::Domain(format!(
            "mean pair number mu = {mu} must be positive"
        )));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(CoreError::Domain(format!(
            "herald efficiency eta = {eta} outside (0, 1]"
        )));
    }
    if n_cut < 2 {
        return Err(CoreError::Domain(format!(
            "n_cut = {n_cut} too small to see multi-pair events"
        )));
    }
    let mut pois = (-mu).exp();
    let mut heralded = 0.0;
    let mut multi = 0.0;
    for n in 1..=n_cut {
        pois *= mu / n as f64;
        let click = 1.0 - (1.0 - eta).powi(n as i32);
        heralded += pois * click;
        if n >= 2 {
            multi += pois * click;
        }
    }
    Ok(multi / heralded)
}

/// The source as an eavesdropper models it: the uniform average over the
/// alphabet of polarization settings. For the standard four-state alphabet
/// the one-photon polarization sector averages to the maximally mixed
/// state.
pub fn eve_view(
    spec: &GunSpec,
    basis: &FockBasis,
    alphabet: &[Polarization],
) -> Result<DensityMatrix> {
    if alphabet.is_empty() {
        return Err(CoreError::InvalidGun("empty alphabet".into()));
    }
    let w = 1.0 / alphabet.len() as f64;
    let mut parts = Vec::with_capacity(alphabet.len());
    for p in alphabet {
        let with_p = match spec {
            GunSpec::Ideal { bins, .. } => GunSpec::Ideal {
                polarization: Some(p.clone()),
                bins: bins.clone(),
            },
            GunSpec::Jittered { bin_weights, .. } => GunSpec::Jittered {
                polarization: Some(p.clone()),
                bin_weights: bin_weights.clone(),
            },
            GunSpec::Coherent {
                alpha,
                bin,
                heralded,
                ..
            } => GunSpec::Coherent {
                alpha: *alpha,
                polarization: Some(p.clone()),
                bin: *bin,
                heralded: *heralded,
            },
            GunSpec::SpdcHeralded {
                bin_weights,
                epsilon,
                ..
            } => GunSpec::SpdcHeralded {
                polarization: Some(p.clone()),
                bin_weights: bin_weights.clone(),
                epsilon: *epsilon,
            },
            GunSpec::Product { .. } => {
                return Err(CoreError::InvalidGun(
                    "alphabet averaging applies to single-arm sources".into(),
                ))
            }
        };
        parts.push((w, realize_gun(&with_p, basis)?));
    }
    DensityMatrix::mixture(&parts)
}
