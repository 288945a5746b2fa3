//! Scenario files: strict parsing and validation.
//!
//! A scenario is one TOML document describing the mode space, the source
//! under test, the target application, and optionally a parameter sweep.
//! Parsing is strict: unknown keys are rejected so a typo cannot silently
//! change the physics. Validation happens up front so `rate validate` can
//! vet a file without running it.

use serde::Deserialize;

use rate_core::guns::Polarization;
use rate_core::tol;
use rate_core::{C64, FockBasis, ModeSpace};

use crate::error::{CliError, Result};

/// Which pipeline the scenario exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    /// Rate one source against one target.
    Suitability,
    /// Key-distribution rating: accepted mass, multi-photon leakage.
    QkdSecurity,
    /// Two-source interference at a balanced splitter.
    Hom,
    /// Interference dip traced over the wavepacket match gamma.
    HomDipScan,
}

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::Suitability => "suitability",
            Analysis::QkdSecurity => "qkd_security",
            Analysis::Hom => "hom",
            Analysis::HomDipScan => "hom_dip_scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GunKind {
    Ideal,
    Jittered,
    Coherent,
    SpdcHeralded,
    Product,
}

impl GunKind {
    fn name(self) -> &'static str {
        match self {
            GunKind::Ideal => "ideal",
            GunKind::Jittered => "jittered",
            GunKind::Coherent => "coherent",
            GunKind::SpdcHeralded => "spdc_heralded",
            GunKind::Product => "product",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    /// One photon of the reference polarization, any arrival bin.
    Qkd,
    /// Both photons on one arm, measured after the splitter.
    HomDetector,
    /// Pre-splitter image of the detector-side bunching target.
    HomSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Two-photon fraction of a heralded down-conversion source.
    Epsilon,
    /// Number of auxiliary arrival bins (integer grid).
    D,
    /// Wavepacket match between the two interferometer inputs.
    Gamma,
    /// Mean pair number of the pump (pair-statistics model).
    Mu,
    /// Herald detector efficiency (pair-statistics model).
    Eta,
    /// Magnitude of the coherent amplitude; the configured phase is kept.
    Alpha,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Epsilon => "epsilon",
            SweepParameter::D => "d",
            SweepParameter::Gamma => "gamma",
            SweepParameter::Mu => "mu",
            SweepParameter::Eta => "eta",
            SweepParameter::Alpha => "alpha",
        }
    }
}

/// Polarization in a scenario file: a named setting or explicit Jones
/// amplitudes `[[re, im], [re, im]]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PolarizationConfig {
    Named(String),
    Amplitudes([[f64; 2]; 2]),
}

impl PolarizationConfig {
    pub fn resolve(&self) -> Result<Polarization> {
        match self {
            PolarizationConfig::Named(name) => match name.as_str() {
                "H" => Ok(Polarization::h()),
                "V" => Ok(Polarization::v()),
                "D" => Ok(Polarization::diagonal()),
                "A" => Ok(Polarization::antidiagonal()),
                "L" => Ok(Polarization::left_circular()),
                "R" => Ok(Polarization::right_circular()),
                other => Err(CliError::scenario(format!(
                    "unknown polarization name {other:?}; use H, V, D, A, L, R \
                     or explicit amplitudes [[re, im], [re, im]]"
                ))),
            },
            PolarizationConfig::Amplitudes(a) => Polarization::new([
                C64::new(a[0][0], a[0][1]),
                C64::new(a[1][0], a[1][1]),
            ])
            .map_err(CliError::from),
        }
    }
}

fn default_bins() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    /// Spatial arm labels; interference scenarios need exactly two.
    pub spatial: Vec<String>,
    /// Polarization labels: empty (no polarization) or exactly two.
    #[serde(default)]
    pub polarization: Vec<String>,
    /// Auxiliary arrival bins per spatial and polarization slot.
    #[serde(default = "default_bins")]
    pub bins: usize,
}

impl SpaceConfig {
    /// Mode space with `bins` overridden (used by the `d` sweep).
    pub fn mode_space_with_bins(&self, bins: usize) -> Result<ModeSpace> {
        ModeSpace::new(self.spatial.clone(), self.polarization.clone(), bins)
            .map_err(CliError::from)
    }

    pub fn mode_space(&self) -> Result<ModeSpace> {
        self.mode_space_with_bins(self.bins)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GunConfig {
    pub kind: GunKind,
    /// Pure polarization of the emitted photon(s); defaults to the first
    /// polarization label when the space has any.
    pub polarization: Option<PolarizationConfig>,
    /// Arrival bin of an ideal or coherent source (default 0).
    pub bin: Option<usize>,
    /// Coherent bin superposition of an ideal source, `[re, im]` per bin;
    /// mutually exclusive with `bin`.
    pub bin_amplitudes: Option<Vec<[f64; 2]>>,
    /// Classical bin mixture weights of a jittered or heralded source
    /// (uniform when omitted).
    pub bin_weights: Option<Vec<f64>>,
    /// Coherent amplitude `[re, im]`.
    pub alpha: Option<[f64; 2]>,
    /// Condition the coherent source on at least one photon.
    pub heralded: Option<bool>,
    /// Two-photon fraction of a heralded down-conversion source.
    pub epsilon: Option<f64>,
    /// Mean pair number, from which epsilon is derived when not given.
    pub pair_mu: Option<f64>,
    /// Herald detector efficiency for the pair-statistics model.
    pub herald_eta: Option<f64>,
    /// Pair-number truncation for the pair-statistics model.
    pub pair_n_cut: Option<usize>,
    /// Exactly two child sources for a `product` gun, one per arm.
    pub children: Option<Vec<GunConfig>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub kind: TargetKind,
    /// Reference polarization of the `qkd` target (default H).
    pub polarization: Option<PolarizationConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    /// Number of grid points, endpoints included.
    pub steps: usize,
}

/// Inclusive evenly spaced grid; the endpoints are exact.
pub fn sweep_grid(sweep: &SweepConfig) -> Vec<f64> {
    let n = sweep.steps;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                sweep.stop
            } else {
                sweep.start + (sweep.stop - sweep.start) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    n_max: usize,
    analysis: Analysis,
    space: SpaceConfig,
    gun: GunConfig,
    gun2: Option<GunConfig>,
    target: Option<TargetConfig>,
    sweep: Option<SweepConfig>,
}

/// A parsed and fully validated scenario, ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub n_max: usize,
    pub analysis: Analysis,
    pub space: SpaceConfig,
    pub gun: GunConfig,
    pub gun2: Option<GunConfig>,
    pub target: Option<TargetConfig>,
    pub sweep: Option<SweepConfig>,
}

impl Scenario {
    /// Largest basis dimension any sweep point will enumerate.
    pub fn max_basis_dim(&self) -> Result<usize> {
        let bins = match &self.sweep {
            Some(sw) if sw.parameter == SweepParameter::D => {
                sweep_grid(sw).iter().fold(self.space.bins, |m, &v| {
                    m.max(v.round() as usize)
                })
            }
            _ => self.space.bins,
        };
        let space = self.space.mode_space_with_bins(bins)?;
        Ok(FockBasis::dimension_for(&space, self.n_max))
    }

    /// Number of report rows this scenario will produce.
    pub fn row_count(&self) -> usize {
        self.sweep.as_ref().map_or(1, |sw| sw.steps)
    }
}

/// Parses one scenario document and validates every cross-field rule.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let file: ScenarioFile = toml::from_str(text)
        .map_err(|e| CliError::scenario(format!("scenario parse error: {e}")))?;
    let scenario = Scenario {
        name: file.name,
        n_max: file.n_max,
        analysis: file.analysis,
        space: file.space,
        gun: file.gun,
        gun2: file.gun2,
        target: file.target,
        sweep: file.sweep,
    };
    validate(&scenario)?;
    Ok(scenario)
}

fn validate(s: &Scenario) -> Result<()> {
    if s.name.trim().is_empty() {
        return Err(CliError::scenario("scenario name must not be empty"));
    }

    // Mode space sanity; ModeSpace::new enforces label rules.
    let space = s.space.mode_space()?;
    let pols = space.polarization_labels().len();
    if pols != 0 && pols != 2 {
        return Err(CliError::scenario(format!(
            "polarization needs zero or exactly two labels, got {pols}"
        )));
    }
    let arms = space.spatial_labels().len();

    let sweep_param = s.sweep.as_ref().map(|sw| sw.parameter);
    validate_gun(&s.gun, &s.space, sweep_param, "gun")?;
    if let Some(g2) = &s.gun2 {
        validate_gun(g2, &s.space, None, "gun2")?;
    }

    match s.analysis {
        Analysis::Suitability | Analysis::QkdSecurity => {
            if s.gun2.is_some() {
                return Err(CliError::scenario(format!(
                    "{} takes a single gun; gun2 is only for interference analyses",
                    s.analysis.name()
                )));
            }
            let target = s.target.as_ref().ok_or_else(|| {
                CliError::scenario(format!("{} needs a [target] section", s.analysis.name()))
            })?;
            let expected_arms = match s.gun.kind {
                GunKind::Product => 2,
                _ => 1,
            };
            if arms != expected_arms {
                return Err(CliError::scenario(format!(
                    "a {} gun needs {expected_arms} spatial arm(s), the space has {arms}",
                    s.gun.kind.name()
                )));
            }
            match target.kind {
                TargetKind::Qkd => {
                    if arms != 1 {
                        return Err(CliError::scenario(
                            "the qkd target is defined on a single-arm space",
                        ));
                    }
                    if pols != 2 {
                        return Err(CliError::scenario(
                            "the qkd target needs two polarization labels",
                        ));
                    }
                }
                TargetKind::HomDetector | TargetKind::HomSource => {
                    if arms != 2 {
                        return Err(CliError::scenario(
                            "interference targets are defined on a two-arm space",
                        ));
                    }
                    if s.n_max < 2 {
                        return Err(CliError::scenario(
                            "interference targets need n_max of at least 2",
                        ));
                    }
                }
            }
            if target.polarization.is_some() && target.kind != TargetKind::Qkd {
                return Err(CliError::scenario(
                    "target polarization only applies to the qkd target",
                ));
            }
        }
        Analysis::Hom | Analysis::HomDipScan => {
            if s.target.is_some() {
                return Err(CliError::scenario(
                    "interference analyses define their own target; remove [target]",
                ));
            }
            if arms != 2 {
                return Err(CliError::scenario(format!(
                    "{} needs exactly two spatial arms, the space has {arms}",
                    s.analysis.name()
                )));
            }
            if s.n_max < 2 {
                return Err(CliError::scenario(
                    "interference needs n_max of at least 2 to hold both photons",
                ));
            }
            if s.gun.kind == GunKind::Product {
                return Err(CliError::scenario(
                    "interference analyses take one source per arm, not a product gun",
                ));
            }
            match s.analysis {
                Analysis::Hom => {
                    if s.gun2.is_none() {
                        return Err(CliError::scenario(
                            "hom needs a [gun2] section for the second arm",
                        ));
                    }
                }
                Analysis::HomDipScan => {
                    if s.gun2.is_some() {
                        return Err(CliError::scenario(
                            "hom_dip_scan constructs the probe source itself; remove [gun2]",
                        ));
                    }
                    if s.space.bins < 2 {
                        return Err(CliError::scenario(
                            "hom_dip_scan needs at least two bins to vary the overlap",
                        ));
                    }
                    match &s.sweep {
                        Some(sw) if sw.parameter == SweepParameter::Gamma => {}
                        _ => {
                            return Err(CliError::scenario(
                                "hom_dip_scan needs a [sweep] over parameter = \"gamma\"",
                            ));
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    if let Some(sw) = &s.sweep {
        validate_sweep(s, sw)?;
    }

    // Capacity check up front so `validate` rejects runaway spaces.
    let dim = s.max_basis_dim()?;
    if dim > tol::STATE_CAP {
        return Err(CliError::capacity(format!(
            "basis dimension {dim} exceeds the cap of {}",
            tol::STATE_CAP
        )));
    }
    Ok(())
}

/// Field legality per gun kind, plus cheap value checks. `swept` names the
/// scenario's sweep parameter so a swept field may be omitted.
fn validate_gun(
    gun: &GunConfig,
    space: &SpaceConfig,
    swept: Option<SweepParameter>,
    label: &str,
) -> Result<()> {
    let reject = |field: &str| -> Result<()> {
        Err(CliError::scenario(format!(
            "{label}: field {field:?} does not apply to a {} gun",
            gun.kind.name()
        )))
    };
    if space.polarization.is_empty() && gun.polarization.is_some() {
        return Err(CliError::scenario(format!(
            "{label}: polarization given but the space declares no polarization labels"
        )));
    }
    if let Some(p) = &gun.polarization {
        p.resolve()?;
    }

    match gun.kind {
        GunKind::Ideal => {
            if gun.bin_weights.is_some() {
                return reject("bin_weights");
            }
            if gun.alpha.is_some() || gun.heralded.is_some() {
                return reject("alpha");
            }
            if gun.epsilon.is_some() || gun.pair_mu.is_some() {
                return reject("epsilon");
            }
            if gun.herald_eta.is_some() || gun.pair_n_cut.is_some() {
                return reject("herald_eta");
            }
            if gun.children.is_some() {
                return reject("children");
            }
            if gun.bin.is_some() && gun.bin_amplitudes.is_some() {
                return Err(CliError::scenario(format!(
                    "{label}: give either bin or bin_amplitudes, not both"
                )));
            }
            if let Some(b) = gun.bin {
                if b >= space.bins && swept != Some(SweepParameter::D) {
                    return Err(CliError::scenario(format!(
                        "{label}: bin {b} out of range for {} bins",
                        space.bins
                    )));
                }
            }
            if let Some(a) = &gun.bin_amplitudes {
                if a.len() != space.bins {
                    return Err(CliError::scenario(format!(
                        "{label}: {} bin amplitudes for {} bins",
                        a.len(),
                        space.bins
                    )));
                }
                let norm: f64 = a.iter().map(|z| z[0] * z[0] + z[1] * z[1]).sum();
                if (norm - 1.0).abs() > tol::VALIDATION {
                    return Err(CliError::scenario(format!(
                        "{label}: bin amplitudes have squared norm {norm}, expected 1"
                    )));
                }
            }
        }
        GunKind::Jittered => {
            if gun.bin.is_some() || gun.bin_amplitudes.is_some() {
                return reject("bin");
            }
            if gun.alpha.is_some() || gun.heralded.is_some() {
                return reject("alpha");
            }
            if gun.epsilon.is_some() || gun.pair_mu.is_some() {
                return reject("epsilon");
            }
            if gun.herald_eta.is_some() || gun.pair_n_cut.is_some() {
                return reject("herald_eta");
            }
            if gun.children.is_some() {
                return reject("children");
            }
            check_weights(gun, space, label)?;
        }
        GunKind::Coherent => {
            if gun.bin_amplitudes.is_some() {
                return reject("bin_amplitudes");
            }
            if gun.bin_weights.is_some() {
                return reject("bin_weights");
            }
            if gun.epsilon.is_some() || gun.pair_mu.is_some() {
                return reject("epsilon");
            }
            if gun.herald_eta.is_some() || gun.pair_n_cut.is_some() {
                return reject("herald_eta");
            }
            if gun.children.is_some() {
                return reject("children");
            }
            match gun.alpha {
                None => {
                    if swept != Some(SweepParameter::Alpha) {
                        return Err(CliError::scenario(format!(
                            "{label}: a coherent gun needs alpha = [re, im]"
                        )));
                    }
                }
                Some(a) => {
                    if !a[0].is_finite() || !a[1].is_finite() {
                        return Err(CliError::scenario(format!(
                            "{label}: alpha must be finite"
                        )));
                    }
                }
            }
            if let Some(b) = gun.bin {
                if b >= space.bins {
                    return Err(CliError::scenario(format!(
                        "{label}: bin {b} out of range for {} bins",
                        space.bins
                    )));
                }
            }
        }
        GunKind::SpdcHeralded => {
            if gun.bin.is_some() || gun.bin_amplitudes.is_some() {
                return reject("bin");
            }
            if gun.alpha.is_some() || gun.heralded.is_some() {
                return reject("alpha");
            }
            if gun.children.is_some() {
                return reject("children");
            }
            check_weights(gun, space, label)?;
            let pair_model = gun.pair_mu.is_some()
                || gun.herald_eta.is_some()
                || gun.pair_n_cut.is_some();
            if gun.epsilon.is_some() && pair_model {
                return Err(CliError::scenario(format!(
                    "{label}: give either epsilon or the pair-statistics fields, not both"
                )));
            }
            if let Some(e) = gun.epsilon {
                if !(0.0..=1.0).contains(&e) {
                    return Err(CliError::scenario(format!(
                        "{label}: epsilon {e} outside [0, 1]"
                    )));
                }
            }
            if let Some(mu) = gun.pair_mu {
                if !(mu > 0.0) || !mu.is_finite() {
                    return Err(CliError::scenario(format!(
                        "{label}: pair_mu {mu} must be positive"
                    )));
                }
            }
            if let Some(eta) = gun.herald_eta {
                if !(eta > 0.0 && eta <= 1.0) {
                    return Err(CliError::scenario(format!(
                        "{label}: herald_eta {eta} outside (0, 1]"
                    )));
                }
                if gun.pair_mu.is_none() && swept != Some(SweepParameter::Mu) {
                    return Err(CliError::scenario(format!(
                        "{label}: herald_eta needs pair_mu"
                    )));
                }
            }
            if let Some(n) = gun.pair_n_cut {
                if n < 2 {
                    return Err(CliError::scenario(format!(
                        "{label}: pair_n_cut {n} too small to see multi-pair events"
                    )));
                }
            }
            let epsilon_known = gun.epsilon.is_some()
                || gun.pair_mu.is_some()
                || matches!(
                    swept,
                    Some(SweepParameter::Epsilon) | Some(SweepParameter::Mu)
                );
            if !epsilon_known {
                return Err(CliError::scenario(format!(
                    "{label}: spdc_heralded needs epsilon, pair_mu, or a sweep over one of them"
                )));
            }
        }
        GunKind::Product => {
            if gun.polarization.is_some()
                || gun.bin.is_some()
                || gun.bin_amplitudes.is_some()
                || gun.bin_weights.is_some()
                || gun.alpha.is_some()
                || gun.heralded.is_some()
                || gun.epsilon.is_some()
                || gun.pair_mu.is_some()
                || gun.herald_eta.is_some()
                || gun.pair_n_cut.is_some()
            {
                return Err(CliError::scenario(format!(
                    "{label}: a product gun takes only the children field"
                )));
            }
            let children = gun.children.as_ref().ok_or_else(|| {
                CliError::scenario(format!("{label}: a product gun needs two children"))
            })?;
            if children.len() != 2 {
                return Err(CliError::scenario(format!(
                    "{label}: a product gun needs exactly two children, got {}",
                    children.len()
                )));
            }
            for (i, child) in children.iter().enumerate() {
                if child.kind == GunKind::Product {
                    return Err(CliError::scenario(format!(
                        "{label}: children must be simple sources, child {i} is a product"
                    )));
                }
                validate_gun(child, space, swept, &format!("{label}.children[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn check_weights(gun: &GunConfig, space: &SpaceConfig, label: &str) -> Result<()> {
    if let Some(w) = &gun.bin_weights {
        if w.len() != space.bins {
            return Err(CliError::scenario(format!(
                "{label}: {} bin weights for {} bins",
                w.len(),
                space.bins
            )));
        }
        let mut sum = 0.0;
        for &x in w {
            if !x.is_finite() || x < 0.0 {
                return Err(CliError::scenario(format!(
                    "{label}: bin weight {x} is not a finite nonnegative number"
                )));
            }
            sum += x;
        }
        if (sum - 1.0).abs() > tol::VALIDATION {
            return Err(CliError::scenario(format!(
                "{label}: bin weights sum to {sum}, expected 1"
            )));
        }
    }
    Ok(())
}

fn validate_sweep(s: &Scenario, sw: &SweepConfig) -> Result<()> {
    if sw.steps < 2 {
        return Err(CliError::scenario(format!(
            "sweep needs at least 2 steps, got {}",
            sw.steps
        )));
    }
    if !sw.start.is_finite() || !sw.stop.is_finite() {
        return Err(CliError::scenario("sweep endpoints must be finite"));
    }
    let grid = sweep_grid(sw);
    let single_source = matches!(s.analysis, Analysis::Suitability | Analysis::QkdSecurity);
    match sw.parameter {
        SweepParameter::Gamma => {
            if s.analysis != Analysis::HomDipScan {
                return Err(CliError::scenario(
                    "a gamma sweep only applies to the hom_dip_scan analysis",
                ));
            }
            if grid.iter().any(|&g| !(0.0..=1.0).contains(&g)) {
                return Err(CliError::scenario("gamma values must lie in [0, 1]"));
            }
        }
        SweepParameter::Epsilon => {
            if !single_source || s.gun.kind != GunKind::SpdcHeralded {
                return Err(CliError::scenario(
                    "an epsilon sweep needs a single spdc_heralded gun",
                ));
            }
            if grid.iter().any(|&e| !(0.0..=1.0).contains(&e)) {
                return Err(CliError::scenario("epsilon values must lie in [0, 1]"));
            }
        }
        SweepParameter::Mu => {
            if !single_source || s.gun.kind != GunKind::SpdcHeralded {
                return Err(CliError::scenario(
                    "a mu sweep needs a single spdc_heralded gun",
                ));
            }
            if s.gun.epsilon.is_some() {
                return Err(CliError::scenario(
                    "a mu sweep drives the pair-statistics model; remove the fixed epsilon",
                ));
            }
            if grid.iter().any(|&m| !(m > 0.0)) {
                return Err(CliError::scenario("mu values must be positive"));
            }
        }
        SweepParameter::Eta => {
            if !single_source || s.gun.kind != GunKind::SpdcHeralded {
                return Err(CliError::scenario(
                    "an eta sweep needs a single spdc_heralded gun",
                ));
            }
            if s.gun.epsilon.is_some() {
                return Err(CliError::scenario(
                    "an eta sweep drives the pair-statistics model; remove the fixed epsilon",
                ));
            }
            if s.gun.pair_mu.is_none() {
                return Err(CliError::scenario("an eta sweep needs pair_mu on the gun"));
            }
            if grid.iter().any(|&e| !(e > 0.0 && e <= 1.0)) {
                return Err(CliError::scenario("eta values must lie in (0, 1]"));
            }
        }
        SweepParameter::Alpha => {
            if !single_source || s.gun.kind != GunKind::Coherent {
                return Err(CliError::scenario(
                    "an alpha sweep needs a single coherent gun",
                ));
            }
            if grid.iter().any(|&a| a < 0.0) {
                return Err(CliError::scenario(
                    "alpha sweeps range over the magnitude, which must be nonnegative",
                ));
            }
        }
        SweepParameter::D => {
            if s.analysis == Analysis::HomDipScan {
                return Err(CliError::scenario(
                    "hom_dip_scan fixes the bin count; sweep gamma instead",
                ));
            }
            for &v in &grid {
                if (v - v.round()).abs() > 1e-9 || v.round() < 1.0 {
                    return Err(CliError::scenario(format!(
                        "d sweep values must be whole bin counts of at least 1, got {v}"
                    )));
                }
            }
            // Bin-indexed gun fields would silently change meaning as the
            // bin count moves, so they must stay at their defaults.
            let mut guns: Vec<&GunConfig> = vec![&s.gun];
            if let Some(g2) = &s.gun2 {
                guns.push(g2);
            }
            if let Some(children) = &s.gun.children {
                guns.extend(children.iter());
            }
            for g in guns {
                if g.bin.is_some() || g.bin_amplitudes.is_some() || g.bin_weights.is_some() {
                    return Err(CliError::scenario(
                        "a d sweep requires guns without explicit bin, bin_amplitudes, \
                         or bin_weights",
                    ));
                }
            }
        }
    }
    Ok(())
}
