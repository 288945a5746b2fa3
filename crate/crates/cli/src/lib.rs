//! Batch front end for the source-rating toolkit.
//!
//! A scenario file names a mode space, a source, a target, and an
//! analysis; `run` turns it into a report of rating metrics, optionally
//! sweeping one parameter over a grid. See `docs/scenario_schema.md` in
//! the repository for the file format.

pub mod error;
pub mod render;
pub mod report;
pub mod run;
pub mod scenario;

pub use error::{CliError, Result};
pub use render::{render, Format};
pub use report::Report;
pub use run::run;
pub use scenario::{parse_scenario, Scenario};

/// Bundled example scenarios: (name, one-line description, file content).
/// They double as fixtures for the acceptance suite.
pub const BUNDLED: &[(&str, &str, &str)] = &[
    (
        "qkd_three_bins",
        "ideal polarized source rated against a three-bin key-distribution target",
        include_str!("../scenarios/qkd_three_bins.toml"),
    ),
    (
        "jitter_bin_scan",
        "arrival-time jitter over a growing bin count: rating pinned at 1, self-overlap falls as 1/d",
        include_str!("../scenarios/jitter_bin_scan.toml"),
    ),
    (
        "spdc_epsilon_sweep",
        "heralded pair source: accepted vs tappable mass across the two-photon fraction",
        include_str!("../scenarios/spdc_epsilon_sweep.toml"),
    ),
    (
        "hom_ideal",
        "identical ideal sources interfering: full dip, no coincidences",
        include_str!("../scenarios/hom_ideal.toml"),
    ),
    (
        "hom_distinguishable",
        "sources in different arrival bins: the dip collapses to the classical rate",
        include_str!("../scenarios/hom_distinguishable.toml"),
    ),
    (
        "hom_gamma_scan",
        "dip curve traced over the wavepacket match gamma",
        include_str!("../scenarios/hom_gamma_scan.toml"),
    ),
    (
        "coherent_gun_audit",
        "attenuated laser at mean photon number 0.1: multi-photon leakage audit",
        include_str!("../scenarios/coherent_gun_audit.toml"),
    ),
    (
        "spdc_herald_efficiency",
        "pair source driven by pump brightness under a lossy herald detector",
        include_str!("../scenarios/spdc_herald_efficiency.toml"),
    ),
    (
        "product_pair_rating",
        "independent pair on two arms rated against the pre-splitter bunching target",
        include_str!("../scenarios/product_pair_rating.toml"),
    ),
];

/// Looks up a bundled scenario by name, with or without the extension.
pub fn bundled(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".toml").unwrap_or(name);
    BUNDLED
        .iter()
        .find(|(n, _, _)| *n == stem)
        .map(|(_, _, text)| *text)
}
