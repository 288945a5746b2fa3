//! Scenario execution: expands the sweep, builds the basis, sources, and
//! target per point, and assembles the report rows in grid order.

use std::time::Instant;

use rate_core::guns::{
    epsilon_from_pair_statistics, qkd_security, realize_gun, BinProfile, GunSpec, Polarization,
};
use rate_core::metrics::suitability;
use rate_core::optics::hom_visibility;
use rate_core::targets::{hom_detector_target, hom_source_target, qkd_target, TargetSpec};
use rate_core::{C64, FockBasis};

use crate::error::{CliError, Result};
use crate::report::{DipPoint, HomRow, Report, Row, RowBody, SweepEcho};
use crate::scenario::{
    sweep_grid, Analysis, GunConfig, GunKind, PolarizationConfig, Scenario, SweepParameter,
    TargetKind,
};

const DEFAULT_HERALD_ETA: f64 = 1.0;
const DEFAULT_PAIR_N_CUT: usize = 50;

/// Runs a validated scenario to a report. Rows follow the sweep grid; a
/// failure names its sweep point.
pub fn run(scenario: &Scenario) -> Result<Report> {
    let started = Instant::now();
    let (rows, sweep) = match &scenario.sweep {
        None => (vec![evaluate_point(scenario, None)?], None),
        Some(sw) => {
            let grid = sweep_grid(sw);
            let mut rows = Vec::with_capacity(grid.len());
            for (i, &value) in grid.iter().enumerate() {
                let row = evaluate_point(scenario, Some((sw.parameter, value)))
                    .map_err(|e| e.at_sweep_point(i, sw.parameter.name(), value))?;
                rows.push(row);
            }
            let echo = SweepEcho {
                parameter: sw.parameter.name().to_string(),
                start: sw.start,
                stop: sw.stop,
                steps: sw.steps,
            };
            (rows, Some(echo))
        }
    };
    Ok(Report {
        name: scenario.name.clone(),
        analysis: scenario.analysis,
        version: env!("CARGO_PKG_VERSION").to_string(),
        sweep,
        rows,
        duration: started.elapsed(),
    })
}

fn evaluate_point(
    scenario: &Scenario,
    point: Option<(SweepParameter, f64)>,
) -> Result<Row> {
    let bins = match point {
        Some((SweepParameter::D, v)) => v.round() as usize,
        _ => scenario.space.bins,
    };
    let space = scenario.space.mode_space_with_bins(bins)?;
    let basis = FockBasis::enumerate(space, scenario.n_max)?;

    let parameter = match (point, scenario.analysis) {
        // Dip rows carry gamma themselves; repeating it would be noise.
        (_, Analysis::HomDipScan) => None,
        (Some((_, v)), _) => Some(v),
        (None, _) => None,
    };

    let body = match scenario.analysis {
        Analysis::Suitability => {
            let spec = gun_spec(&scenario.gun, point)?;
            let rho = realize_gun(&spec, &basis)?;
            let target = build_target(scenario, &basis)?;
            RowBody::Suitability(suitability(&rho, &target)?)
        }
        Analysis::QkdSecurity => {
            let spec = gun_spec(&scenario.gun, point)?;
            let target = build_target(scenario, &basis)?;
            RowBody::Qkd(qkd_security(&spec, &basis, &target)?)
        }
        Analysis::Hom => {
            let g1 = gun_spec(&scenario.gun, point)?;
            let g2 = gun_spec(scenario.gun2.as_ref().expect("validated"), None)?;
            let result = hom_visibility(&g1, &g2, &basis)?;
            RowBody::Hom(HomRow {
                coincidence_probability: result.coincidence_probability,
                same_arm_probability: result.same_arm_probability,
                other_sector_probability: result.other_sector_probability,
                visibility: result.visibility,
                source_suitability: result.source_suitability,
            })
        }
        Analysis::HomDipScan => {
            let (_, gamma) = point.expect("validated: dip scan always sweeps gamma");
            let g1 = gun_spec(&scenario.gun, None)?;
            let g2 = dip_probe(&scenario.gun, gamma, bins)?;
            let result = hom_visibility(&g1, &g2, &basis)?;
            RowBody::Dip(DipPoint {
                gamma,
                coincidence_probability: result.coincidence_probability,
            })
        }
    };
    Ok(Row { parameter, body })
}

/// Probe source for the dip scan: same polarization as the reference, one
/// photon split between the first two bins with overlap `gamma` against a
/// bin-0 wavepacket.
fn dip_probe(reference: &GunConfig, gamma: f64, bins: usize) -> Result<GunSpec> {
    let mut amplitudes = vec![C64::new(0.0, 0.0); bins];
    amplitudes[0] = C64::new(gamma, 0.0);
    amplitudes[1] = C64::new((1.0 - gamma * gamma).max(0.0).sqrt(), 0.0);
    Ok(GunSpec::Ideal {
        polarization: resolve_polarization(&reference.polarization)?,
        bins: BinProfile::Amplitudes(amplitudes),
    })
}

fn resolve_polarization(cfg: &Option<PolarizationConfig>) -> Result<Option<Polarization>> {
    cfg.as_ref().map(|p| p.resolve()).transpose()
}

/// Lowers a gun description to the library model, applying the sweep
/// override for this point.
fn gun_spec(cfg: &GunConfig, point: Option<(SweepParameter, f64)>) -> Result<GunSpec> {
    let polarization = resolve_polarization(&cfg.polarization)?;
    match cfg.kind {
        GunKind::Ideal => {
            let bins = match &cfg.bin_amplitudes {
                Some(a) => BinProfile::Amplitudes(
                    a.iter().map(|z| C64::new(z[0], z[1])).collect(),
                ),
                None => BinProfile::Bin(cfg.bin.unwrap_or(0)),
            };
            Ok(GunSpec::Ideal { polarization, bins })
        }
        GunKind::Jittered => Ok(GunSpec::Jittered {
            polarization,
            bin_weights: cfg.bin_weights.clone(),
        }),
        GunKind::Coherent => {
            let configured = cfg
                .alpha
                .map(|a| C64::new(a[0], a[1]))
                .unwrap_or_else(|| C64::new(0.0, 0.0));
            let alpha = match point {
                Some((SweepParameter::Alpha, mag)) => {
                    // Sweep the magnitude, keep the configured phase.
                    if configured.norm() == 0.0 {
                        C64::new(mag, 0.0)
                    } else {
                        configured / configured.norm() * mag
                    }
                }
                _ => configured,
            };
            Ok(GunSpec::Coherent {
                alpha,
                polarization,
                bin: cfg.bin.unwrap_or(0),
                heralded: cfg.heralded.unwrap_or(false),
            })
        }
        GunKind::SpdcHeralded => {
            let epsilon = match point {
                Some((SweepParameter::Epsilon, e)) => e,
                _ => match cfg.epsilon {
                    Some(e) => e,
                    None => {
                        let mu = match point {
                            Some((SweepParameter::Mu, m)) => m,
                            _ => cfg.pair_mu.ok_or_else(|| {
                                CliError::scenario("spdc_heralded gun has no epsilon source")
                            })?,
                        };
                        let eta = match point {
                            Some((SweepParameter::Eta, e)) => e,
                            _ => cfg.herald_eta.unwrap_or(DEFAULT_HERALD_ETA),
                        };
                        let n_cut = cfg.pair_n_cut.unwrap_or(DEFAULT_PAIR_N_CUT);
                        epsilon_from_pair_statistics(mu, eta, n_cut)?
                    }
                },
            };
            Ok(GunSpec::SpdcHeralded {
                polarization,
                bin_weights: cfg.bin_weights.clone(),
                epsilon,
            })
        }
        GunKind::Product => {
            let children = cfg.children.as_ref().expect("validated");
            let left = gun_spec(&children[0], point)?;
            let right = gun_spec(&children[1], point)?;
            Ok(GunSpec::Product {
                left: Box::new(left),
                right: Box::new(right),
            })
        }
    }
}

fn build_target(scenario: &Scenario, basis: &FockBasis) -> Result<TargetSpec> {
    let cfg = scenario.target.as_ref().expect("validated");
    match cfg.kind {
        TargetKind::Qkd => {
            let pol = match &cfg.polarization {
                Some(p) => p.resolve()?,
                None => Polarization::h(),
            };
            qkd_target(basis, [pol.0[0], pol.0[1]]).map_err(CliError::from)
        }
        TargetKind::HomDetector => hom_detector_target(basis).map_err(CliError::from),
        TargetKind::HomSource => hom_source_target(basis).map_err(CliError::from),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    #[test]
    fn single_point_qkd_scenario_runs() {
        let s = parse_scenario(
            r#"
            name = "t"
            n_max = 2
            analysis = "suitability"

            [space]
            spatial = ["s"]
            polarization = ["H", "V"]
            bins = 3

            [gun]
            kind = "ideal"
            polarization = "H"

            [target]
            kind = "qkd"
            "#,
        )
        .unwrap();
        let report = run(&s).unwrap();
        assert_eq!(report.rows.len(), 1);
        match &report.rows[0].body {
            RowBody::Suitability(m) => {
                assert!((m.suitability - 1.0).abs() < 1e-9);
                assert!((m.f_tt - 1.0 / 3.0).abs() < 1e-9);
            }
            other => panic!("wrong row type: {other:?}"),
        }
    }

    #[test]
    fn epsilon_sweep_produces_complementary_columns() {
        let s = parse_scenario(
            r#"
            name = "t"
            n_max = 2
            analysis = "qkd_security"

            [space]
            spatial = ["s"]
            polarization = ["H", "V"]
            bins = 2

            [gun]
            kind = "spdc_heralded"
            polarization = "H"

            [target]
            kind = "qkd"

            [sweep]
            parameter = "epsilon"
            start = 0.0
            stop = 0.5
            steps = 6
            "#,
        )
        .unwrap();
        let report = run(&s).unwrap();
        assert_eq!(report.rows.len(), 6);
        for (i, row) in report.rows.iter().enumerate() {
            let eps = 0.1 * i as f64;
            assert!((row.parameter.unwrap() - eps).abs() < 1e-12);
            match &row.body {
                RowBody::Qkd(q) => {
                    assert!((q.s_gt - (1.0 - eps)).abs() < 1e-9);
                    assert!((q.s_ge - eps).abs() < 1e-9);
                    assert_eq!(q.epsilon, Some(row.parameter.unwrap()));
                }
                other => panic!("wrong row type: {other:?}"),
            }
        }
    }

    #[test]
    fn dip_scan_rows_are_two_column_points() {
        let s = parse_scenario(
            r#"
            name = "t"
            n_max = 2
            analysis = "hom_dip_scan"

            [space]
            spatial = ["a", "b"]
            bins = 2

            [gun]
            kind = "ideal"
            bin = 0

            [sweep]
            parameter = "gamma"
            start = 0.0
            stop = 1.0
            steps = 5
            "#,
        )
        .unwrap();
        let report = run(&s).unwrap();
        assert_eq!(report.rows.len(), 5);
        for (i, row) in report.rows.iter().enumerate() {
            let gamma = 0.25 * i as f64;
            assert!(row.parameter.is_none());
            match &row.body {
                RowBody::Dip(p) => {
                    assert!((p.gamma - gamma).abs() < 1e-12);
                    let expected = (1.0 - gamma * gamma) / 2.0;
                    assert!(
                        (p.coincidence_probability - expected).abs() < 1e-9,
                        "gamma {gamma}: {} vs {expected}",
                        p.coincidence_probability
                    );
                }
                other => panic!("wrong row type: {other:?}"),
            }
        }
    }

    #[test]
    fn alpha_sweep_keeps_the_configured_phase() {
        let s = parse_scenario(
            r#"
            name = "t"
            n_max = 6
            analysis = "qkd_security"

            [space]
            spatial = ["s"]
            polarization = ["H", "V"]

            [gun]
            kind = "coherent"
            alpha = [0.0, 0.2]
            heralded = true

            [target]
            kind = "qkd"

            [sweep]
            parameter = "alpha"
            start = 0.1
            stop = 0.3
            steps = 3
            "#,
        )
        .unwrap();
        let report = run(&s).unwrap();
        assert_eq!(report.rows.len(), 3);
        // Phase is unobservable in these metrics; the sweep must still
        // run and give a multi-photon fraction that grows with |alpha|.
        let leak: Vec<f64> = report
            .rows
            .iter()
            .map(|r| match &r.body {
                RowBody::Qkd(q) => q.s_ge,
                other => panic!("wrong row type: {other:?}"),
            })
            .collect();
        assert!(leak[0] < leak[1] && leak[1] < leak[2]);
    }

    #[test]
    fn sweep_failures_name_their_point() {
        // n_max = 2 cannot hold the Poisson tail of the larger swept
        // amplitudes; the loss trips mid-sweep, not at parse time.
        let s = parse_scenario(
            r#"
            name = "t"
            n_max = 2
            analysis = "qkd_security"

            [space]
            spatial = ["s"]
            polarization = ["H", "V"]

            [gun]
            kind = "coherent"
            heralded = true

            [target]
            kind = "qkd"

            [sweep]
            parameter = "alpha"
            start = 0.05
            stop = 1.6
            steps = 4
            "#,
        )
        .unwrap();
        let err = run(&s).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{err}");
        assert!(err.to_string().contains("sweep point"), "{err}");
    }
}
