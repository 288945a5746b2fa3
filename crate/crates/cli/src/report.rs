//! Report structure shared by all renderers.
//!
//! JSON and CSV renderings must be byte-identical across repeated runs of
//! the same scenario, so the wall-clock duration lives outside the
//! serialized body and only appears in the human table footer.

use serde::Serialize;

use rate_core::guns::QkdSecurityReport;
use rate_core::metrics::MetricReport;

use crate::scenario::Analysis;

#[derive(Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub analysis: Analysis,
    /// Toolkit version that produced the numbers.
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepEcho>,
    pub rows: Vec<Row>,
    /// Wall-clock time of the run; table-only, see the module note.
    #[serde(skip)]
    pub duration: std::time::Duration,
}

/// The sweep definition echoed back so a report is self-describing.
#[derive(Debug, Serialize)]
pub struct SweepEcho {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

#[derive(Debug, Serialize)]
pub struct Row {
    /// Value of the swept parameter at this point, when sweeping.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
    #[serde(flatten)]
    pub body: RowBody,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum RowBody {
    Suitability(MetricReport),
    Qkd(QkdSecurityReport),
    Hom(HomRow),
    Dip(DipPoint),
}

/// Interference outcome without the (unserializable) output state.
#[derive(Debug, Serialize)]
pub struct HomRow {
    pub coincidence_probability: f64,
    pub same_arm_probability: f64,
    pub other_sector_probability: f64,
    pub visibility: f64,
    pub source_suitability: f64,
}

/// One point of the dip curve: the knob and the observable.
#[derive(Debug, Serialize)]
pub struct DipPoint {
    pub gamma: f64,
    pub coincidence_probability: f64,
}

/// Formats with 9 significant digits: plain decimal in the human range,
/// scientific otherwise, so 1e-9 scale residuals stay visible.
pub fn fmt_sig9(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    let mag = x.abs();
    if (1e-4..1e9).contains(&mag) {
        let digits_before_point = mag.log10().floor() as i32 + 1;
        let decimals = (9 - digits_before_point).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(fmt_sig9(0.0491668055), "0.0491668055");
        assert_eq!(fmt_sig9(123.456), "123.456000");
        assert_eq!(fmt_sig9(1.0), "1.00000000");
        assert_eq!(fmt_sig9(-0.5), "-0.500000000");
        assert_eq!(fmt_sig9(1e-9), "1.00000000e-9");
        assert_eq!(fmt_sig9(0.0), "0.00000000");
    }

    #[test]
    fn formatting_is_locale_free() {
        assert!(!fmt_sig9(1234.5).contains(','));
        assert!(fmt_sig9(0.5).contains('.'));
    }
}
