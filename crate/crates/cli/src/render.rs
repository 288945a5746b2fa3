//! Report rendering: fixed-width table for humans, CSV for plotting,
//! JSON for machines. CSV and JSON carry no timing, so repeated runs of
//! one scenario produce identical bytes.

use std::fmt::Write as _;

use crate::report::{fmt_sig9, Report, Row, RowBody};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Table => render_table(report),
        Format::Csv => render_csv(report),
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(report).expect("report serialization is total");
            s.push('\n');
            s
        }
    }
}

fn body_columns(report: &Report) -> &'static [&'static str] {
    match report.rows.first().map(|r| &r.body) {
        Some(RowBody::Suitability(_)) => [
            "f_gt",
            "f_tt",
            "f_gg",
            "f1_gg",
            "suitability",
            "cs_bound",
            "purity_bound",
            "purity_bound_applicable",
            "outside_target_mass",
            "target_dim",
        ]
        .as_slice(),
        Some(RowBody::Qkd(_)) => ["s_gt", "s_ge", "epsilon", "f1_gg"].as_slice(),
        Some(RowBody::Hom(_)) => [
            "coincidence_probability",
            "same_arm_probability",
            "other_sector_probability",
            "visibility",
            "source_suitability",
        ]
        .as_slice(),
        Some(RowBody::Dip(_)) => ["gamma", "coincidence_probability"].as_slice(),
        None => [].as_slice(),
    }
}

/// Name of the leading sweep-value column, or None when the rows carry no
/// sweep value or a body column of the same name already echoes it (a qkd
/// epsilon sweep writes the swept value into the body's epsilon field).
fn parameter_column(report: &Report) -> Option<String> {
    if !report.rows.iter().any(|r| r.parameter.is_some()) {
        return None;
    }
    let name = report
        .sweep
        .as_ref()
        .map_or_else(|| "parameter".to_string(), |s| s.parameter.clone());
    if body_columns(report).contains(&name.as_str()) {
        return None;
    }
    Some(name)
}

/// Column headers for this report, parameter column first when sweeping.
fn header(report: &Report) -> Vec<String> {
    let mut cols = Vec::new();
    cols.extend(parameter_column(report));
    cols.extend(body_columns(report).iter().map(|s| s.to_string()));
    cols
}

fn cells(row: &Row, with_parameter: bool) -> Vec<String> {
    let mut out = Vec::new();
    if with_parameter {
        out.push(row.parameter.map_or_else(String::new, fmt_sig9));
    }
    match &row.body {
        RowBody::Suitability(m) => {
            out.extend([
                fmt_sig9(m.f_gt),
                fmt_sig9(m.f_tt),
                fmt_sig9(m.f_gg),
                fmt_sig9(m.f1_gg),
                fmt_sig9(m.suitability),
                fmt_sig9(m.cs_bound),
                fmt_sig9(m.purity_bound),
                m.purity_bound_applicable.to_string(),
                fmt_sig9(m.outside_target_mass),
                m.target_dim.to_string(),
            ]);
        }
        RowBody::Qkd(q) => {
            out.extend([
                fmt_sig9(q.s_gt),
                fmt_sig9(q.s_ge),
                q.epsilon.map_or_else(String::new, fmt_sig9),
                fmt_sig9(q.f1_gg),
            ]);
        }
        RowBody::Hom(h) => {
            out.extend([
                fmt_sig9(h.coincidence_probability),
                fmt_sig9(h.same_arm_probability),
                fmt_sig9(h.other_sector_probability),
                fmt_sig9(h.visibility),
                fmt_sig9(h.source_suitability),
            ]);
        }
        RowBody::Dip(p) => {
            out.extend([fmt_sig9(p.gamma), fmt_sig9(p.coincidence_probability)]);
        }
    }
    out
}

fn render_csv(report: &Report) -> String {
    let with_parameter = parameter_column(report).is_some();
    let mut out = header(report).join(",");
    out.push('\n');
    for row in &report.rows {
        out.push_str(&cells(row, with_parameter).join(","));
        out.push('\n');
    }
    out
}

fn render_table(report: &Report) -> String {
    let with_parameter = parameter_column(report).is_some();
    let head = header(report);
    let body: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| cells(r, with_parameter))
        .collect();

    let mut widths: Vec<usize> = head.iter().map(String::len).collect();
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "scenario: {}  analysis: {}  version: {}",
        report.name,
        report.analysis.name(),
        report.version
    );
    if let Some(sw) = &report.sweep {
        let _ = writeln!(
            out,
            "sweep: {} from {} to {} in {} steps",
            sw.parameter,
            fmt_sig9(sw.start),
            fmt_sig9(sw.stop),
            sw.steps
        );
    }
    out.push('\n');

    let fmt_line = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", fmt_line(&head));
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let _ = writeln!(out, "{}", rule.join("  "));
    for row in &body {
        let _ = writeln!(out, "{}", fmt_line(row));
    }
    out.push('\n');
    let _ = writeln!(
        out,
        "rows: {}  duration: {:.3} ms",
        report.rows.len(),
        report.duration.as_secs_f64() * 1e3
    );
    out
}
