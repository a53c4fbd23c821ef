use std::fmt::Write;

use super::{AggregateReport, StageTimings};
use crate::detector::StageDurations;

/// Human-readable table for an accuracy report.
pub fn accuracy_table(report: &AggregateReport) -> String {
    let id_w = report
        .per_image
        .iter()
        .map(|r| r.image_id.chars().count())
        .chain([5])
        .max()
        .unwrap_or(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:<id_w$}  {:>8}  {:>8}  {:>8}  {:>8}", "image", "n", "e", "eClamped", "accuracy");
    for r in &report.per_image {
        let _ = writeln!(
            out,
            "{:<id_w$}  {:>8}  {:>8}  {:>8}  {:>7.2}%",
            r.image_id,
            r.n,
            r.e,
            r.e_clamped,
            r.accuracy * 100.0
        );
    }
    let _ = writeln!(
        out,
        "{:<id_w$}  {:>8}  {:>8}  {:>8}  {:>7.2}%",
        "TOTAL",
        report.total_n,
        "",
        report.total_e_clamped,
        report.overall_accuracy * 100.0
    );
    let _ = writeln!(out, "normalization: {:?}", report.normalization);
    out
}

/// One row of a timing table; `None` marks an unsupported configuration.
pub struct TimingRow<'a> {
    pub label: String,
    pub timings: Option<&'a StageTimings>,
}

/// Human-readable table of mean milliseconds per stage.
pub fn timing_table(rows: &[TimingRow<'_>]) -> String {
    let label_w = rows.iter().map(|r| r.label.len()).chain([6]).max().unwrap_or(6);
    let mut out = String::new();
    let _ = write!(out, "{:<label_w$}", "config");
    for s in StageDurations::STAGES {
        let _ = write!(out, "  {s:>10}");
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{:<label_w$}", row.label);
        match row.timings {
            Some(t) => {
                for s in StageDurations::STAGES {
                    let _ = write!(out, "  {:>10.2}", t.summary.get(s).copied().unwrap_or(0.0));
                }
            }
            None => {
                let _ = write!(out, "  {:>10}", "unsupported");
            }
        }
        out.push('\n');
    }
    out
}
