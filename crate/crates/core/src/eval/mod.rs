//! Character-level OCR accuracy, box-level detection diagnostics and per-stage
//! runtime measurement.

mod accuracy;
mod benchmark;
mod diagnostics;
mod report;

pub use accuracy::{aggregate, aggregate_with, edit_distance, score_image, AggregateReport, ImageEvalResult, Normalization};
pub use benchmark::{benchmark_images, mean_stage_millis, run_benchmark, ImageTiming, StageMillis, StageTimings};
pub use diagnostics::{detection_diagnostics, DetectionDiagnostics, MatchedPair};
pub use report::{accuracy_table, timing_table, TimingRow};
