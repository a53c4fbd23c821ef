use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Levenshtein distance over Unicode scalar values with unit costs.
/// Case-sensitive; `Ç` and `C` differ.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    // single row over the shorter string
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if ca == cb {
                diag
            } else {
                1 + diag.min(up).min(row[j])
            };
            diag = up;
        }
    }
    row[b.len()]
}

/// Text preprocessing applied to both documents before scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Normalization {
    /// Runs of whitespace become one space; leading and trailing whitespace
    /// is removed.
    #[default]
    CollapseWhitespace,
    None,
}

impl Normalization {
    pub fn apply(self, text: &str) -> String {
        match self {
            Normalization::None => text.to_owned(),
            Normalization::CollapseWhitespace => text.split_whitespace().collect::<Vec<_>>().join(" "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ImageEvalResult {
    pub image_id: String,
    /// Ground-truth character count.
    pub n: u64,
    /// Raw edit operations needed to turn the OCR output into the truth.
    pub e: u64,
    /// `min(e, n)`.
    pub e_clamped: u64,
    pub accuracy: f64,
}

impl ImageEvalResult {
    /// Builds a result from counts. With `n == 0` the accuracy is 1 when the
    /// OCR output is also empty and 0 otherwise.
    pub fn from_counts(image_id: impl Into<String>, n: u64, e: u64) -> Self {
        let e_clamped = e.min(n);
        let accuracy = if n == 0 {
            if e == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            (n - e_clamped) as f64 / n as f64
        };
        ImageEvalResult {
            image_id: image_id.into(),
            n,
            e,
            e_clamped,
            accuracy,
        }
    }
}

/// Scores one OCR document against its ground truth.
pub fn score_image(image_id: impl Into<String>, gt: &str, ocr: &str, norm: Normalization) -> ImageEvalResult {
    let gt = norm.apply(gt);
    let ocr = norm.apply(ocr);
    let n = gt.chars().count() as u64;
    let e = edit_distance(&gt, &ocr) as u64;
    ImageEvalResult::from_counts(image_id, n, e)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AggregateReport {
    pub per_image: Vec<ImageEvalResult>,
    pub total_n: u64,
    pub total_e_clamped: u64,
    /// `(total_n - total_e_clamped) / total_n`: weighted by characters, not a
    /// mean of per-image accuracies.
    pub overall_accuracy: f64,
    pub normalization: Normalization,
}

/// Combines per-image results. An empty list is an error.
///
/// When no image has ground-truth text the overall accuracy is 1 if every
/// image scored 1 and 0 otherwise, following the per-image convention.
pub fn aggregate(results: &[ImageEvalResult]) -> Result<AggregateReport> {
    aggregate_with(results, Normalization::default())
}

pub fn aggregate_with(results: &[ImageEvalResult], normalization: Normalization) -> Result<AggregateReport> {
    if results.is_empty() {
        return Err(Error::Eval("cannot aggregate an empty result list".into()));
    }
    let total_n: u64 = results.iter().map(|r| r.n).sum();
    let total_e_clamped: u64 = results.iter().map(|r| r.e_clamped).sum();
    let overall_accuracy = if total_n == 0 {
        if results.iter().all(|r| r.e == 0) {
            1.0
        } else {
            0.0
        }
    } else {
        (total_n - total_e_clamped) as f64 / total_n as f64
    };
    Ok(AggregateReport {
        per_image: results.to_vec(),
        total_n,
        total_e_clamped,
        overall_accuracy,
        normalization,
    })
}
