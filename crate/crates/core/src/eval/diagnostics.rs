use serde::{Deserialize, Serialize};

use crate::dataset::GroundTruthAnnotation;
use crate::detector::TextRegion;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchedPair {
    pub pred: usize,
    pub gt: usize,
    pub iou: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DetectionDiagnostics {
    /// Matches over predictions; 1 when there are no predictions.
    pub precision: f64,
    /// Matches over ground-truth boxes; 1 when there is no ground truth.
    pub recall: f64,
    pub matched_pairs: Vec<MatchedPair>,
}

/// Box-level precision and recall. Pairs are matched greedily one-to-one by
/// descending IoU (ties by prediction then ground-truth index), keeping pairs
/// with IoU at or above the threshold. Greedy matching is not an optimal
/// assignment.
pub fn detection_diagnostics(
    pred: &[TextRegion],
    gt: &GroundTruthAnnotation,
    iou_threshold: f64,
) -> Result<DetectionDiagnostics> {
    if !(iou_threshold > 0.0 && iou_threshold < 1.0) {
        return Err(Error::Config(format!("IoU threshold {iou_threshold} is outside (0, 1)")));
    }
    let mut candidates = Vec::new();
    for (pi, p) in pred.iter().enumerate() {
        for (gi, g) in gt.boxes.iter().enumerate() {
            let iou = p.bbox.iou(&g.rect());
            if iou >= iou_threshold {
                candidates.push(MatchedPair { pred: pi, gt: gi, iou });
            }
        }
    }
    candidates.sort_by(|a, b| b.iou.total_cmp(&a.iou).then(a.pred.cmp(&b.pred)).then(a.gt.cmp(&b.gt)));
    let mut pred_used = vec![false; pred.len()];
    let mut gt_used = vec![false; gt.boxes.len()];
    let mut matched_pairs = Vec::new();
    for c in candidates {
        if !pred_used[c.pred] && !gt_used[c.gt] {
            pred_used[c.pred] = true;
            gt_used[c.gt] = true;
            matched_pairs.push(c);
        }
    }
    let m = matched_pairs.len() as f64;
    let ratio = |total: usize| if total == 0 { 1.0 } else { m / total as f64 };
    Ok(DetectionDiagnostics {
        precision: ratio(pred.len()),
        recall: ratio(gt.boxes.len()),
        matched_pairs,
    })
}
