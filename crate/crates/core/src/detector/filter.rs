use serde::{Deserialize, Serialize};

use super::{DetectorConfig, TextRegion};
use crate::image::{BinaryMask, Rect};
use crate::imgproc::ComponentStats;

/// Text/non-text tests, in the order they are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FilterTest {
    Area,
    Height,
    Aspect,
    Extent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FilterDecision {
    /// First failing test, `None` when the component is accepted.
    pub rejected_by: Option<FilterTest>,
    /// `ln(aspect ratio) * extent` of the closed component; 0 when the
    /// cascade stopped before the extent test.
    pub weighted_extent: f64,
}

impl FilterDecision {
    pub fn accepted(&self) -> bool {
        self.rejected_by.is_none()
    }

    fn reject(test: FilterTest) -> Self {
        FilterDecision {
            rejected_by: Some(test),
            weighted_extent: 0.0,
        }
    }
}

/// Summed-area table over a binary mask for O(1) foreground counts in a box.
#[derive(Debug, Clone)]
pub struct IntegralMask {
    width: usize,
    sums: Vec<u32>,
}

impl IntegralMask {
    pub fn new(mask: &BinaryMask) -> Self {
        let (w, h) = (mask.width() as usize, mask.height() as usize);
        let stride = w + 1;
        let mut sums = vec![0u32; stride * (h + 1)];
        let bits = mask.bits();
        for y in 0..h {
            let mut row = 0u32;
            for x in 0..w {
                row += u32::from(bits[y * w + x]);
                sums[(y + 1) * stride + x + 1] = sums[y * stride + x + 1] + row;
            }
        }
        IntegralMask { width: w, sums }
    }

    pub fn count(&self, r: Rect) -> u64 {
        let stride = self.width + 1;
        let (x0, y0) = (r.x as usize, r.y as usize);
        let (x1, y1) = (r.right() as usize, r.bottom() as usize);
        let s = |x: usize, y: usize| u64::from(self.sums[y * stride + x]);
        s(x1, y1) + s(x0, y0) - s(x0, y1) - s(x1, y0)
    }
}

fn extent_passes(extent: f64, log_ar: f64, threshold: f64) -> bool {
    extent >= threshold || log_ar * extent >= threshold
}

/// Runs the area, height, aspect-ratio and extent tests in that order and
/// reports the first failure.
///
/// The extent test passes when the extent, or the extent weighted by the
/// natural log of the aspect ratio, reaches the threshold. It is evaluated
/// twice: on the closed component (`extent_threshold`) and on the raw edge
/// pixels inside the same box (`extent_threshold * raw_edge_extent_factor`).
pub fn filter_component(
    stats: &ComponentStats,
    raw_edges: &IntegralMask,
    image_width: u32,
    image_height: u32,
    cfg: &DetectorConfig,
) -> FilterDecision {
    let image_area = f64::from(image_width) * f64::from(image_height);
    if (stats.area as f64) < cfg.min_area_fraction * image_area {
        return FilterDecision::reject(FilterTest::Area);
    }

    let h = f64::from(stats.bbox.h);
    let max_height = cfg.max_height_fraction * f64::from(image_width.min(image_height));
    if stats.bbox.h < cfg.min_height_px || h > max_height {
        return FilterDecision::reject(FilterTest::Height);
    }

    let ar = stats.aspect_ratio();
    if ar < cfg.min_aspect_ratio {
        return FilterDecision::reject(FilterTest::Aspect);
    }

    let log_ar = ar.ln();
    let closed_extent = stats.extent();
    let raw_extent = raw_edges.count(stats.bbox) as f64 / stats.bbox.area() as f64;
    let weighted_extent = log_ar * closed_extent;
    let ok = extent_passes(closed_extent, log_ar, cfg.extent_threshold)
        && extent_passes(raw_extent, log_ar, cfg.raw_edge_extent_threshold());
    FilterDecision {
        rejected_by: (!ok).then_some(FilterTest::Extent),
        weighted_extent,
    }
}

fn round_half_away(v: f64) -> i64 {
    v.round() as i64
}

/// Grows a box by `expand_left_factor * h` to the left, then by
/// `expand_all_factor * h` on every side, clipping to the image.
pub fn expand_box(region: &TextRegion, image_width: u32, image_height: u32, cfg: &DetectorConfig) -> TextRegion {
    let b = region.bbox;
    let h = f64::from(b.h);
    let left = round_half_away(cfg.expand_left_factor * h);
    let all = round_half_away(cfg.expand_all_factor * h);

    let x0 = (i64::from(b.x) - left - all).max(0);
    let y0 = (i64::from(b.y) - all).max(0);
    let x1 = (i64::from(b.right()) + all).min(i64::from(image_width));
    let y1 = (i64::from(b.bottom()) + all).min(i64::from(image_height));

    TextRegion {
        bbox: Rect::new(x0 as u32, y0 as u32, (x1 - x0).max(1) as u32, (y1 - y0).max(1) as u32),
        ..*region
    }
}
