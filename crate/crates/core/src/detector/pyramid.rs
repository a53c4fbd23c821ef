use serde::{Deserialize, Serialize};

use super::DetectorConfig;
use crate::image::Rect;
use crate::imgproc::downsampled_dims;

/// One pyramid level; `scale_x`/`scale_y` map level pixels back to the
/// original frame using the actual rounded dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PyramidLevel {
    pub level: u32,
    pub width: u32,
    pub height: u32,
    pub scale_x: f64,
    pub scale_y: f64,
}

impl PyramidLevel {
    /// Maps a box from this level's frame into the original image, clipped to it.
    pub fn to_original(&self, r: Rect, original_width: u32, original_height: u32) -> Rect {
        let map = |v: u32, s: f64, limit: u32| ((f64::from(v) * s).round() as u32).min(limit);
        let x0 = map(r.x, self.scale_x, original_width - 1);
        let y0 = map(r.y, self.scale_y, original_height - 1);
        let x1 = map(r.right(), self.scale_x, original_width).max(x0 + 1);
        let y1 = map(r.bottom(), self.scale_y, original_height).max(y0 + 1);
        Rect::new(x0, y0, x1 - x0, y1 - y0)
    }
}

/// Level 0 is the input; each further level divides the previous level's
/// sides by `pyramid_factor` (rounded) and is kept only while its shorter
/// side is at least `pyramid_min_side`.
pub fn build_pyramid_plan(width: u32, height: u32, cfg: &DetectorConfig) -> Vec<PyramidLevel> {
    let mut plan = vec![PyramidLevel {
        level: 0,
        width,
        height,
        scale_x: 1.0,
        scale_y: 1.0,
    }];
    let (mut w, mut h) = (width, height);
    loop {
        let (nw, nh) = downsampled_dims(w, h, cfg.pyramid_factor);
        if nw.min(nh) < cfg.pyramid_min_side || nw == 0 || nh == 0 {
            break;
        }
        plan.push(PyramidLevel {
            level: plan.len() as u32,
            width: nw,
            height: nh,
            scale_x: f64::from(width) / f64::from(nw),
            scale_y: f64::from(height) / f64::from(nh),
        });
        (w, h) = (nw, nh);
    }
    plan
}
