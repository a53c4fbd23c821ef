use std::path::Path;

use serde::{Deserialize, Serialize};

use super::TextRegion;
use crate::error::{Error, Result};
use crate::image::Rect;

/// Serialized form of one detected box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RegionRecord {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
    pub scale_index: u32,
}

/// Per-image detection output file (JSON):
///
/// ```json
/// {
///   "imageId": "IMG_0001",
///   "imageWidth": 1024,
///   "imageHeight": 576,
///   "regions": [ { "x": 94, "y": 48, "w": 208, "h": 44, "scaleIndex": 0 } ]
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DetectionRecord {
    pub image_id: String,
    pub image_width: u32,
    pub image_height: u32,
    pub regions: Vec<RegionRecord>,
}

impl DetectionRecord {
    pub fn new(image_id: impl Into<String>, width: u32, height: u32, regions: &[TextRegion]) -> Self {
        DetectionRecord {
            image_id: image_id.into(),
            image_width: width,
            image_height: height,
            regions: regions
                .iter()
                .map(|r| RegionRecord {
                    x: r.bbox.x,
                    y: r.bbox.y,
                    w: r.bbox.w,
                    h: r.bbox.h,
                    scale_index: r.scale_index,
                })
                .collect(),
        }
    }

    pub fn text_regions(&self) -> Vec<TextRegion> {
        self.regions
            .iter()
            .map(|r| TextRegion {
                bbox: Rect::new(r.x, r.y, r.w, r.h),
                scale_index: r.scale_index,
                weighted_extent: 0.0,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str, origin: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let rec = DetectionRecord::new(
            "a",
            10,
            10,
            &[TextRegion {
                bbox: Rect::new(1, 2, 3, 4),
                scale_index: 2,
                weighted_extent: 0.5,
            }],
        );
        let json = rec.to_json();
        assert!(json.contains("\"scaleIndex\": 2"));
        assert!(json.ends_with("}\n"));
        assert_eq!(DetectionRecord::from_json(&json, Path::new("x")).unwrap(), rec);
        assert_eq!(rec.text_regions()[0].bbox, Rect::new(1, 2, 3, 4));
    }
}
