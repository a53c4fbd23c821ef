use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::detector::reading_order;
use crate::error::{Error, Result};
use crate::image::Rect;

/// One labeled text box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnotatedBox {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
    pub transcription: String,
}

impl AnnotatedBox {
    pub fn rect(&self) -> Rect {
        Rect::new(self.x, self.y, self.w, self.h)
    }
}

/// Ground truth for one image: its dimensions and labeled text boxes.
///
/// Files are canonical JSON: keys in declaration order, two-space indentation,
/// raw UTF-8 (no `\u` escapes for non-ASCII), boxes sorted by `(y, x, h, w,
/// transcription)`, one trailing newline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GroundTruthAnnotation {
    pub image_id: String,
    pub image_width: u32,
    pub image_height: u32,
    pub boxes: Vec<AnnotatedBox>,
}

impl GroundTruthAnnotation {
    pub fn empty(image_id: impl Into<String>, image_width: u32, image_height: u32) -> Self {
        GroundTruthAnnotation {
            image_id: image_id.into(),
            image_width,
            image_height,
            boxes: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.image_id.is_empty() {
            return Err(Error::Validation("imageId must not be empty".into()));
        }
        if self.image_width == 0 || self.image_height == 0 {
            return Err(Error::Validation(format!(
                "image dimensions must be positive, got {}x{}",
                self.image_width, self.image_height
            )));
        }
        for (i, b) in self.boxes.iter().enumerate() {
            if b.w == 0 || b.h == 0 {
                return Err(Error::Validation(format!(
                    "box {i} ({}, {}, {}, {}) has zero size",
                    b.x, b.y, b.w, b.h
                )));
            }
            if !b.rect().fits_in(self.image_width, self.image_height) {
                return Err(Error::Validation(format!(
                    "box {i} ({}, {}, {}, {}) \"{}\" exceeds the {}x{} image",
                    b.x, b.y, b.w, b.h, b.transcription, self.image_width, self.image_height
                )));
            }
        }
        Ok(())
    }

    /// Same content with boxes in canonical order.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        out.boxes.sort_by(|a, b| {
            (a.y, a.x, a.h, a.w, &a.transcription).cmp(&(b.y, b.x, b.h, b.w, &b.transcription))
        });
        out
    }

    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.canonical()).expect("annotation serializes");
        s.push('\n');
        s
    }

    /// Parses and validates an annotation document.
    pub fn from_json(text: &str, origin: &Path) -> Result<Self> {
        let ann: GroundTruthAnnotation = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        ann.validate()?;
        Ok(ann)
    }

    /// Ground-truth text in reading order, one transcription per line.
    pub fn flatten(&self) -> String {
        let rects: Vec<Rect> = self.boxes.iter().map(AnnotatedBox::rect).collect();
        let mut out = String::new();
        for i in reading_order(&rects) {
            out.push_str(&self.boxes[i].transcription);
            out.push('\n');
        }
        out
    }
}

fn utf8_error(path: &Path, bytes: &[u8], e: std::str::Utf8Error) -> Error {
    let valid = &bytes[..e.valid_up_to()];
    let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
    let column = valid.len() - valid.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
    Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message: "annotation files must be UTF-8".into(),
    }
}

pub fn load_annotation(path: impl AsRef<Path>) -> Result<GroundTruthAnnotation> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| utf8_error(path, &bytes, e))?;
    GroundTruthAnnotation::from_json(text, path)
}

/// Validates and writes the canonical form. The file is replaced atomically,
/// so a failed save leaves any previous content intact.
pub fn save_annotation(ann: &GroundTruthAnnotation, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    ann.validate()?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(ann.to_canonical_json().as_bytes())
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn flatten_ground_truth(ann: &GroundTruthAnnotation) -> String {
    ann.flatten()
}

/// Reads the plain-text import format: one box per line as
/// `x y w h<TAB>transcription`. Blank lines and lines starting with `#` are skipped.
pub fn import_tsv(
    text: &str,
    image_id: &str,
    image_width: u32,
    image_height: u32,
    origin: &Path,
) -> Result<GroundTruthAnnotation> {
    let mut ann = GroundTruthAnnotation::empty(image_id, image_width, image_height);
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: n + 1,
            column: 1,
            message,
        };
        let (coords, transcription) = line
            .split_once('\t')
            .ok_or_else(|| parse_err("expected `x y w h<TAB>text`".into()))?;
        let nums: Vec<u32> = coords
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| parse_err(format!("bad coordinate `{t}`: {e}"))))
            .collect::<Result<_>>()?;
        let [x, y, w, h] = nums[..] else {
            return Err(parse_err(format!("expected 4 coordinates, got {}", nums.len())));
        };
        ann.boxes.push(AnnotatedBox {
            x,
            y,
            w,
            h,
            transcription: transcription.to_owned(),
        });
    }
    ann.validate()?;
    Ok(ann)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GroundTruthAnnotation {
        GroundTruthAnnotation {
            image_id: "IMG_0007".into(),
            image_width: 1024,
            image_height: 576,
            boxes: vec![
                AnnotatedBox { x: 300, y: 200, w: 120, h: 40, transcription: "GİRİŞ".into() },
                AnnotatedBox { x: 10, y: 20, w: 100, h: 30, transcription: "ÇIKIŞ".into() },
            ],
        }
    }

    #[test]
    fn round_trip_and_canonical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.json");
        let ann = sample();
        save_annotation(&ann, &path).unwrap();
        let first = std::fs::read(&path).unwrap();
        let loaded = load_annotation(&path).unwrap();
        assert_eq!(loaded, ann.canonical());
        save_annotation(&loaded, &path).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), first);

        let text = String::from_utf8(first).unwrap();
        assert!(text.contains("\"transcription\": \"ÇIKIŞ\""));
        assert!(text.find("ÇIKIŞ").unwrap() < text.find("GİRİŞ").unwrap());
        assert!(text.ends_with("}\n"));
        // Ç is U+00C7, two bytes in UTF-8
        assert!(text.as_bytes().windows(2).any(|w| w == [0xC3, 0x87]));
    }

    #[test]
    fn single_box_fixture() {
        let json = r#"{"imageId":"x","imageWidth":200,"imageHeight":100,
            "boxes":[{"x":10,"y":20,"w":100,"h":30,"transcription":"ÇIKIŞ"}]}"#;
        let ann = GroundTruthAnnotation::from_json(json, Path::new("x.json")).unwrap();
        assert_eq!(ann.boxes.len(), 1);
        assert_eq!(ann.boxes[0].transcription, "ÇIKIŞ");
    }

    #[test]
    fn empty_box_list_is_valid() {
        let json = r#"{"imageId":"x","imageWidth":200,"imageHeight":100,"boxes":[]}"#;
        let ann = GroundTruthAnnotation::from_json(json, Path::new("x.json")).unwrap();
        assert!(ann.boxes.is_empty());
        assert_eq!(ann.flatten(), "");
    }

    #[test]
    fn out_of_bounds_box_names_the_box() {
        let json = r#"{"imageId":"x","imageWidth":200,"imageHeight":100,
            "boxes":[{"x":150,"y":20,"w":100,"h":30,"transcription":"DURAK"}]}"#;
        let err = GroundTruthAnnotation::from_json(json, Path::new("x.json")).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, Error::Validation(_)));
        assert!(msg.contains("box 0") && msg.contains("DURAK"), "{msg}");
    }

    #[test]
    fn malformed_json_reports_line() {
        let json = "{\n  \"imageId\": \"x\",\n  \"imageWidth\": oops\n}";
        match GroundTruthAnnotation::from_json(json, Path::new("bad.json")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_utf8_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, b"{\n\"imageId\": \"\xff\"}").unwrap();
        match load_annotation(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn failed_save_keeps_previous_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.json");
        save_annotation(&sample(), &path).unwrap();
        let before = std::fs::read(&path).unwrap();
        let mut bad = sample();
        bad.boxes[0].x = 1000;
        assert!(save_annotation(&bad, &path).is_err());
        assert_eq!(std::fs::read(&path).unwrap(), before);
    }

    #[test]
    fn flatten_in_reading_order() {
        let mut ann = GroundTruthAnnotation::empty("x", 500, 500);
        ann.boxes.push(AnnotatedBox { x: 10, y: 200, w: 80, h: 30, transcription: "GİRİŞ".into() });
        ann.boxes.push(AnnotatedBox { x: 10, y: 20, w: 80, h: 30, transcription: "OTOGAR".into() });
        assert_eq!(flatten_ground_truth(&ann), "OTOGAR\nGİRİŞ\n");

        let mut ann = GroundTruthAnnotation::empty("x", 500, 500);
        ann.boxes.push(AnnotatedBox { x: 300, y: 100, w: 80, h: 30, transcription: "METRO".into() });
        ann.boxes.push(AnnotatedBox { x: 10, y: 105, w: 80, h: 30, transcription: "ÇIKIŞ".into() });
        assert_eq!(flatten_ground_truth(&ann), "ÇIKIŞ\nMETRO\n");
    }

    #[test]
    fn tsv_import() {
        let text = "# header\n10 20 100 30\tÇIKIŞ\n\n5 5 10 10\ttwo words\n";
        let ann = import_tsv(text, "t", 200, 100, Path::new("t.tsv")).unwrap();
        assert_eq!(ann.boxes.len(), 2);
        assert_eq!(ann.boxes[1].transcription, "two words");
        assert!(import_tsv("1 2 3\tx", "t", 200, 100, Path::new("t.tsv")).is_err());
        assert!(import_tsv("1 2 3 4 x", "t", 200, 100, Path::new("t.tsv")).is_err());
    }
}
