//! Adapter to an external OCR engine. Detected regions are cropped from the
//! original image, handed to the engine one at a time and the recognized
//! strings are returned in input order.

mod external;
mod mock;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use external::ExternalEngine;
pub use mock::{crop_hash, MockEngine};

use crate::detector::TextRegion;
use crate::error::{Error, Result};
use crate::image::RasterImage;

/// Layout hint passed to the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PageSegmentation {
    #[default]
    SingleBlock,
    SingleLine,
    SingleWord,
}

impl PageSegmentation {
    /// Tesseract `--psm` value.
    pub fn psm(self) -> u8 {
        match self {
            PageSegmentation::SingleBlock => 6,
            PageSegmentation::SingleLine => 7,
            PageSegmentation::SingleWord => 8,
        }
    }
}

impl FromStr for PageSegmentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "block" | "single-block" | "6" => Ok(PageSegmentation::SingleBlock),
            "line" | "single-line" | "7" => Ok(PageSegmentation::SingleLine),
            "word" | "single-word" | "8" => Ok(PageSegmentation::SingleWord),
            other => Err(Error::Config(format!("unknown page segmentation `{other}`"))),
        }
    }
}

impl fmt::Display for PageSegmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PageSegmentation::SingleBlock => "single-block",
            PageSegmentation::SingleLine => "single-line",
            PageSegmentation::SingleWord => "single-word",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct OcrEngineConfig {
    /// Program and arguments. `{image}`, `{lang}` and `{psm}` are substituted
    /// with the crop file path, the language code and the segmentation number.
    pub command: Vec<String>,
    pub language: String,
    pub page_segmentation: PageSegmentation,
    pub timeout_ms: u64,
    /// Regions recognized concurrently per image.
    pub parallelism: usize,
}

impl Default for OcrEngineConfig {
    fn default() -> Self {
        OcrEngineConfig {
            command: ["tesseract", "{image}", "stdout", "-l", "{lang}", "--psm", "{psm}"]
                .map(String::from)
                .to_vec(),
            language: "tur".into(),
            page_segmentation: PageSegmentation::SingleBlock,
            timeout_ms: 10_000,
            parallelism: 1,
        }
    }
}

/// Outcome of one engine call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Text(String),
    TimedOut,
    Failed(String),
}

/// An OCR backend. Launch problems are errors; anything that concerns only
/// the given crop is reported through [`Recognition`].
pub trait OcrEngine: Send + Sync {
    fn recognize(&self, crop: &RasterImage) -> Result<Recognition>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "message")]
pub enum RegionStatus {
    Recognized,
    TimedOut,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecognizedRegion {
    pub region: TextRegion,
    /// Recognized text without trailing whitespace; empty on failure.
    pub text: String,
    pub engine_time: Duration,
    pub status: RegionStatus,
}

/// Optional crop transform applied before the engine sees the pixels.
pub type CropHook<'a> = &'a (dyn Fn(RasterImage) -> RasterImage + Sync);

/// Strips trailing whitespace and form feeds that engines append.
pub fn clean_engine_output(raw: &str) -> String {
    raw.trim_end_matches(|c: char| c.is_whitespace() || c == '\u{c}')
        .to_owned()
}

/// One result per region, in input order.
pub fn recognize_regions(
    img: &RasterImage,
    regions: &[TextRegion],
    engine: &dyn OcrEngine,
    parallelism: usize,
) -> Result<Vec<RecognizedRegion>> {
    recognize_regions_with(img, regions, engine, parallelism, None)
}

pub fn recognize_regions_with(
    img: &RasterImage,
    regions: &[TextRegion],
    engine: &dyn OcrEngine,
    parallelism: usize,
    hook: Option<CropHook<'_>>,
) -> Result<Vec<RecognizedRegion>> {
    let run = |region: &TextRegion| -> Result<RecognizedRegion> {
        let mut crop = img.crop(region.bbox)?;
        if let Some(h) = hook {
            crop = h(crop);
        }
        let start = Instant::now();
        let outcome = engine.recognize(&crop)?;
        let engine_time = start.elapsed();
        let (text, status) = match outcome {
            Recognition::Text(t) => (clean_engine_output(&t), RegionStatus::Recognized),
            Recognition::TimedOut => (String::new(), RegionStatus::TimedOut),
            Recognition::Failed(m) => (String::new(), RegionStatus::Failed(m)),
        };
        Ok(RecognizedRegion {
            region: *region,
            text,
            engine_time,
            status,
        })
    };

    if parallelism <= 1 || regions.len() <= 1 {
        return regions.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::Engine(format!("cannot start OCR worker pool: {e}")))?;
    // indexed collect keeps input order regardless of completion order
    pool.install(|| regions.par_iter().map(run).collect())
}

/// One line per region, in order, each terminated by `\n`. Newlines inside a
/// recognized string are kept as they are.
pub fn emit_text(results: &[RecognizedRegion]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&r.text);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::Rect;

    fn region(x: u32, y: u32, w: u32, h: u32) -> TextRegion {
        TextRegion {
            bbox: Rect::new(x, y, w, h),
            scale_index: 0,
            weighted_extent: 0.0,
        }
    }

    fn done(text: &str) -> RecognizedRegion {
        RecognizedRegion {
            region: region(0, 0, 1, 1),
            text: text.into(),
            engine_time: Duration::ZERO,
            status: RegionStatus::Recognized,
        }
    }

    #[test]
    fn emit_lines() {
        assert_eq!(emit_text(&[done("ÇIKIŞ"), done("METRO")]), "ÇIKIŞ\nMETRO\n");
        assert_eq!(emit_text(&[]), "");
        assert_eq!(emit_text(&[done("İKİ\nSATIR"), done("X")]), "İKİ\nSATIR\nX\n");
    }

    #[test]
    fn cleans_trailing_noise() {
        assert_eq!(clean_engine_output("DURAK\n\n\u{c}"), "DURAK");
        assert_eq!(clean_engine_output("A\nB  \n"), "A\nB");
    }

    struct Echo;

    impl OcrEngine for Echo {
        fn recognize(&self, crop: &RasterImage) -> Result<Recognition> {
            if crop.width() == 13 {
                return Ok(Recognition::TimedOut);
            }
            std::thread::sleep(Duration::from_millis(u64::from(40 - crop.width())));
            Ok(Recognition::Text(format!("{}\n", crop.width())))
        }
    }

    #[test]
    fn order_is_preserved_and_failures_marked() {
        let img = RasterImage::filled(64, 16, 3, 200).unwrap();
        let regions: Vec<_> = [30, 5, 13, 20, 1].iter().map(|&w| region(0, 0, w, 4)).collect();
        for par in [1, 4] {
            let out = recognize_regions(&img, &regions, &Echo, par).unwrap();
            assert_eq!(out.len(), regions.len());
            let texts: Vec<_> = out.iter().map(|r| r.text.as_str()).collect();
            assert_eq!(texts, ["30", "5", "", "20", "1"]);
            assert_eq!(out[2].status, RegionStatus::TimedOut);
            assert_eq!(out[3].region, regions[3]);
        }
        assert!(recognize_regions(&img, &[], &Echo, 4).unwrap().is_empty());
    }

    #[test]
    fn hook_sees_crop() {
        let img = RasterImage::filled(64, 16, 3, 200).unwrap();
        let widen = |c: RasterImage| RasterImage::filled(c.width() + 1, c.height(), 3, 0).unwrap();
        let out = recognize_regions_with(&img, &[region(0, 0, 5, 5)], &Echo, 1, Some(&widen)).unwrap();
        assert_eq!(out[0].text, "6");
    }

    #[test]
    fn psm_numbers() {
        assert_eq!(PageSegmentation::default(), PageSegmentation::SingleBlock);
        assert_eq!(PageSegmentation::SingleBlock.psm(), 6);
        assert_eq!("line".parse::<PageSegmentation>().unwrap().psm(), 7);
        assert_eq!(OcrEngineConfig::default().page_segmentation, PageSegmentation::SingleBlock);
    }
}
