//! Text detection: horizontal edges, morphological closing to turn text
//! lines into blobs, a cascade of shape tests on the connected components,
//! and an image pyramid for text too large for the fixed closing element.

mod config;
mod filter;
mod merge;
mod order;
mod pyramid;
mod record;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use config::{CloseKernels, ColorMode, DetectorConfig, EdgeMethod, KernelSize};
pub use filter::{expand_box, filter_component, FilterDecision, FilterTest, IntegralMask};
pub use merge::{merge_detections, overlap_ratio};
pub use order::{reading_order, sort_reading_order, LINE_OVERLAP_FRACTION};
pub use pyramid::{build_pyramid_plan, PyramidLevel};
pub use record::{DetectionRecord, RegionRecord};

use crate::error::Result;
use crate::image::{BinaryMask, RasterImage, Rect};
use crate::imgproc::{self, GradientMethod};

/// A detected text box in original-image coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TextRegion {
    pub bbox: Rect,
    /// Pyramid level the box was found at (0 = original).
    pub scale_index: u32,
    /// `ln(aspect ratio) * extent` of the accepted component.
    pub weighted_extent: f64,
}

/// Wall-clock time spent per detection stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StageDurations {
    pub edge: Duration,
    pub close: Duration,
    pub components: Duration,
    pub filter: Duration,
    pub pyramid: Duration,
    pub merge: Duration,
    pub total: Duration,
}

impl StageDurations {
    pub const STAGES: [&'static str; 7] =
        ["edge", "close", "components", "filter", "pyramid", "merge", "total"];

    pub fn as_array(&self) -> [Duration; 7] {
        [
            self.edge,
            self.close,
            self.components,
            self.filter,
            self.pyramid,
            self.merge,
            self.total,
        ]
    }
}

fn timed<T>(slot: &mut Duration, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot += start.elapsed();
    out
}

fn gray_view(img: &RasterImage) -> Result<std::borrow::Cow<'_, RasterImage>> {
    use std::borrow::Cow;
    if img.channels() == 1 {
        Ok(Cow::Borrowed(img))
    } else {
        Ok(Cow::Owned(imgproc::to_grayscale(img)?))
    }
}

/// Binary edge map for the configured edge method and color mode.
///
/// Gradient methods threshold the (max-channel, in RGB mode) horizontal
/// gradient with Otsu; Canny produces its edge map directly. Single-channel
/// input in RGB mode is processed as grayscale.
pub fn compute_edge_mask(img: &RasterImage, cfg: &DetectorConfig) -> Result<BinaryMask> {
    cfg.validate()?;
    let method = match cfg.edge_method {
        EdgeMethod::Canny => return imgproc::canny(&*gray_view(img)?),
        EdgeMethod::Sobel => GradientMethod::Sobel,
        EdgeMethod::MorphGradient => GradientMethod::Morph,
    };
    let grad = match (cfg.color_mode, img.channels()) {
        (ColorMode::Rgb, 3) => imgproc::max_channel_gx(img, method)?,
        _ => imgproc::gray_gx(&*gray_view(img)?, method)?,
    };
    Ok(imgproc::otsu_threshold(&grad))
}

fn detect_level(
    img: &RasterImage,
    cfg: &DetectorConfig,
    kernel: KernelSize,
    scale_index: u32,
    times: &mut StageDurations,
) -> Result<Vec<TextRegion>> {
    let edges = timed(&mut times.edge, || compute_edge_mask(img, cfg))?;
    let closed = timed(&mut times.close, || imgproc::morph_close(&edges, kernel.w, kernel.h));
    let (_, components) = timed(&mut times.components, || imgproc::connected_components(&closed));
    let regions = timed(&mut times.filter, || {
        let raw = IntegralMask::new(&edges);
        components
            .iter()
            .filter_map(|c| {
                let d = filter_component(c, &raw, img.width(), img.height(), cfg);
                d.accepted().then(|| {
                    let region = TextRegion {
                        bbox: c.bbox,
                        scale_index,
                        weighted_extent: d.weighted_extent,
                    };
                    expand_box(&region, img.width(), img.height(), cfg)
                })
            })
            .collect()
    });
    Ok(regions)
}

/// Edge mask, closing, component filtering and box expansion on one image.
/// The closing element follows `cfg.multi_scale`; boxes are in `img`'s frame.
pub fn detect_single_scale(
    img: &RasterImage,
    cfg: &DetectorConfig,
    scale_index: u32,
) -> Result<Vec<TextRegion>> {
    detect_level(img, cfg, cfg.close_kernel(), scale_index, &mut StageDurations::default())
}

/// Runs single-scale detection with the multi-scale closing element on every
/// pyramid level, maps boxes back to the input frame and merges them.
pub fn detect_multi_scale(img: &RasterImage, cfg: &DetectorConfig) -> Result<Vec<TextRegion>> {
    Ok(detect_multi_scale_timed(img, cfg)?.0)
}

fn detect_multi_scale_timed(
    img: &RasterImage,
    cfg: &DetectorConfig,
) -> Result<(Vec<TextRegion>, StageDurations)> {
    let start = Instant::now();
    let mut times = StageDurations::default();
    let kernel = cfg.close_kernel_multi.get(cfg.edge_method);
    let plan = build_pyramid_plan(img.width(), img.height(), cfg);

    let mut all = Vec::new();
    let mut level_img = std::borrow::Cow::Borrowed(img);
    for level in &plan {
        if level.level > 0 {
            let next = timed(&mut times.pyramid, || {
                imgproc::resize_bilinear(&level_img, level.width, level.height)
            })?;
            level_img = std::borrow::Cow::Owned(next);
        }
        let found = detect_level(&level_img, cfg, kernel, level.level, &mut times)?;
        all.extend(found.into_iter().map(|r| TextRegion {
            bbox: level.to_original(r.bbox, img.width(), img.height()),
            ..r
        }));
    }
    let merged = timed(&mut times.merge, || merge_detections(&all, cfg.overlap_merge_threshold));
    times.total = start.elapsed();
    Ok((merged, times))
}

/// Detects text with the mode selected in `cfg` (single or multi-scale).
pub fn detect(img: &RasterImage, cfg: &DetectorConfig) -> Result<Vec<TextRegion>> {
    Ok(detect_timed(img, cfg)?.0)
}

/// [`detect`] plus per-stage wall-clock timings.
pub fn detect_timed(img: &RasterImage, cfg: &DetectorConfig) -> Result<(Vec<TextRegion>, StageDurations)> {
    cfg.validate()?;
    if cfg.multi_scale {
        detect_multi_scale_timed(img, cfg)
    } else {
        let start = Instant::now();
        let mut times = StageDurations::default();
        let regions = detect_level(img, cfg, cfg.close_kernel(), 0, &mut times)?;
        times.total = start.elapsed();
        Ok((regions, times))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blank_images_yield_nothing() {
        let img = RasterImage::filled(320, 240, 3, 255).unwrap();
        for multi in [false, true] {
            for (m, c) in [
                (EdgeMethod::Sobel, ColorMode::Gray),
                (EdgeMethod::Sobel, ColorMode::Rgb),
                (EdgeMethod::MorphGradient, ColorMode::Gray),
                (EdgeMethod::MorphGradient, ColorMode::Rgb),
                (EdgeMethod::Canny, ColorMode::Gray),
            ] {
                let cfg = DetectorConfig::with_mode(m, c, multi);
                assert!(detect(&img, &cfg).unwrap().is_empty());
                assert_eq!(compute_edge_mask(&img, &cfg).unwrap().count(), 0);
            }
        }
    }

    #[test]
    fn canny_rgb_is_a_config_error() {
        let img = RasterImage::filled(32, 32, 3, 0).unwrap();
        let cfg = DetectorConfig::with_mode(EdgeMethod::Canny, ColorMode::Rgb, false);
        assert!(matches!(compute_edge_mask(&img, &cfg), Err(crate::Error::Config(_))));
        assert!(detect(&img, &cfg).is_err());
    }

    #[test]
    fn green_only_variation_matches_gray_on_green() {
        let img = RasterImage::rgb_from_fn(40, 30, |x, y| {
            [90, ((x * 37 + y * 11) % 256) as u8, 17]
        })
        .unwrap();
        let cfg = DetectorConfig::with_mode(EdgeMethod::MorphGradient, ColorMode::Rgb, false);
        let rgb = compute_edge_mask(&img, &cfg).unwrap();
        let green = img.channel(1).unwrap();
        let gray_cfg = DetectorConfig::with_mode(EdgeMethod::MorphGradient, ColorMode::Gray, false);
        assert_eq!(rgb, compute_edge_mask(&green, &gray_cfg).unwrap());
    }
}
