use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EdgeMethod {
    Sobel,
    MorphGradient,
    Canny,
}

impl EdgeMethod {
    pub const ALL: [EdgeMethod; 3] = [EdgeMethod::Sobel, EdgeMethod::MorphGradient, EdgeMethod::Canny];

    pub fn name(self) -> &'static str {
        match self {
            EdgeMethod::Sobel => "sobel",
            EdgeMethod::MorphGradient => "morph",
            EdgeMethod::Canny => "canny",
        }
    }
}

impl fmt::Display for EdgeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sobel" => Ok(EdgeMethod::Sobel),
            "morph" | "morphology" | "morphgradient" | "morph-gradient" => {
                Ok(EdgeMethod::MorphGradient)
            }
            "canny" => Ok(EdgeMethod::Canny),
            other => Err(Error::Config(format!("unknown edge method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ColorMode {
    Gray,
    Rgb,
}

impl ColorMode {
    pub fn name(self) -> &'static str {
        match self {
            ColorMode::Gray => "gray",
            ColorMode::Rgb => "rgb",
        }
    }
}

impl fmt::Display for ColorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ColorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gray" | "grey" => Ok(ColorMode::Gray),
            "rgb" | "color" | "colour" => Ok(ColorMode::Rgb),
            other => Err(Error::Config(format!("unknown color mode `{other}`"))),
        }
    }
}

/// Width x height of a rectangular structuring element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelSize {
    pub w: u32,
    pub h: u32,
}

impl KernelSize {
    pub const fn new(w: u32, h: u32) -> Self {
        KernelSize { w, h }
    }
}

/// Closing element for each edge method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CloseKernels {
    pub sobel: KernelSize,
    pub morph_gradient: KernelSize,
    pub canny: KernelSize,
}

impl CloseKernels {
    pub fn get(&self, method: EdgeMethod) -> KernelSize {
        match method {
            EdgeMethod::Sobel => self.sobel,
            EdgeMethod::MorphGradient => self.morph_gradient,
            EdgeMethod::Canny => self.canny,
        }
    }
}

/// Every tunable of the detector. [`Default`] gives multi-scale
/// morphological-gradient detection on RGB input with the standard thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct DetectorConfig {
    pub edge_method: EdgeMethod,
    pub color_mode: ColorMode,
    pub multi_scale: bool,
    pub close_kernel_single: CloseKernels,
    pub close_kernel_multi: CloseKernels,
    /// Minimum component pixel count as a fraction of the image area.
    pub min_area_fraction: f64,
    pub min_height_px: u32,
    /// Maximum component height as a fraction of the shorter image side.
    pub max_height_fraction: f64,
    pub min_aspect_ratio: f64,
    pub extent_threshold: f64,
    /// The pre-closing edge extent must reach `extent_threshold * raw_edge_extent_factor`.
    pub raw_edge_extent_factor: f64,
    pub expand_left_factor: f64,
    pub expand_all_factor: f64,
    pub pyramid_factor: f64,
    pub pyramid_min_side: u32,
    pub overlap_merge_threshold: f64,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            edge_method: EdgeMethod::MorphGradient,
            color_mode: ColorMode::Rgb,
            multi_scale: true,
            close_kernel_single: CloseKernels {
                sobel: KernelSize::new(17, 5),
                morph_gradient: KernelSize::new(11, 5),
                canny: KernelSize::new(17, 5),
            },
            close_kernel_multi: CloseKernels {
                sobel: KernelSize::new(15, 3),
                morph_gradient: KernelSize::new(9, 3),
                canny: KernelSize::new(15, 3),
            },
            min_area_fraction: 0.001,
            min_height_px: 17,
            max_height_fraction: 0.25,
            min_aspect_ratio: 1.3,
            extent_threshold: 0.4,
            raw_edge_extent_factor: 0.3,
            expand_left_factor: 0.1,
            expand_all_factor: 0.05,
            pyramid_factor: 1.4,
            pyramid_min_side: 200,
            overlap_merge_threshold: 0.80,
        }
    }
}

impl DetectorConfig {
    pub fn with_mode(edge_method: EdgeMethod, color_mode: ColorMode, multi_scale: bool) -> Self {
        DetectorConfig {
            edge_method,
            color_mode,
            multi_scale,
            ..Default::default()
        }
    }

    /// Closing element for the current edge method and scale mode.
    pub fn close_kernel(&self) -> KernelSize {
        if self.multi_scale {
            self.close_kernel_multi.get(self.edge_method)
        } else {
            self.close_kernel_single.get(self.edge_method)
        }
    }

    pub fn raw_edge_extent_threshold(&self) -> f64 {
        self.extent_threshold * self.raw_edge_extent_factor
    }

    pub fn validate(&self) -> Result<()> {
        if self.edge_method == EdgeMethod::Canny && self.color_mode == ColorMode::Rgb {
            return Err(Error::Config(
                "canny edges are computed on grayscale only; use --color gray".into(),
            ));
        }
        let fractions = [
            ("minAreaFraction", self.min_area_fraction),
            ("maxHeightFraction", self.max_height_fraction),
            ("extentThreshold", self.extent_threshold),
            ("rawEdgeExtentFactor", self.raw_edge_extent_factor),
            ("expandLeftFactor", self.expand_left_factor),
            ("expandAllFactor", self.expand_all_factor),
            ("overlapMergeThreshold", self.overlap_merge_threshold),
        ];
        for (name, v) in fractions {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::Config(format!("{name} must be in (0, 1], got {v}")));
            }
        }
        if !(self.min_aspect_ratio > 0.0) || !self.min_aspect_ratio.is_finite() {
            return Err(Error::Config(format!(
                "minAspectRatio must be positive, got {}",
                self.min_aspect_ratio
            )));
        }
        if !(self.pyramid_factor > 1.0) || !self.pyramid_factor.is_finite() {
            return Err(Error::Config(format!(
                "pyramidFactor must be > 1, got {}",
                self.pyramid_factor
            )));
        }
        for k in [self.close_kernel_single, self.close_kernel_multi] {
            for m in EdgeMethod::ALL {
                let size = k.get(m);
                if size.w == 0 || size.h == 0 {
                    return Err(Error::Config(format!(
                        "closing kernel for {m} must be at least 1x1"
                    )));
                }
            }
        }
        Ok(())
    }
}
