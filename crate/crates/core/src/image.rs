//! Image containers shared by every pipeline stage.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned rectangle in integer pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl Rect {
    pub const fn new(x: u32, y: u32, w: u32, h: u32) -> Self {
        Rect { x, y, w, h }
    }

    /// Exclusive right edge.
    pub fn right(&self) -> u32 {
        self.x + self.w
    }

    /// Exclusive bottom edge.
    pub fn bottom(&self) -> u32 {
        self.y + self.h
    }

    pub fn area(&self) -> u64 {
        u64::from(self.w) * u64::from(self.h)
    }

    pub fn intersection(&self, other: &Rect) -> Option<Rect> {
        let x0 = self.x.max(other.x);
        let y0 = self.y.max(other.y);
        let x1 = self.right().min(other.right());
        let y1 = self.bottom().min(other.bottom());
        (x1 > x0 && y1 > y0).then(|| Rect::new(x0, y0, x1 - x0, y1 - y0))
    }

    pub fn intersection_area(&self, other: &Rect) -> u64 {
        self.intersection(other).map_or(0, |r| r.area())
    }

    /// True when `other` lies fully inside `self` (borders may touch).
    pub fn contains(&self, other: &Rect) -> bool {
        other.x >= self.x
            && other.y >= self.y
            && other.right() <= self.right()
            && other.bottom() <= self.bottom()
    }

    pub fn iou(&self, other: &Rect) -> f64 {
        let inter = self.intersection_area(other);
        let union = self.area() + other.area() - inter;
        if union == 0 {
            0.0
        } else {
            inter as f64 / union as f64
        }
    }

    pub fn fits_in(&self, width: u32, height: u32) -> bool {
        u64::from(self.x) + u64::from(self.w) <= u64::from(width)
            && u64::from(self.y) + u64::from(self.h) <= u64::from(height)
    }
}

/// 8-bit raster with one (grayscale) or three (RGB, interleaved) channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    channels: u8,
    data: Vec<u8>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, channels: u8, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidImage(format!(
                "unsupported channel count {channels}"
            )));
        }
        let expected = width as usize * height as usize * channels as usize;
        if data.len() != expected {
            return Err(Error::InvalidImage(format!(
                "buffer holds {} bytes, {width}x{height}x{channels} needs {expected}",
                data.len()
            )));
        }
        Ok(RasterImage {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn filled(width: u32, height: u32, channels: u8, value: u8) -> Result<Self> {
        let len = width as usize * height as usize * channels as usize;
        Self::new(width, height, channels, vec![value; len])
    }

    pub fn gray_from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> u8) -> Result<Self> {
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, 1, data)
    }

    pub fn rgb_from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> Result<Self> {
        let mut data = Vec::with_capacity(width as usize * height as usize * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self::new(width, height, 3, data)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> u8 {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn pixel(&self, x: u32, y: u32, channel: u8) -> u8 {
        let c = self.channels as usize;
        self.data[(y as usize * self.width as usize + x as usize) * c + channel as usize]
    }

    /// Extracts one channel as a grayscale image.
    pub fn channel(&self, channel: u8) -> Result<RasterImage> {
        if channel >= self.channels {
            return Err(Error::InvalidImage(format!(
                "channel {channel} out of range for {}-channel image",
                self.channels
            )));
        }
        if self.channels == 1 {
            return Ok(self.clone());
        }
        let c = self.channels as usize;
        let data = self
            .data
            .iter()
            .skip(channel as usize)
            .step_by(c)
            .copied()
            .collect();
        RasterImage::new(self.width, self.height, 1, data)
    }

    pub(crate) fn require_channels(&self, expected: u8) -> Result<()> {
        if self.channels == expected {
            Ok(())
        } else {
            Err(Error::ChannelMismatch {
                expected,
                found: self.channels,
            })
        }
    }

    pub(crate) fn require_min_size(&self, min_width: u32, min_height: u32) -> Result<()> {
        if self.width < min_width || self.height < min_height {
            Err(Error::TooSmall {
                width: self.width,
                height: self.height,
                min_width,
                min_height,
            })
        } else {
            Ok(())
        }
    }

    /// Copies out the pixels under `rect`, which must lie inside the image.
    pub fn crop(&self, rect: Rect) -> Result<RasterImage> {
        if rect.w == 0 || rect.h == 0 || !rect.fits_in(self.width, self.height) {
            return Err(Error::InvalidImage(format!(
                "crop {rect:?} outside {}x{} image",
                self.width, self.height
            )));
        }
        let c = self.channels as usize;
        let stride = self.width as usize * c;
        let mut data = Vec::with_capacity(rect.area() as usize * c);
        for y in rect.y..rect.bottom() {
            let start = y as usize * stride + rect.x as usize * c;
            data.extend_from_slice(&self.data[start..start + rect.w as usize * c]);
        }
        RasterImage::new(rect.w, rect.h, self.channels, data)
    }

    /// Converts to an RGB image; grayscale input is replicated into all three channels.
    pub fn to_rgb(&self) -> RasterImage {
        if self.channels == 3 {
            return self.clone();
        }
        let data = self.data.iter().flat_map(|&v| [v, v, v]).collect();
        RasterImage {
            width: self.width,
            height: self.height,
            channels: 3,
            data,
        }
    }

    /// Draws a one-pixel wide rectangle outline (RGB images only).
    pub fn draw_rect(&mut self, rect: Rect, color: [u8; 3], thickness: u32) {
        if self.channels != 3 || rect.w == 0 || rect.h == 0 {
            return;
        }
        let (w, h) = (self.width, self.height);
        let mut put = |x: u32, y: u32| {
            if x < w && y < h {
                let i = (y as usize * w as usize + x as usize) * 3;
                self.data[i..i + 3].copy_from_slice(&color);
            }
        };
        for t in 0..thickness.min(rect.w).min(rect.h) {
            let (x0, y0) = (rect.x + t, rect.y + t);
            let (x1, y1) = (rect.right() - 1 - t, rect.bottom() - 1 - t);
            if x0 > x1 || y0 > y1 {
                break;
            }
            for x in x0..=x1 {
                put(x, y0);
                put(x, y1);
            }
            for y in y0..=y1 {
                put(x0, y);
                put(x1, y);
            }
        }
    }

    /// Decodes a PNG or JPEG file. Gray images stay single-channel, everything
    /// else is converted to RGB.
    pub fn open(path: impl AsRef<Path>) -> Result<RasterImage> {
        let path = path.as_ref();
        let decoded = image::open(path).map_err(|source| Error::Decode {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::from_dynamic(decoded))
    }

    pub fn decode(bytes: &[u8]) -> Result<RasterImage> {
        let decoded = image::load_from_memory(bytes).map_err(|source| Error::Decode {
            path: "<memory>".into(),
            source,
        })?;
        Ok(Self::from_dynamic(decoded))
    }

    /// Width and height from the file header, without decoding pixels.
    pub fn read_dimensions(path: impl AsRef<Path>) -> Result<(u32, u32)> {
        let path = path.as_ref();
        image::image_dimensions(path).map_err(|source| Error::Decode {
            path: path.to_path_buf(),
            source,
        })
    }

    fn from_dynamic(img: image::DynamicImage) -> RasterImage {
        use image::DynamicImage;
        match img {
            DynamicImage::ImageLuma8(g) => {
                let (w, h) = g.dimensions();
                RasterImage {
                    width: w,
                    height: h,
                    channels: 1,
                    data: g.into_raw(),
                }
            }
            other => {
                let rgb = other.into_rgb8();
                let (w, h) = rgb.dimensions();
                RasterImage {
                    width: w,
                    height: h,
                    channels: 3,
                    data: rgb.into_raw(),
                }
            }
        }
    }

    /// Encodes to the format implied by the file extension (PNG or JPEG).
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let color = if self.channels == 1 {
            image::ExtendedColorType::L8
        } else {
            image::ExtendedColorType::Rgb8
        };
        image::save_buffer(path, &self.data, self.width, self.height, color).map_err(Error::Encode)
    }

    pub fn encode_png(&self) -> Result<Vec<u8>> {
        use image::ImageEncoder;
        let color = if self.channels == 1 {
            image::ExtendedColorType::L8
        } else {
            image::ExtendedColorType::Rgb8
        };
        let mut out = Vec::new();
        image::codecs::png::PngEncoder::new(&mut out)
            .write_image(&self.data, self.width, self.height, color)
            .map_err(Error::Encode)?;
        Ok(out)
    }
}

/// Non-negative 8-bit gradient magnitudes, saturated at 255.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientImage {
    pub(crate) width: u32,
    pub(crate) height: u32,
    pub(crate) values: Vec<u8>,
}

impl GradientImage {
    pub fn new(width: u32, height: u32, values: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || values.len() != width as usize * height as usize {
            return Err(Error::InvalidImage(format!(
                "gradient buffer of {} values does not match {width}x{height}",
                values.len()
            )));
        }
        Ok(GradientImage {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.values[y as usize * self.width as usize + x as usize]
    }
}

/// Row-major foreground flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    pub(crate) width: u32,
    pub(crate) height: u32,
    pub(crate) bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: u32, height: u32, bits: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || bits.len() != width as usize * height as usize {
            return Err(Error::InvalidImage(format!(
                "mask buffer of {} flags does not match {width}x{height}",
                bits.len()
            )));
        }
        Ok(BinaryMask {
            width,
            height,
            bits,
        })
    }

    pub fn empty(width: u32, height: u32) -> Result<Self> {
        Self::new(width, height, vec![false; width as usize * height as usize])
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Result<Self> {
        let mut bits = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                bits.push(f(x, y));
            }
        }
        Self::new(width, height, bits)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        self.bits[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        let i = y as usize * self.width as usize + x as usize;
        self.bits[i] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// 0/255 grayscale rendering, handy for debugging dumps.
    pub fn to_image(&self) -> RasterImage {
        let data = self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect();
        RasterImage::new(self.width, self.height, 1, data).expect("mask dimensions are valid")
    }
}
