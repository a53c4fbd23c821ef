use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{GradientImage, RasterImage};

/// Horizontal gradient operator applied per channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GradientMethod {
    /// 3x3 Sobel x-derivative, absolute value.
    Sobel,
    /// Dilation minus erosion under a 3 wide, 1 tall element.
    Morph,
}

/// Absolute horizontal Sobel response, saturated to 255.
pub fn sobel_gx(img: &RasterImage) -> Result<GradientImage> {
    img.require_channels(1)?;
    img.require_min_size(3, 3)?;
    let mut out = vec![0u8; img.width() as usize * img.height() as usize];
    sobel_plane(img, 0, &mut out);
    GradientImage::new(img.width(), img.height(), out)
}

/// Grayscale morphological gradient under a horizontal 3x1 element.
pub fn morph_gradient_gx(img: &RasterImage) -> Result<GradientImage> {
    img.require_channels(1)?;
    img.require_min_size(3, 1)?;
    let mut out = vec![0u8; img.width() as usize * img.height() as usize];
    morph_plane(img, 0, &mut out);
    GradientImage::new(img.width(), img.height(), out)
}

/// Per-pixel maximum of the R, G and B horizontal gradients.
pub fn max_channel_gx(img: &RasterImage, method: GradientMethod) -> Result<GradientImage> {
    img.require_channels(3)?;
    match method {
        GradientMethod::Sobel => img.require_min_size(3, 3)?,
        GradientMethod::Morph => img.require_min_size(3, 1)?,
    }
    let mut out = vec![0u8; img.width() as usize * img.height() as usize];
    for ch in 0..3 {
        match method {
            GradientMethod::Sobel => sobel_plane(img, ch, &mut out),
            GradientMethod::Morph => morph_plane(img, ch, &mut out),
        }
    }
    GradientImage::new(img.width(), img.height(), out)
}

/// Applies `method` to a single-channel image.
pub(crate) fn gray_gx(img: &RasterImage, method: GradientMethod) -> Result<GradientImage> {
    match method {
        GradientMethod::Sobel => sobel_gx(img),
        GradientMethod::Morph => morph_gradient_gx(img),
    }
}

#[inline]
fn clamp_index(i: isize, len: usize) -> usize {
    i.clamp(0, len as isize - 1) as usize
}

/// Sobel on channel `ch` of an interleaved image; the result is max-combined into `out`.
fn sobel_plane(img: &RasterImage, ch: u8, out: &mut [u8]) {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let c = img.channels() as usize;
    let data = img.data();
    let stride = w * c;
    let mut column = vec![0i32; w];
    for y in 0..h {
        let up = &data[clamp_index(y as isize - 1, h) * stride..][..stride];
        let mid = &data[y * stride..][..stride];
        let down = &data[clamp_index(y as isize + 1, h) * stride..][..stride];
        for (x, col) in column.iter_mut().enumerate() {
            let i = x * c + ch as usize;
            *col = i32::from(up[i]) + 2 * i32::from(mid[i]) + i32::from(down[i]);
        }
        let row = &mut out[y * w..][..w];
        for (x, o) in row.iter_mut().enumerate() {
            let left = column[x.saturating_sub(1)];
            let right = column[(x + 1).min(w - 1)];
            let v = (right - left).unsigned_abs().min(255) as u8;
            if v > *o {
                *o = v;
            }
        }
    }
}

fn morph_plane(img: &RasterImage, ch: u8, out: &mut [u8]) {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let c = img.channels() as usize;
    let data = img.data();
    let stride = w * c;
    for y in 0..h {
        let src = &data[y * stride..][..stride];
        let row = &mut out[y * w..][..w];
        for (x, o) in row.iter_mut().enumerate() {
            let a = src[x.saturating_sub(1) * c + ch as usize];
            let b = src[x * c + ch as usize];
            let d = src[(x + 1).min(w - 1) * c + ch as usize];
            let v = a.max(b).max(d) - a.min(b).min(d);
            if v > *o {
                *o = v;
            }
        }
    }
}

impl std::str::FromStr for GradientMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sobel" => Ok(GradientMethod::Sobel),
            "morph" | "morphology" => Ok(GradientMethod::Morph),
            other => Err(Error::Config(format!("unknown gradient method `{other}`"))),
        }
    }
}
