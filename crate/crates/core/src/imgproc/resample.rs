use crate::error::{Error, Result};
use crate::image::RasterImage;

/// Output dimensions for a downscale by `factor`: each side divided and
/// rounded to nearest (halves away from zero).
pub fn downsampled_dims(width: u32, height: u32, factor: f64) -> (u32, u32) {
    let scale = |v: u32| (f64::from(v) / factor).round() as u32;
    (scale(width), scale(height))
}

/// Bilinear downscale by `factor` (> 1) with pixel-centre alignment.
pub fn downsample(img: &RasterImage, factor: f64) -> Result<RasterImage> {
    if !(factor > 1.0) || !factor.is_finite() {
        return Err(Error::InvalidImage(format!(
            "downsample factor must be > 1, got {factor}"
        )));
    }
    let (dw, dh) = downsampled_dims(img.width(), img.height(), factor);
    if dw < 1 || dh < 1 {
        return Err(Error::TooSmall {
            width: img.width(),
            height: img.height(),
            min_width: factor.ceil() as u32,
            min_height: factor.ceil() as u32,
        });
    }
    resize_bilinear(img, dw, dh)
}

struct Tap {
    lo: usize,
    hi: usize,
    frac: f32,
}

fn taps(src: u32, dst: u32) -> Vec<Tap> {
    let scale = f64::from(src) / f64::from(dst);
    (0..dst)
        .map(|d| {
            let s = ((f64::from(d) + 0.5) * scale - 0.5).clamp(0.0, f64::from(src - 1));
            let lo = s.floor() as usize;
            Tap {
                lo,
                hi: (lo + 1).min(src as usize - 1),
                frac: (s - lo as f64) as f32,
            }
        })
        .collect()
}

pub(crate) fn resize_bilinear(img: &RasterImage, dw: u32, dh: u32) -> Result<RasterImage> {
    let c = img.channels() as usize;
    let sw = img.width() as usize;
    let src = img.data();
    let xt = taps(img.width(), dw);
    let yt = taps(img.height(), dh);
    let mut out = Vec::with_capacity(dw as usize * dh as usize * c);
    let mut row = vec![0f32; sw * c];
    for ty in &yt {
        let r0 = &src[ty.lo * sw * c..][..sw * c];
        let r1 = &src[ty.hi * sw * c..][..sw * c];
        for (o, (&a, &b)) in row.iter_mut().zip(r0.iter().zip(r1)) {
            *o = f32::from(a) + (f32::from(b) - f32::from(a)) * ty.frac;
        }
        for tx in &xt {
            for ch in 0..c {
                let a = row[tx.lo * c + ch];
                let b = row[tx.hi * c + ch];
                let v = a + (b - a) * tx.frac;
                out.push(v.round().clamp(0.0, 255.0) as u8);
            }
        }
    }
    RasterImage::new(dw, dh, img.channels(), out)
}
