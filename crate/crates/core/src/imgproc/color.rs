use crate::error::Result;
use crate::image::RasterImage;

/// Luma conversion with the standard-definition weights 0.299 R + 0.587 G + 0.114 B,
/// rounded to nearest in exact integer arithmetic.
pub fn to_grayscale(img: &RasterImage) -> Result<RasterImage> {
    img.require_channels(3)?;
    let data = img
        .data()
        .chunks_exact(3)
        .map(|p| {
            let sum = 299 * u32::from(p[0]) + 587 * u32::from(p[1]) + 114 * u32::from(p[2]);
            ((sum + 500) / 1000) as u8
        })
        .collect();
    RasterImage::new(img.width(), img.height(), 1, data)
}
