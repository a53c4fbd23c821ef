//! Real-time scene text detection built from horizontal gradients,
//! morphological closing and connected-component shape filtering, run over an
//! image pyramid. Also ships an external-OCR adapter, a dataset annotation
//! format and an OCR accuracy harness.

pub mod error;
pub mod image;
pub mod detector;
pub mod imgproc;
pub mod dataset;
pub mod ocr;
pub mod eval;
pub mod synth;

pub use error::{Error, Result};
pub use image::{BinaryMask, GradientImage, RasterImage, Rect};
