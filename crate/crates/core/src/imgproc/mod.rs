//! Low-level image primitives used by the detector.
//!
//! Every kernel in this module uses edge replication at the image border.

mod canny;
mod color;
mod components;
mod gradient;
mod morphology;
mod resample;
mod threshold;

pub use canny::{canny, CANNY_HIGH_THRESHOLD, CANNY_LOW_THRESHOLD};
pub use color::to_grayscale;
pub use components::{connected_components, ComponentStats, LabelMap};
pub use gradient::{max_channel_gx, morph_gradient_gx, sobel_gx, GradientMethod};
pub use morphology::{dilate, erode, morph_close};
pub use resample::{downsample, downsampled_dims};
pub use threshold::{otsu_level, otsu_threshold, threshold_above};

pub(crate) use gradient::gray_gx;
pub(crate) use resample::resize_bilinear;
