//! Inputs shared by the criterion benches.

use scenetext::synth::text_scene;
use scenetext::RasterImage;

/// Frame size used for detector timings.
pub const WIDTH: u32 = 1024;
pub const HEIGHT: u32 = 576;

/// Synthetic text scenes at the benchmark frame size.
pub fn scenes(count: u64) -> Vec<RasterImage> {
    (0..count).map(|seed| text_scene(1000 + seed, WIDTH, HEIGHT).image).collect()
}
