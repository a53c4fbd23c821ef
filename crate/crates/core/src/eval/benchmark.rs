use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::dataset::DatasetManifest;
use crate::detector::{detect_timed, DetectorConfig, StageDurations};
use crate::error::{Error, Result};
use crate::image::RasterImage;

/// Mean milliseconds per stage.
pub type StageMillis = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ImageTiming {
    pub image_id: String,
    pub width: u32,
    pub height: u32,
    /// Mean over the measured repetitions.
    pub stages: StageMillis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageTimings {
    pub config: DetectorConfig,
    pub repetitions: u32,
    pub per_image: Vec<ImageTiming>,
    /// Mean of the per-image means.
    pub summary: StageMillis,
}

impl StageTimings {
    pub fn mean_total_ms(&self) -> f64 {
        self.summary.get("total").copied().unwrap_or(0.0)
    }
}

fn to_millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Averages a list of stage measurements into milliseconds per stage.
pub fn mean_stage_millis(runs: &[StageDurations]) -> StageMillis {
    let mut out = StageMillis::new();
    for (i, name) in StageDurations::STAGES.iter().enumerate() {
        let sum: f64 = runs.iter().map(|r| to_millis(r.as_array()[i])).sum();
        out.insert((*name).to_owned(), sum / runs.len().max(1) as f64);
    }
    out
}

/// Times detection on in-memory images. Each image is detected once untimed
/// as a warm-up, then `repetitions` times measured. Runs on the calling
/// thread, one image at a time.
pub fn benchmark_images(
    images: &[(String, RasterImage)],
    cfg: &DetectorConfig,
    repetitions: u32,
) -> Result<StageTimings> {
    if repetitions == 0 {
        return Err(Error::Config("benchmark needs at least one repetition".into()));
    }
    cfg.validate()?;
    let mut per_image = Vec::with_capacity(images.len());
    for (id, img) in images {
        detect_timed(img, cfg)?;
        let mut runs = Vec::with_capacity(repetitions as usize);
        for _ in 0..repetitions {
            runs.push(detect_timed(img, cfg)?.1);
        }
        per_image.push(ImageTiming {
            image_id: id.clone(),
            width: img.width(),
            height: img.height(),
            stages: mean_stage_millis(&runs),
        });
    }
    let mut summary = StageMillis::new();
    for name in StageDurations::STAGES {
        let sum: f64 = per_image.iter().map(|t| t.stages[name]).sum();
        summary.insert(name.to_owned(), sum / per_image.len().max(1) as f64);
    }
    Ok(StageTimings {
        config: cfg.clone(),
        repetitions,
        per_image,
        summary,
    })
}

/// Loads every image in the manifest and benchmarks it.
pub fn run_benchmark(manifest: &DatasetManifest, cfg: &DetectorConfig, repetitions: u32) -> Result<StageTimings> {
    manifest.check_files()?;
    let images = manifest
        .entries
        .iter()
        .map(|e| Ok((e.image_id(), RasterImage::open(&e.image_file)?)))
        .collect::<Result<Vec<_>>>()?;
    benchmark_images(&images, cfg, repetitions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    #[test]
    fn summary_is_mean_of_runs() {
        let runs = [
            StageDurations {
                total: Duration::from_millis(3),
                edge: Duration::from_millis(1),
                ..Default::default()
            },
            StageDurations {
                total: Duration::from_millis(6),
                ..Default::default()
            },
            StageDurations {
                total: Duration::from_millis(9),
                edge: Duration::from_millis(2),
                ..Default::default()
            },
        ];
        let m = mean_stage_millis(&runs);
        assert!((m["total"] - 6.0).abs() < 1e-9);
        assert!((m["edge"] - 1.0).abs() < 1e-9);
        assert_eq!(m["merge"], 0.0);
    }

    #[test]
    fn timings_are_positive() {
        let scene = synth::text_scene(3, 320, 240);
        let t = benchmark_images(&[("s".into(), scene.image)], &DetectorConfig::default(), 2).unwrap();
        assert_eq!(t.per_image.len(), 1);
        assert!(t.summary["total"] > 0.0);
        assert!(t.summary["edge"] > 0.0);
        assert!(benchmark_images(&[], &DetectorConfig::default(), 0).is_err());
    }
}
