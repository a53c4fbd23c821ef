use scenetext::detector::{ColorMode, DetectorConfig, EdgeMethod};
use scenetext::eval::{benchmark_images, timing_table, StageTimings, TimingRow};
use scenetext::RasterImage;
use serde::Serialize;

use crate::args::BenchArgs;
use crate::config::{config_label, detector_config, resolve_bench_inputs};
use crate::failure::{CliResult, Failure};

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRow {
    pub label: String,
    pub edge_method: EdgeMethod,
    pub color_mode: ColorMode,
    pub multi_scale: bool,
    /// `None` for combinations the detector does not support.
    pub timings: Option<StageTimings>,
}

/// Every edge method and color mode, single-scale rows first.
pub fn sweep_configs(base: &DetectorConfig) -> Vec<DetectorConfig> {
    let mut out = Vec::new();
    for multi_scale in [false, true] {
        for edge_method in EdgeMethod::ALL {
            for color_mode in [ColorMode::Gray, ColorMode::Rgb] {
                out.push(DetectorConfig {
                    edge_method,
                    color_mode,
                    multi_scale,
                    ..base.clone()
                });
            }
        }
    }
    out
}

pub fn run(args: &BenchArgs) -> CliResult {
    let base = detector_config(&args.detector)?;
    if args.reps == 0 {
        return Err(Failure::config("--reps must be at least 1"));
    }
    let inputs = resolve_bench_inputs(&args.inputs)?;
    let mut images = Vec::with_capacity(inputs.len());
    for input in &inputs {
        let img = RasterImage::open(&input.path).map_err(Failure::processing)?;
        images.push((input.id.clone(), img));
    }

    let configs = if args.sweep { sweep_configs(&base) } else { vec![base] };
    let mut rows = Vec::with_capacity(configs.len());
    for cfg in configs {
        let timings = match cfg.validate() {
            Ok(()) => Some(benchmark_images(&images, &cfg, args.reps).map_err(Failure::processing)?),
            Err(_) => None,
        };
        rows.push(BenchRow {
            label: config_label(&cfg),
            edge_method: cfg.edge_method,
            color_mode: cfg.color_mode,
            multi_scale: cfg.multi_scale,
            timings,
        });
    }

    let table: Vec<TimingRow<'_>> = rows
        .iter()
        .map(|r| TimingRow {
            label: r.label.clone(),
            timings: r.timings.as_ref(),
        })
        .collect();
    println!("{} image(s), {} repetition(s), mean milliseconds", images.len(), args.reps);
    print!("{}", timing_table(&table));

    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&rows).map_err(|e| Failure::Internal(e.to_string()))? + "\n";
        std::fs::write(path, json).map_err(|e| Failure::processing(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
