use rayon::prelude::*;
use scenetext::detector::{self, sort_reading_order, DetectorConfig};
use scenetext::ocr::{emit_text, recognize_regions, OcrEngine, RegionStatus};
use scenetext::RasterImage;

use crate::args::RecognizeArgs;
use crate::config::{detector_config, ensure_dir, ocr_engine, resolve_inputs, worker_pool, InputImage};
use crate::failure::{BatchErrors, CliResult};

struct Recognized {
    lines: usize,
    /// Regions the engine could not read, as `index: reason`.
    failed: Vec<String>,
}

fn recognize_one(
    input: &InputImage,
    cfg: &DetectorConfig,
    engine: &dyn OcrEngine,
    args: &RecognizeArgs,
) -> scenetext::Result<Recognized> {
    let img = RasterImage::open(&input.path)?;
    let regions = sort_reading_order(&detector::detect(&img, cfg)?);
    let results = recognize_regions(&img, &regions, engine, args.ocr.ocr_jobs)?;
    let path = args.out.join(format!("{}.txt", input.id));
    std::fs::write(&path, emit_text(&results)).map_err(|e| scenetext::Error::Io { path, source: e })?;
    let failed = results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match &r.status {
            RegionStatus::Recognized => None,
            RegionStatus::TimedOut => Some(format!("region {i}: timed out")),
            RegionStatus::Failed(m) => Some(format!("region {i}: {m}")),
        })
        .collect();
    Ok(Recognized {
        lines: results.len(),
        failed,
    })
}

pub fn run(args: &RecognizeArgs) -> CliResult {
    let cfg = detector_config(&args.detector)?;
    let engine = ocr_engine(&args.ocr)?;
    let inputs = resolve_inputs(&args.inputs)?;
    ensure_dir(&args.out)?;

    let pool = worker_pool(args.jobs.jobs)?;
    let outcomes: Vec<_> = pool.install(|| {
        inputs
            .par_iter()
            .map(|i| recognize_one(i, &cfg, engine.as_ref(), args))
            .collect()
    });

    let mut errors = BatchErrors::default();
    for (input, outcome) in inputs.iter().zip(outcomes) {
        let name = input.path.display().to_string();
        match outcome {
            Ok(r) if r.failed.is_empty() => println!("{}\t{}", input.id, r.lines),
            Ok(r) => {
                // the text file is still written, with empty lines for the failed regions
                println!("{}\t{}", input.id, r.lines);
                for f in &r.failed {
                    eprintln!("error: {name}: {f}");
                }
                errors.push(name, r.failed.join("; "));
            }
            Err(e) => {
                eprintln!("error: {name}: {e}");
                errors.push(name, e);
            }
        }
    }
    errors.finish("recognition")
}
