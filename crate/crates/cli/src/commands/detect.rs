use rayon::prelude::*;
use scenetext::detector::{self, DetectionRecord, DetectorConfig};
use scenetext::RasterImage;

use crate::args::DetectArgs;
use crate::config::{detector_config, ensure_dir, resolve_inputs, worker_pool, InputImage};
use crate::failure::{BatchErrors, CliResult};

pub const VIZ_COLOR: [u8; 3] = [0, 255, 0];
pub const VIZ_THICKNESS: u32 = 2;

fn detect_one(input: &InputImage, cfg: &DetectorConfig, args: &DetectArgs) -> scenetext::Result<usize> {
    let img = RasterImage::open(&input.path)?;
    let regions = detector::detect(&img, cfg)?;
    let record = DetectionRecord::new(&input.id, img.width(), img.height(), &regions);
    record.save(args.out.join(format!("{}.json", input.id)))?;
    if args.viz {
        let mut viz = img.to_rgb();
        for r in &regions {
            viz.draw_rect(r.bbox, VIZ_COLOR, VIZ_THICKNESS);
        }
        viz.save(args.out.join(format!("{}.viz.png", input.id)))?;
    }
    Ok(regions.len())
}

pub fn run(args: &DetectArgs) -> CliResult {
    let cfg = detector_config(&args.detector)?;
    let inputs = resolve_inputs(&args.inputs)?;
    ensure_dir(&args.out)?;

    let pool = worker_pool(args.jobs.jobs)?;
    let outcomes: Vec<_> = pool.install(|| inputs.par_iter().map(|i| detect_one(i, &cfg, args)).collect());

    let mut errors = BatchErrors::default();
    for (input, outcome) in inputs.iter().zip(outcomes) {
        match outcome {
            Ok(n) => println!("{}\t{n}", input.id),
            Err(e) => {
                eprintln!("error: {}: {e}", input.path.display());
                errors.push(input.path.display().to_string(), e);
            }
        }
    }
    errors.finish("detection")
}
