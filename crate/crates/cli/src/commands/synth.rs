use std::fmt::Write;

use scenetext::dataset::save_annotation;
use scenetext::detector::{self, DetectorConfig};
use scenetext::ocr::MockEngine;
use scenetext::synth::{text_scene_with, SceneSpec, SyntheticScene};

use crate::args::SynthArgs;
use crate::config::{detector_config, ensure_dir};
use crate::failure::{CliResult, Failure};

pub const MIN_SIDE: u32 = 64;

/// Adds each line's transcription under the hash of the detected crop that
/// covers most of the line. Lines no detection touches are left out.
pub fn add_to_mock_table(engine: &mut MockEngine, scene: &SyntheticScene, cfg: &DetectorConfig) -> scenetext::Result<()> {
    let regions = detector::detect(&scene.image, cfg)?;
    for (rect, text) in &scene.lines {
        let best = regions
            .iter()
            .map(|r| (r.bbox.intersection_area(rect), r))
            .filter(|(a, _)| *a > 0)
            .max_by_key(|(a, r)| (*a, std::cmp::Reverse((r.bbox.y, r.bbox.x))));
        if let Some((_, region)) = best {
            engine.insert(&scene.image.crop(region.bbox)?, text.clone());
        }
    }
    Ok(())
}

pub fn run(args: &SynthArgs) -> CliResult {
    if args.width < MIN_SIDE || args.height < MIN_SIDE {
        return Err(Failure::config(format!("images must be at least {MIN_SIDE}x{MIN_SIDE}")));
    }
    if args.min_lines == 0 || args.min_lines > args.max_lines {
        return Err(Failure::config("need 1 <= --min-lines <= --max-lines"));
    }
    let cfg = detector_config(&args.detector)?;
    ensure_dir(&args.out)?;

    let spec = SceneSpec {
        line_count: args.min_lines..=args.max_lines,
        ..SceneSpec::default()
    };
    let mut engine = MockEngine::default();
    let mut manifest = String::new();
    for i in 0..args.count {
        let id = format!("synth_{i:04}");
        let scene = text_scene_with(args.seed + u64::from(i), args.width, args.height, &spec);
        let image_file = format!("{id}.png");
        let annotation_file = format!("{id}.json");
        scene.image.save(args.out.join(&image_file)).map_err(Failure::processing)?;
        save_annotation(&scene.annotation(&id), args.out.join(&annotation_file)).map_err(Failure::processing)?;
        let _ = writeln!(manifest, "{image_file}\t{annotation_file}");
        if args.mock_table.is_some() {
            add_to_mock_table(&mut engine, &scene, &cfg).map_err(Failure::processing)?;
        }
    }
    let manifest_path = args.out.join("manifest.tsv");
    std::fs::write(&manifest_path, manifest).map_err(|e| Failure::processing(format!("{}: {e}", manifest_path.display())))?;
    if let Some(path) = &args.mock_table {
        let json = serde_json::to_string_pretty(&engine.table).map_err(|e| Failure::Internal(e.to_string()))? + "\n";
        std::fs::write(path, json).map_err(|e| Failure::processing(format!("{}: {e}", path.display())))?;
    }
    println!("wrote {} image(s) to {}", args.count, args.out.display());
    Ok(())
}
