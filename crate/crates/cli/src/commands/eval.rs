use std::collections::BTreeSet;
use std::path::Path;

use rayon::prelude::*;
use scenetext::dataset::{image_id_of, load_annotation, DatasetManifest};
use scenetext::eval::{accuracy_table, aggregate_with, score_image, AggregateReport, Normalization};

use crate::args::{EvalArgs, ReportFormat};
use crate::failure::{CliResult, Failure};

/// Stems of the `.txt` files in `dir`.
fn ocr_ids(dir: &Path) -> CliResult<BTreeSet<String>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::config(format!("{}: {e}", dir.display())))?;
    let mut ids = BTreeSet::new();
    for entry in entries {
        let p = entry.map_err(|e| Failure::config(format!("{}: {e}", dir.display())))?.path();
        if p.is_file() && p.extension().is_some_and(|e| e == "txt") {
            ids.insert(image_id_of(&p));
        }
    }
    Ok(ids)
}

pub fn evaluate(args: &EvalArgs) -> CliResult<AggregateReport> {
    let manifest = DatasetManifest::open(&args.gt).map_err(Failure::config)?;
    if manifest.entries.is_empty() {
        return Err(Failure::config(format!("no annotated images under {}", args.gt.display())));
    }
    let have = ocr_ids(&args.ocr_dir)?;
    let gt_ids: BTreeSet<String> = manifest.entries.iter().map(|e| e.image_id()).collect();

    let missing: Vec<_> = gt_ids.difference(&have).collect();
    let orphans: Vec<_> = have.difference(&gt_ids).collect();
    if !missing.is_empty() || !orphans.is_empty() {
        let mut msg = String::from("OCR outputs and ground truth do not match");
        for id in &missing {
            msg.push_str(&format!("\n  missing OCR output: {}", args.ocr_dir.join(format!("{id}.txt")).display()));
        }
        for id in &orphans {
            msg.push_str(&format!("\n  no ground truth for: {}", args.ocr_dir.join(format!("{id}.txt")).display()));
        }
        return Err(Failure::Processing(msg));
    }

    let norm = if args.no_normalize {
        Normalization::None
    } else {
        Normalization::CollapseWhitespace
    };
    let scored: Vec<Result<_, String>> = manifest
        .entries
        .par_iter()
        .map(|entry| {
            let id = entry.image_id();
            let gt = load_annotation(&entry.annotation_file).map_err(|e| e.to_string())?;
            let ocr_path = args.ocr_dir.join(format!("{id}.txt"));
            let bytes = std::fs::read(&ocr_path).map_err(|e| format!("{}: {e}", ocr_path.display()))?;
            let ocr = String::from_utf8(bytes).map_err(|_| format!("{}: not valid UTF-8", ocr_path.display()))?;
            Ok(score_image(id, &gt.flatten(), &ocr, norm))
        })
        .collect();
    let mut results = Vec::with_capacity(scored.len());
    let mut errors = Vec::new();
    for s in scored {
        match s {
            Ok(r) => results.push(r),
            Err(e) => errors.push(e),
        }
    }
    if !errors.is_empty() {
        return Err(Failure::Processing(format!("cannot score:\n  {}", errors.join("\n  "))));
    }
    aggregate_with(&results, norm).map_err(Failure::processing)
}

pub fn run(args: &EvalArgs) -> CliResult {
    if let Some(floor) = args.min_accuracy {
        if !(0.0..=1.0).contains(&floor) {
            return Err(Failure::config(format!("--min-accuracy must be within [0, 1], got {floor}")));
        }
    }
    let report = evaluate(args)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Internal(e.to_string()))? + "\n";
    if let Some(path) = &args.report {
        std::fs::write(path, &json).map_err(|e| Failure::processing(format!("{}: {e}", path.display())))?;
    }
    match args.format {
        ReportFormat::Table => print!("{}", accuracy_table(&report)),
        ReportFormat::Json => print!("{json}"),
    }
    match args.min_accuracy {
        Some(floor) if report.overall_accuracy < floor => Err(Failure::AccuracyFloor {
            accuracy: report.overall_accuracy,
            floor,
        }),
        _ => Ok(()),
    }
}
