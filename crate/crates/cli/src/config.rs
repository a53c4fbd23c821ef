//! Turns parsed flags into library configuration and input lists.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use scenetext::dataset::{image_id_of, is_image_file, list_images, DatasetManifest};
use scenetext::detector::{ColorMode, DetectorConfig, EdgeMethod};
use scenetext::ocr::{ExternalEngine, MockEngine, OcrEngine, OcrEngineConfig, PageSegmentation};

use crate::args::{ColorArg, DetectorArgs, EdgeArg, EngineArg, OcrArgs, PsmArg, ScaleArg};
use crate::failure::{CliResult, Failure};

impl From<EdgeArg> for EdgeMethod {
    fn from(e: EdgeArg) -> Self {
        match e {
            EdgeArg::Sobel => EdgeMethod::Sobel,
            EdgeArg::Morph => EdgeMethod::MorphGradient,
            EdgeArg::Canny => EdgeMethod::Canny,
        }
    }
}

impl From<ColorArg> for ColorMode {
    fn from(c: ColorArg) -> Self {
        match c {
            ColorArg::Gray => ColorMode::Gray,
            ColorArg::Rgb => ColorMode::Rgb,
        }
    }
}

impl From<PsmArg> for PageSegmentation {
    fn from(p: PsmArg) -> Self {
        match p {
            PsmArg::Block => PageSegmentation::SingleBlock,
            PsmArg::Line => PageSegmentation::SingleLine,
            PsmArg::Word => PageSegmentation::SingleWord,
        }
    }
}

/// Defaults, then the `--config` file, then individual flags. The result is
/// validated, so Canny on RGB fails here before any image is touched.
pub fn detector_config(args: &DetectorArgs) -> CliResult<DetectorConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?
        }
        None => DetectorConfig::default(),
    };
    if let Some(e) = args.edge {
        cfg.edge_method = e.into();
    }
    if let Some(c) = args.color {
        cfg.color_mode = c.into();
    }
    if let Some(s) = args.scale {
        cfg.multi_scale = s == ScaleArg::Multi;
    }
    cfg.validate().map_err(Failure::config)?;
    Ok(cfg)
}

pub fn config_label(cfg: &DetectorConfig) -> String {
    format!(
        "{} {} {}",
        cfg.edge_method,
        cfg.color_mode,
        if cfg.multi_scale { "multi" } else { "single" }
    )
}

pub fn ocr_engine(args: &OcrArgs) -> CliResult<Box<dyn OcrEngine>> {
    match args.engine {
        EngineArg::Mock => {
            let mut engine = match &args.mock_table {
                Some(path) => MockEngine::load(path).map_err(Failure::config)?,
                None => MockEngine::default(),
            };
            engine.echo_unknown_hash = args.mock_echo_hash;
            Ok(Box::new(engine))
        }
        EngineArg::External => {
            let mut cfg = OcrEngineConfig {
                language: args.lang.clone(),
                page_segmentation: args.psm.into(),
                timeout_ms: args.ocr_timeout_ms,
                parallelism: args.ocr_jobs,
                ..OcrEngineConfig::default()
            };
            if let Some(template) = &args.ocr_command {
                cfg.command = template.split_whitespace().map(String::from).collect();
            }
            Ok(Box::new(ExternalEngine::new(cfg).map_err(Failure::config)?))
        }
    }
}

/// One input image with the id used to name its outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputImage {
    pub id: String,
    pub path: PathBuf,
}

/// Expands directories to their PNG/JPEG files (sorted); explicit files are
/// kept even if they turn out to be unreadable, so they fail individually
/// later. Two inputs with the same id would overwrite each other's outputs
/// and are rejected.
pub fn resolve_inputs(paths: &[PathBuf]) -> CliResult<Vec<InputImage>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            files.extend(list_images(p).map_err(Failure::config)?);
        } else {
            files.push(p.clone());
        }
    }
    let mut seen: BTreeMap<String, &Path> = BTreeMap::new();
    for f in &files {
        let id = image_id_of(f);
        if id.is_empty() {
            return Err(Failure::config(format!("cannot derive an image id from {}", f.display())));
        }
        if let Some(prev) = seen.insert(id.clone(), f) {
            return Err(Failure::config(format!(
                "{} and {} share the image id `{id}`",
                prev.display(),
                f.display()
            )));
        }
    }
    if files.is_empty() {
        return Err(Failure::config("no input images found"));
    }
    Ok(files
        .into_iter()
        .map(|path| InputImage {
            id: image_id_of(&path),
            path,
        })
        .collect())
}

/// Like [`resolve_inputs`], but a lone non-image file is read as a dataset manifest.
pub fn resolve_bench_inputs(paths: &[PathBuf]) -> CliResult<Vec<InputImage>> {
    if let [single] = paths {
        if single.is_file() && !is_image_file(single) {
            let manifest = DatasetManifest::load(single).map_err(Failure::config)?;
            let images: Vec<PathBuf> = manifest.entries.into_iter().map(|e| e.image_file).collect();
            return resolve_inputs(&images);
        }
    }
    resolve_inputs(paths)
}

pub fn ensure_dir(dir: &Path) -> CliResult {
    std::fs::create_dir_all(dir).map_err(|e| Failure::config(format!("{}: {e}", dir.display())))
}

pub fn worker_pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Internal(format!("cannot start worker pool: {e}")))
}
