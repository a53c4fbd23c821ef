use std::net::IpAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "scenetext", version, about = "Scene text detection, recognition and evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect text regions and write one JSON record per image.
    Detect(DetectArgs),
    /// Detect, order and recognize text; writes one UTF-8 text file per image.
    Recognize(RecognizeArgs),
    /// Score OCR text files against ground-truth annotations.
    Eval(EvalArgs),
    /// Time the detection stages.
    Bench(BenchArgs),
    /// Serve the annotation UI and its JSON API for a dataset directory.
    ServeAnnotate(ServeArgs),
    /// Generate a synthetic annotated dataset.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeArg {
    Sobel,
    Morph,
    Canny,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorArg {
    Gray,
    Rgb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Single,
    Multi,
}

/// Detector configuration. Flags override values from `--config`, which in
/// turn override the built-in defaults (multi-scale, morph gradient, RGB).
#[derive(Debug, Clone, Default, Args)]
pub struct DetectorArgs {
    /// JSON file with detector settings (camelCase keys, any subset).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Edge detector.
    #[arg(long, value_enum)]
    pub edge: Option<EdgeArg>,

    /// Gray converts to luminance first; rgb takes the per-pixel maximum
    /// gradient over the three channels.
    #[arg(long, value_enum)]
    pub color: Option<ColorArg>,

    /// Single-scale or pyramid detection.
    #[arg(long, value_enum)]
    pub scale: Option<ScaleArg>,
}

#[derive(Debug, Clone, Args)]
pub struct JobsArgs {
    /// Images processed in parallel (0 = one per CPU).
    #[arg(short = 'j', long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Image files or directories of images.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    /// Output directory for `<id>.json` records.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,

    /// Also write `<id>.viz.png` with the detections drawn in green.
    #[arg(long)]
    pub viz: bool,

    #[command(flatten)]
    pub detector: DetectorArgs,

    #[command(flatten)]
    pub jobs: JobsArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Run an external program per crop (tesseract by default).
    External,
    /// Answer from a crop-hash table.
    Mock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PsmArg {
    Block,
    Line,
    Word,
}

#[derive(Debug, Clone, Args)]
pub struct OcrArgs {
    #[arg(long, value_enum, default_value = "external")]
    pub engine: EngineArg,

    /// Command template, split on whitespace. `{image}`, `{lang}` and `{psm}`
    /// are replaced per crop.
    #[arg(long, value_name = "TEMPLATE")]
    pub ocr_command: Option<String>,

    #[arg(long, default_value = "tur")]
    pub lang: String,

    /// Page segmentation hint given to the engine.
    #[arg(long, value_enum, default_value = "block")]
    pub psm: PsmArg,

    /// Per-crop time limit for the external engine.
    #[arg(long, default_value_t = 10_000, value_name = "MS")]
    pub ocr_timeout_ms: u64,

    /// Regions of one image recognized concurrently.
    #[arg(long, default_value_t = 1)]
    pub ocr_jobs: usize,

    /// JSON object mapping crop hashes to text, for `--engine mock`.
    #[arg(long, value_name = "FILE")]
    pub mock_table: Option<PathBuf>,

    /// Mock engine answers unknown crops with their hash instead of "".
    #[arg(long)]
    pub mock_echo_hash: bool,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    /// Output directory for `<id>.txt` files.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,

    #[command(flatten)]
    pub detector: DetectorArgs,

    #[command(flatten)]
    pub ocr: OcrArgs,

    #[command(flatten)]
    pub jobs: JobsArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Directory holding `<id>.txt` OCR outputs.
    #[arg(long, value_name = "DIR")]
    pub ocr_dir: PathBuf,

    /// Ground truth: a manifest file or a directory of images with `<id>.json` annotations.
    #[arg(long, value_name = "PATH")]
    pub gt: PathBuf,

    /// Compare raw text instead of collapsing whitespace runs.
    #[arg(long)]
    pub no_normalize: bool,

    /// Report printed on stdout.
    #[arg(long, value_enum, default_value = "table")]
    pub format: ReportFormat,

    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,

    /// Exit with code 4 when overall accuracy (0..1) is below this value.
    #[arg(long, value_name = "FRACTION")]
    pub min_accuracy: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Image files, directories, or a dataset manifest.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    /// Timed repetitions per image (one untimed warm-up run precedes them).
    #[arg(long, default_value_t = 5)]
    pub reps: u32,

    /// Time every edge method and color mode at both scales. Replaces
    /// `--edge`, `--color` and `--scale`; other settings still apply.
    #[arg(long)]
    pub sweep: bool,

    /// Write the full timings as JSON.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,

    #[command(flatten)]
    pub detector: DetectorArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Directory with the dataset images; annotations are kept as `<id>.json` next to them.
    pub root: PathBuf,

    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,

    #[arg(long, default_value_t = 8080)]
    pub port: u16,

    /// Built annotation UI to serve at `/`.
    #[arg(long, value_name = "DIR")]
    pub ui: Option<PathBuf>,

    #[command(flatten)]
    pub detector: DetectorArgs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output directory for images, annotations and `manifest.tsv`.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,

    #[arg(long, default_value_t = 10)]
    pub count: u32,

    /// Seed of the first image; image i uses seed + i.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, default_value_t = 1024)]
    pub width: u32,

    #[arg(long, default_value_t = 576)]
    pub height: u32,

    #[arg(long, default_value_t = 1)]
    pub min_lines: u32,

    #[arg(long, default_value_t = 5)]
    pub max_lines: u32,

    /// Write a mock OCR table that maps each detected crop to the
    /// transcription of the line it overlaps most.
    #[arg(long, value_name = "FILE")]
    pub mock_table: Option<PathBuf>,

    /// Detector used to build the mock table.
    #[command(flatten)]
    pub detector: DetectorArgs,
}
