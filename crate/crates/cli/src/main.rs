mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::CliConfig;

/// Document layout analysis from the command line.
#[derive(Debug, Parser)]
#[command(name = "layoutkit", version)]
pub struct Cli {
    /// JSON settings file; flags take precedence over it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Model registry root (overrides LAYOUTKIT_REGISTRY and the config).
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    /// error, warn, info, debug or trace.
    #[arg(long, global = true)]
    log_level: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Look up a model's detections for one or more images.
    Detect(DetectArgs),
    /// Draw a layout over its page or re-render its text.
    Viz(VizArgs),
    /// Extract ruled tables to CSV.
    Tables(TablesArgs),
    /// Pack page tokens into a dense image for OCR.
    Reorg(ReorgArgs),
    /// Map OCR results on a dense image back onto the page.
    Remap(RemapArgs),
    /// Convert between COCO, layout JSON and CSV.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub model: String,
    /// Repeat to process several images; `--out` is then a directory.
    #[arg(long = "image-id", required = true)]
    pub image_ids: Vec<i64>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads when several images are requested.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VizMode {
    Boxes,
    Texts,
}

#[derive(Debug, Args)]
pub struct VizArgs {
    #[arg(long, value_enum)]
    pub mode: VizMode,
    #[arg(long)]
    pub layout: PathBuf,
    /// Page image; required for `boxes`, sets the canvas size for `texts`.
    #[arg(long)]
    pub image: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub box_width: Option<u32>,
    #[arg(long)]
    pub show_score: bool,
    #[arg(long)]
    pub no_labels: bool,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Page images, in page order.
    #[arg(long = "image", required = true)]
    pub images: Vec<PathBuf>,
    /// Detections per page: layout JSON or a COCO results array.
    #[arg(long = "detections", required = true)]
    pub detections: Vec<PathBuf>,
    /// Word-level Tesseract TSV per page.
    #[arg(long = "ocr", required = true)]
    pub ocr: Vec<PathBuf>,
    /// Image id to select from COCO results (one per page).
    #[arg(long = "image-id")]
    pub image_ids: Vec<i64>,
    /// Category map for COCO results; PubLayNet labels by default.
    #[arg(long)]
    pub categories: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = ",")]
    pub delimiter: char,
    #[arg(long)]
    pub score_min: Option<f64>,
    #[arg(long)]
    pub iou_threshold: Option<f64>,
    #[arg(long)]
    pub min_run_fraction: Option<f64>,
    #[arg(long)]
    pub row_gap: Option<f64>,
    #[arg(long)]
    pub row_min_gap: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// Keep the layout's own order.
    Keep,
    RowLtr,
    ColumnRtl,
}

#[derive(Debug, Args)]
pub struct ReorgArgs {
    #[arg(long)]
    pub layout: PathBuf,
    #[arg(long)]
    pub image: PathBuf,
    #[arg(long)]
    pub max_height: Option<f64>,
    #[arg(long)]
    pub gap: Option<f64>,
    /// Dense canvas width; the page width by default.
    #[arg(long)]
    pub canvas_width: Option<f64>,
    #[arg(long, value_enum, default_value_t = OrderArg::Keep)]
    pub order: OrderArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub plan: PathBuf,
}

#[derive(Debug, Args)]
pub struct RemapArgs {
    #[arg(long)]
    pub plan: PathBuf,
    /// Tesseract TSV produced on the dense image.
    #[arg(long)]
    pub ocr: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FromFormat {
    /// COCO dataset file.
    Coco,
    /// COCO results array.
    CocoResults,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ToFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub from: FromFormat,
    #[arg(long, value_enum)]
    pub to: ToFormat,
    #[arg(long)]
    pub input: PathBuf,
    /// Output file, or a directory when a COCO file holds several images
    /// and no `--image-id` is given.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub image_id: Option<i64>,
    #[arg(long)]
    pub categories: Option<PathBuf>,
}

/// A problem with how the tool was invoked rather than with its inputs.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let config = match &cli.config {
        Some(path) => match CliConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        None => CliConfig::default(),
    };
    init_logging(cli.log_level.as_deref().or(config.log_level.as_deref()));

    match commands::run(&cli, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_DATA)
            }
        }
    }
}

fn init_logging(level: Option<&str>) {
    let mut builder = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"));
    if let Some(level) = level {
        builder.parse_filters(level);
    }
    builder.format_timestamp(None).target(env_logger::Target::Stderr).init();
}
