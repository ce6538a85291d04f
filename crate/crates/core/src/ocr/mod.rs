//! OCR engine contract, Tesseract TSV ingestion and text-accuracy metrics.

mod agent;
mod metrics;
mod tsv;

pub use agent::{OcrAgent, TemplateAgent};
pub use metrics::{char_jaccard, levenshtein};
pub use tsv::{parse_tesseract_tsv, write_tesseract_tsv, TsvRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OcrError {
    #[error("TSV row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("TSV is missing its header row")]
    MissingHeader,
    #[error("OCR engine failed: {0}")]
    Engine(String),
}
