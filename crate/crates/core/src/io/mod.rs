//! Storage formats: layout JSON and CSV, COCO datasets and detection
//! results, and page images.

mod categories;
mod coco;
mod csv_export;
mod image_io;
mod json;

pub use categories::CategoryMap;
pub use coco::{load_coco, CocoKind, DetectionRecord};
pub use csv_export::{export_csv, export_table_csv};
pub use image_io::{decode_image, encode_png, load_image, save_image};
pub use json::{export_json, load_json};

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Element { path: String, message: String },
    #[error("unknown category id {0}")]
    UnknownCategory(i64),
    #[error("record {index}: negative bbox extent ({width} x {height})")]
    NegativeExtent { index: usize, width: f64, height: f64 },
    #[error("record {index}: score {score} outside [0, 1]")]
    ScoreOutOfRange { index: usize, score: f64 },
    #[error("annotation {index} references unknown image {image_id}")]
    UnknownImage { index: usize, image_id: i64 },
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("image: {0}")]
    Image(#[from] image::ImageError),
    #[error("cannot save an empty image")]
    EmptyImage,
    #[error("unsupported output format {0:?}; only PNG can be written")]
    UnsupportedFormat(String),
}

/// Rounds to two decimals, normalising negative zero.
pub(crate) fn round_coord(v: f64) -> f64 {
    let r = (v * 100.0).round() / 100.0;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Text form of a rounded coordinate: `3` rather than `3.0`.
pub(crate) fn format_coord(v: f64) -> String {
    format!("{}", round_coord(v))
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<Vec<u8>, IoError> {
    std::fs::read(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}
