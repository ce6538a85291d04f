//! The two end-to-end pipelines: table extraction from ruled tables and
//! dense-text reorganization with OCR remapping.

mod nms;
mod reorg;
mod rows;
mod rulings;
mod tables;

pub use nms::{iou, nms_blocks};
pub use reorg::{
    plan_reorganization, remap_ocr_results, render_reorganized, Placement, Remapped, ReorgPlan,
    DEFAULT_GAP,
};
pub use rows::{cluster_rows, suppress_close_rows, RowBand};
pub use rulings::{detect_rulings, Orientation};
pub use tables::{concat_tables, extract_tables, TableParams, TableStructure};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("ruling search region is empty after clipping to the image")]
    EmptyRegion,
    #[error("token {index} is {width} px wide after scaling, wider than the {canvas_width} px canvas")]
    TokenTooWide {
        index: usize,
        width: f64,
        canvas_width: f64,
    },
    #[error("token {index} has no finite bounding box")]
    UnboundedToken { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no tables to concatenate")]
    NoTables,
    #[error("table on page {page} has {found} columns but page {first_page} has {expected}")]
    ColumnMismatch {
        first_page: String,
        page: String,
        expected: usize,
        found: usize,
    },
}
