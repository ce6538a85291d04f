//! Coordinate geometry for layout elements.
//!
//! Three coordinate types are provided, ordered by generality:
//! [`Interval`] (a span along one axis), [`Rectangle`] (an axis-aligned box)
//! and [`Quadrilateral`] (four free corner points). [`Coordinate`] wraps all
//! three and implements the shared operation set. Binary operations promote
//! both operands to the more general type of the two.

mod coordinate;
mod homography;
mod interval;
mod quadrilateral;
mod raster;
mod rectangle;
mod region;

pub use coordinate::{Coordinate, CoordinateKind};
pub use homography::Homography;
pub use interval::Interval;
pub use quadrilateral::Quadrilateral;
pub use raster::{RasterImage, Rgb};
pub use rectangle::Rectangle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("interval start {start} is greater than end {end}")]
    InvertedInterval { start: f64, end: f64 },
    #[error("rectangle corners are inverted: ({x1}, {y1}) / ({x2}, {y2})")]
    InvertedRectangle { x1: f64, y1: f64, x2: f64, y2: f64 },
    #[error("quadrilateral edges cross each other")]
    SelfIntersecting,
    #[error("padding inverts the block")]
    PaddingInverts,
    #[error("scale factors must be positive and finite, got ({fx}, {fy})")]
    NonPositiveScale { fx: f64, fy: f64 },
    #[error("coordinate value is not finite")]
    NonFinite,
    #[error("canvas extent is negative")]
    NegativeCanvas,
    #[error("interval on the {0:?} axis has no bound on its free axis; canvas extents are required")]
    MissingCanvas(Axis),
    #[error("cannot coerce {from:?} to {to:?}")]
    UnsupportedCoercion {
        from: CoordinateKind,
        to: CoordinateKind,
    },
    #[error("crop region is empty after clamping to the image")]
    EmptyCrop,
    #[error("image buffer length {len} does not match {width}x{height} RGB")]
    BufferSize { width: u32, height: u32, len: usize },
    #[error("corner correspondences are degenerate; no homography exists")]
    DegenerateHomography,
}

/// The axis an [`Interval`] spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Spans x values.
    Horizontal,
    /// Spans y values.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Page dimensions in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanvasSize {
    pub width: f64,
    pub height: f64,
}

impl CanvasSize {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height }
    }
}

/// Per-edge padding amounts. Negative values shrink the block.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Padding {
    pub top: f64,
    pub bottom: f64,
    pub left: f64,
    pub right: f64,
}

impl Padding {
    pub fn new(top: f64, bottom: f64, left: f64, right: f64) -> Self {
        Self {
            top,
            bottom,
            left,
            right,
        }
    }

    pub fn uniform(amount: f64) -> Self {
        Self::new(amount, amount, amount, amount)
    }
}

pub(crate) fn check_finite(values: &[f64]) -> Result<(), GeometryError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(GeometryError::NonFinite)
    }
}

pub(crate) fn check_scale(fx: f64, fy: f64) -> Result<(), GeometryError> {
    if fx > 0.0 && fy > 0.0 && fx.is_finite() && fy.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::NonPositiveScale { fx, fy })
    }
}
