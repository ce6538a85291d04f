use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::geometry::{RasterImage, Rectangle};

/// Direction of the ruling lines being searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Column separators; positions are x coordinates.
    Vertical,
    /// Row separators; positions are y coordinates.
    Horizontal,
}

const MERGE_DISTANCE: u32 = 2;

/// Finds ruling lines inside `region`.
///
/// Pixels with luma below 128 are dark. A pixel column (for vertical
/// rulings) is a candidate when its longest unbroken dark run covers at
/// least `min_run_fraction` of the region height. Candidates at most 2 px
/// apart merge into their midpoint. Positions are absolute and ascending.
pub fn detect_rulings(
    image: &RasterImage,
    region: &Rectangle,
    orientation: Orientation,
    min_run_fraction: f64,
) -> Result<Vec<f64>, PipelineError> {
    let clamp = |v: f64, limit: u32| v.round().clamp(0.0, f64::from(limit)) as u32;
    let (x0, x1) = (clamp(region.x1(), image.width()), clamp(region.x2(), image.width()));
    let (y0, y1) = (clamp(region.y1(), image.height()), clamp(region.y2(), image.height()));
    if x0 >= x1 || y0 >= y1 {
        return Err(PipelineError::EmptyRegion);
    }
    let dark = |x: u32, y: u32| image.luma(x, y) < 128;
    let (positions, along) = match orientation {
        Orientation::Vertical => (x0..x1, y0..y1),
        Orientation::Horizontal => (y0..y1, x0..x1),
    };
    let needed = min_run_fraction * f64::from(along.end - along.start);
    let mut candidates = Vec::new();
    for p in positions {
        let (mut run, mut longest) = (0u32, 0u32);
        for q in along.clone() {
            let d = match orientation {
                Orientation::Vertical => dark(p, q),
                Orientation::Horizontal => dark(q, p),
            };
            run = if d { run + 1 } else { 0 };
            longest = longest.max(run);
        }
        if longest > 0 && f64::from(longest) >= needed {
            candidates.push(p);
        }
    }
    let mut out = Vec::new();
    let mut group: Option<(u32, u32)> = None;
    for c in candidates {
        group = match group {
            Some((first, last)) if c - last <= MERGE_DISTANCE => Some((first, c)),
            Some((first, last)) => {
                out.push(f64::from(first + last) / 2.0);
                Some((c, c))
            }
            None => Some((c, c)),
        };
    }
    if let Some((first, last)) = group {
        out.push(f64::from(first + last) / 2.0);
    }
    Ok(out)
}
