use serde::{Deserialize, Serialize};

use crate::layout::Layout;

/// A horizontal band of table rows, `top <= bottom`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RowBand {
    pub top: f64,
    pub bottom: f64,
    /// Page the row came from, set when tables are concatenated across pages.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub page: Option<u32>,
}

impl RowBand {
    pub fn new(top: f64, bottom: f64) -> Self {
        Self {
            top,
            bottom,
            page: None,
        }
    }
}

/// Groups tokens into rows by their vertical centres.
///
/// Centres are visited top to bottom and a new band starts whenever the
/// distance to the previous centre exceeds `gap_threshold`. Each band spans
/// its tokens' vertical extent.
pub fn cluster_rows(tokens: &Layout, gap_threshold: f64) -> Vec<RowBand> {
    let mut spans: Vec<(f64, f64, f64)> = tokens
        .blocks()
        .iter()
        .filter_map(|b| b.block.bounding_rectangle())
        .map(|r| (r.center().y, r.y1(), r.y2()))
        .collect();
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut bands: Vec<RowBand> = Vec::new();
    let mut last_center = f64::NEG_INFINITY;
    for (c, top, bottom) in spans {
        match bands.last_mut() {
            Some(band) if c - last_center <= gap_threshold => {
                band.top = band.top.min(top);
                band.bottom = band.bottom.max(bottom);
            }
            _ => bands.push(RowBand::new(top, bottom)),
        }
        last_center = c;
    }
    bands
}

/// Merges each band into its predecessor when the gap between them is
/// below `min_gap`, so every remaining gap is at least `min_gap`.
pub fn suppress_close_rows(bands: &[RowBand], min_gap: f64) -> Vec<RowBand> {
    let mut out: Vec<RowBand> = Vec::with_capacity(bands.len());
    for band in bands {
        out.push(*band);
        // a merged band can reach back above its predecessor, so keep
        // merging until the last gap is wide enough
        while out.len() >= 2 {
            let n = out.len();
            let last = out[n - 1];
            let prev = &mut out[n - 2];
            if last.top - prev.bottom >= min_gap {
                break;
            }
            prev.top = prev.top.min(last.top);
            prev.bottom = prev.bottom.max(last.bottom);
            out.pop();
        }
    }
    out
}
