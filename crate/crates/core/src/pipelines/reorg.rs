use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::geometry::{Coordinate, RasterImage, Rectangle};
use crate::layout::{Layout, TextBlock};

/// Default spacing between packed lines and between tokens on a line.
pub const DEFAULT_GAP: f64 = 4.0;

/// Where one token moved to on the reorganized canvas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub token_index: usize,
    pub source: Rectangle,
    pub target: Rectangle,
}

/// A packing of page tokens into dense lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReorgPlan {
    pub canvas_width: f64,
    pub canvas_height: f64,
    pub max_height: f64,
    pub gap: f64,
    pub placements: Vec<Placement>,
}

impl ReorgPlan {
    /// Canvas size in whole pixels.
    pub fn canvas_pixels(&self) -> (u32, u32) {
        (self.canvas_width.ceil() as u32, self.canvas_height.ceil() as u32)
    }
}

/// Packs tokens, in layout order, into lines `max_height` tall.
///
/// Tokens taller than `max_height` shrink uniformly to fit. Each token is
/// placed after the previous one on the current line, `gap` pixels further
/// right with its left edge on a whole pixel, and is vertically centred in
/// the line, also snapped to a whole pixel. A token that would cross
/// `canvas_width` starts a new line. Lines are separated by `gap`, so the
/// canvas is `lines * (max_height + gap)` tall.
pub fn plan_reorganization(
    tokens: &Layout,
    max_height: f64,
    gap: f64,
    canvas_width: f64,
) -> Result<ReorgPlan, PipelineError> {
    if !(max_height > 0.0 && max_height.is_finite()) {
        return Err(PipelineError::InvalidParameter(format!("max_height {max_height}")));
    }
    if !(gap >= 0.0 && gap.is_finite()) {
        return Err(PipelineError::InvalidParameter(format!("gap {gap}")));
    }
    if !(canvas_width > 0.0 && canvas_width.is_finite()) {
        return Err(PipelineError::InvalidParameter(format!("canvas_width {canvas_width}")));
    }
    let pitch = max_height + gap;
    let mut placements = Vec::new();
    let (mut x, mut line) = (0.0f64, 0usize);
    for (index, b) in tokens.blocks().into_iter().enumerate() {
        let source = b
            .block
            .bounding_rectangle()
            .ok_or(PipelineError::UnboundedToken { index })?;
        let (w, h) = (source.width(), source.height());
        let factor = if h > max_height { max_height / h } else { 1.0 };
        let (tw, th) = (w * factor, h * factor);
        if tw > canvas_width {
            return Err(PipelineError::TokenTooWide {
                index,
                width: tw,
                canvas_width,
            });
        }
        if x > 0.0 && x + tw > canvas_width {
            x = 0.0;
            line += 1;
        }
        let top = line as f64 * pitch + ((max_height - th) / 2.0).floor().max(0.0);
        let target = Rectangle::new(x, top, x + tw, top + th);
        placements.push(Placement {
            token_index: index,
            source,
            target,
        });
        x += tw.ceil() + gap;
    }
    let lines = if placements.is_empty() { 0 } else { line + 1 };
    Ok(ReorgPlan {
        canvas_width,
        canvas_height: lines as f64 * pitch,
        max_height,
        gap,
        placements,
    })
}

fn pixel_box(r: &Rectangle) -> (i64, i64, u32, u32) {
    let (x0, y0) = (r.x1().round() as i64, r.y1().round() as i64);
    let (x1, y1) = (r.x2().round() as i64, r.y2().round() as i64);
    (x0, y0, (x1 - x0).max(0) as u32, (y1 - y0).max(0) as u32)
}

/// Paints every planned token onto a white canvas, resizing with nearest
/// neighbour sampling where a token was scaled.
pub fn render_reorganized(plan: &ReorgPlan, image: &RasterImage) -> RasterImage {
    let (w, h) = plan.canvas_pixels();
    let mut out = RasterImage::white(w, h);
    for p in &plan.placements {
        let Ok(crop) = Coordinate::from(p.source).crop_image(image) else {
            continue;
        };
        let (x, y, tw, th) = pixel_box(&p.target);
        if tw == 0 || th == 0 || crop.is_empty() {
            continue;
        }
        let patch = if (crop.width(), crop.height()) == (tw, th) {
            crop
        } else {
            crop.resize_nearest(tw, th)
        };
        out.blit(&patch, x, y);
    }
    out
}

/// OCR results mapped back onto the original page.
#[derive(Debug, Clone, PartialEq)]
pub struct Remapped {
    pub layout: Layout,
    /// Words whose centre fell outside every placement.
    pub dropped: usize,
}

/// Moves word boxes found on the reorganized canvas back to page
/// coordinates.
///
/// A word belongs to the first placement whose target contains its centre.
/// Its box is taken relative to the target, scaled back by the inverse of
/// the packing scale, and re-anchored on the source.
pub fn remap_ocr_results(plan: &ReorgPlan, ocr: &Layout) -> Remapped {
    let mut layout = Layout::new();
    let mut dropped = 0;
    for word in ocr.blocks() {
        let center = word.block.center();
        let Some(p) = plan.placements.iter().find(|p| p.target.contains_point(center)) else {
            dropped += 1;
            continue;
        };
        let ratio = |t: f64, s: f64| if t > 0.0 && s > 0.0 { s / t } else { 1.0 };
        let (fx, fy) = (
            ratio(p.target.width(), p.source.width()),
            ratio(p.target.height(), p.source.height()),
        );
        let local = word.block.relative_to(&Coordinate::from(p.target));
        let Ok(scaled) = local.scale(fx, fy) else {
            dropped += 1;
            continue;
        };
        let restored = scaled.condition_on(&Coordinate::from(p.source));
        layout.push(TextBlock {
            block: restored,
            ..(*word).clone()
        });
    }
    Remapped { layout, dropped }
}
