//! Layout overlays and text re-rendering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::font::{draw_text, draw_text_fitted, CELL};
use crate::geometry::{Axis, CanvasSize, Coordinate, CoordinateKind, Point, RasterImage, Rgb};
use crate::layout::{Layout, TextBlock};

/// Rendering options for [`draw_boxes`] and [`draw_texts`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DrawStyle {
    /// Fixed colours per category label; other labels use [`palette`].
    pub box_color_per_category: BTreeMap<String, Rgb>,
    /// Outline colour of blocks without a category.
    pub default_color: Rgb,
    pub box_width: u32,
    pub show_labels: bool,
    pub show_score: bool,
    /// Label glyph height in pixels, rounded down to a multiple of 8.
    pub font_size: u32,
    pub text_color: Rgb,
}

impl Default for DrawStyle {
    fn default() -> Self {
        Self {
            box_color_per_category: BTreeMap::new(),
            default_color: [255, 0, 0],
            box_width: 1,
            show_labels: true,
            show_score: false,
            font_size: 8,
            text_color: [0, 0, 0],
        }
    }
}

impl DrawStyle {
    pub fn color_for(&self, category: Option<&str>) -> Rgb {
        match category {
            Some(c) => self
                .box_color_per_category
                .get(c)
                .copied()
                .unwrap_or_else(|| palette(c)),
            None => self.default_color,
        }
    }
}

/// A stable colour for a label: FNV-1a hash to hue, fixed saturation and value.
pub fn palette(label: &str) -> Rgb {
    let mut hash: u32 = 0x811c_9dc5;
    for b in label.bytes() {
        hash ^= u32::from(b);
        hash = hash.wrapping_mul(0x0100_0193);
    }
    hsv((hash % 360) as u16, 200, 220)
}

fn hsv(h: u16, s: u8, v: u8) -> Rgb {
    let (s, v) = (u32::from(s), u32::from(v));
    let region = h / 60;
    let f = u32::from(h % 60) * 255 / 60;
    let p = (v * (255 - s) / 255) as u8;
    let q = (v * (255 - s * f / 255) / 255) as u8;
    let t = (v * (255 - s * (255 - f) / 255) / 255) as u8;
    let v = v as u8;
    match region {
        0 => [v, t, p],
        1 => [q, v, p],
        2 => [p, v, t],
        3 => [p, q, v],
        4 => [t, p, v],
        _ => [v, p, q],
    }
}

fn round_px(v: f64) -> i64 {
    v.round() as i64
}

/// Overlays block outlines and optional labels on a copy of `image`.
///
/// Outlines run along the pixel rows and columns at the rounded block edges,
/// so interior pixels are untouched at width 1; wider outlines grow outward.
/// Quadrilaterals are drawn as four segments and intervals as two lines
/// across the image. Labels sit above the block's top-left corner, or just
/// inside it when there is no room above, and are shifted sideways to stay
/// on the page.
pub fn draw_boxes(image: &RasterImage, layout: &Layout, style: &DrawStyle) -> RasterImage {
    let mut out = image.clone();
    let blocks = layout.blocks();
    for b in &blocks {
        let color = style.color_for(b.category.as_deref());
        outline(&mut out, &b.block, color, style.box_width.max(1));
    }
    if style.show_labels {
        for b in &blocks {
            label(&mut out, b, style);
        }
    }
    out
}

fn hline(img: &mut RasterImage, x0: i64, x1: i64, y: i64, color: Rgb) {
    for x in x0..=x1 {
        img.put_pixel_clipped(x, y, color);
    }
}

fn vline(img: &mut RasterImage, x: i64, y0: i64, y1: i64, color: Rgb) {
    for y in y0..=y1 {
        img.put_pixel_clipped(x, y, color);
    }
}

fn outline(img: &mut RasterImage, block: &Coordinate, color: Rgb, width: u32) {
    let (w, h) = (i64::from(img.width()), i64::from(img.height()));
    match block {
        Coordinate::Rectangle(r) => {
            let (x1, y1, x2, y2) = (round_px(r.x1()), round_px(r.y1()), round_px(r.x2()), round_px(r.y2()));
            for k in 0..i64::from(width) {
                hline(img, x1 - k, x2 + k, y1 - k, color);
                hline(img, x1 - k, x2 + k, y2 + k, color);
                vline(img, x1 - k, y1 - k, y2 + k, color);
                vline(img, x2 + k, y1 - k, y2 + k, color);
            }
        }
        Coordinate::Interval(i) => {
            let (a, b) = (round_px(i.start()), round_px(i.end()));
            for k in 0..i64::from(width) {
                match i.axis() {
                    Axis::Horizontal => {
                        vline(img, a - k, 0, h - 1, color);
                        vline(img, b + k, 0, h - 1, color);
                    }
                    Axis::Vertical => {
                        hline(img, 0, w - 1, a - k, color);
                        hline(img, 0, w - 1, b + k, color);
                    }
                }
            }
        }
        Coordinate::Quadrilateral(q) => {
            let p = q.points();
            for i in 0..4 {
                segment(img, p[i], p[(i + 1) % 4], color, width);
            }
        }
    }
}

/// Bresenham line stamped with a `width`-pixel square brush.
fn segment(img: &mut RasterImage, a: Point, b: Point, color: Rgb, width: u32) {
    let (mut x0, mut y0) = (round_px(a.x), round_px(a.y));
    let (x1, y1) = (round_px(b.x), round_px(b.y));
    let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
    let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
    let lo = -(i64::from(width) - 1) / 2;
    let hi = lo + i64::from(width) - 1;
    let mut err = dx + dy;
    loop {
        for oy in lo..=hi {
            for ox in lo..=hi {
                img.put_pixel_clipped(x0 + ox, y0 + oy, color);
            }
        }
        if x0 == x1 && y0 == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x0 += sx;
        }
        if e2 <= dx {
            err += dx;
            y0 += sy;
        }
    }
}

fn label(img: &mut RasterImage, b: &TextBlock, style: &DrawStyle) {
    let Some(category) = b.category.as_deref() else {
        return;
    };
    let text = match (style.show_score, b.score) {
        (true, Some(s)) => format!("{category} {s:.2}"),
        _ => category.to_string(),
    };
    let canvas = CanvasSize::new(f64::from(img.width()), f64::from(img.height()));
    let Ok(Coordinate::Rectangle(r)) = b.block.coerce(CoordinateKind::Rectangle, Some(canvas)) else {
        return;
    };
    let scale = (style.font_size / CELL).max(1);
    let height = i64::from(CELL * scale);
    let bw = i64::from(style.box_width.max(1));
    let width = i64::from(crate::font::text_width(&text, scale));
    let x = (round_px(r.x1()) - (bw - 1))
        .min(i64::from(img.width()) - width)
        .max(0);
    let above = round_px(r.y1()) - (bw - 1) - height;
    let y = if above >= 0 { above } else { round_px(r.y1()) + bw };
    let color = style.color_for(Some(category));
    for yy in y..y + height {
        hline(img, x, x + width - 1, yy, color);
    }
    draw_text(img, &text, x, y, scale, [255, 255, 255]);
}

/// Renders each block's text on a white canvas, stretched to fill the
/// block's rounded pixel box `[x_1, x_2) × [y_1, y_2)`.
pub fn draw_texts(layout: &Layout, canvas: (u32, u32), style: &DrawStyle) -> RasterImage {
    let mut out = RasterImage::white(canvas.0, canvas.1);
    let size = CanvasSize::new(f64::from(canvas.0), f64::from(canvas.1));
    for b in layout.blocks() {
        let Some(text) = b.text.as_deref() else {
            continue;
        };
        let Ok(Coordinate::Rectangle(r)) = b.block.coerce(CoordinateKind::Rectangle, Some(size)) else {
            continue;
        };
        let (x1, y1) = (round_px(r.x1()), round_px(r.y1()));
        let (w, h) = (round_px(r.x2()) - x1, round_px(r.y2()) - y1);
        if w <= 0 || h <= 0 {
            continue;
        }
        draw_text_fitted(&mut out, text, (x1, y1), (w as u32, h as u32), style.text_color);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Interval, Quadrilateral, Rectangle};

    fn plain() -> DrawStyle {
        DrawStyle {
            show_labels: false,
            ..DrawStyle::default()
        }
    }

    fn count(img: &RasterImage, color: Rgb) -> usize {
        img.as_raw().chunks(3).filter(|p| *p == color).count()
    }

    #[test]
    fn empty_layout_copies_input() {
        let img = RasterImage::filled(5, 4, [1, 2, 3]);
        assert_eq!(draw_boxes(&img, &Layout::new(), &DrawStyle::default()), img);
    }

    #[test]
    fn rectangle_border_pixels() {
        let img = RasterImage::white(12, 12);
        let l = Layout::from_blocks([TextBlock::new(Rectangle::new(2.0, 2.0, 8.0, 8.0))]);
        let out = draw_boxes(&img, &l, &plain());
        assert_eq!(count(&out, [255, 0, 0]), 4 * 7 - 4);
        for y in 3..8 {
            for x in 3..8 {
                assert_eq!(out.pixel(x, y), [255; 3]);
            }
        }
        assert_eq!(out.pixel(8, 8), [255, 0, 0]);
    }

    #[test]
    fn wide_outline_grows_outward() {
        let img = RasterImage::white(20, 20);
        let l = Layout::from_blocks([TextBlock::new(Rectangle::new(5.0, 5.0, 10.0, 10.0))]);
        let out = draw_boxes(&img, &l, &DrawStyle { box_width: 2, ..plain() });
        assert_eq!(count(&out, [255, 0, 0]), 8 * 8 - 4 * 4);
        assert_eq!(out.pixel(6, 6), [255; 3]);
    }

    #[test]
    fn out_of_bounds_is_clipped() {
        let img = RasterImage::white(10, 10);
        let l = Layout::from_blocks([TextBlock::new(Rectangle::new(-5.0, 3.0, 50.0, 60.0)).with_category("text")]);
        let out = draw_boxes(&img, &l, &DrawStyle::default());
        assert_eq!((out.width(), out.height()), (10, 10));
    }

    #[test]
    fn labels_stay_on_the_page() {
        let img = RasterImage::white(60, 40);
        let style = DrawStyle::default();
        let color = style.color_for(Some("fig"));
        for x in [-10.0, 55.0] {
            let l = Layout::from_blocks([TextBlock::new(Rectangle::new(x, 20.0, x + 5.0, 30.0)).with_category("fig")]);
            let out = draw_boxes(&img, &l, &style);
            // "fig" is 24 pixels wide; the band occupies rows 12..20
            let start = if x < 0.0 { 0 } else { 60 - 24 };
            assert_eq!(out.pixel(start, 12), color);
            assert_eq!(out.pixel(start + 23, 12), color);
        }
    }

    #[test]
    fn interval_and_quadrilateral_outlines() {
        let img = RasterImage::white(10, 10);
        let l = Layout::from_blocks([TextBlock::new(Interval::new(2.0, 5.0, Axis::Vertical))]);
        assert_eq!(count(&draw_boxes(&img, &l, &plain()), [255, 0, 0]), 20);
        let q = Quadrilateral::from_rectangle(&Rectangle::new(1.0, 1.0, 4.0, 4.0));
        let l = Layout::from_blocks([TextBlock::new(q)]);
        assert_eq!(count(&draw_boxes(&img, &l, &plain()), [255, 0, 0]), 12);
    }

    #[test]
    fn category_colours_and_labels() {
        let mut style = DrawStyle::default();
        style.box_color_per_category.insert("title".into(), [0, 0, 255]);
        assert_eq!(style.color_for(Some("title")), [0, 0, 255]);
        assert_eq!(style.color_for(Some("table")), palette("table"));
        assert_ne!(palette("table"), palette("figure"));
        let img = RasterImage::white(60, 40);
        let l = Layout::from_blocks([TextBlock::new(Rectangle::new(5.0, 20.0, 50.0, 35.0)).with_category("title")]);
        let out = draw_boxes(&img, &l, &style);
        // Label band above the box, drawn in the box colour.
        assert_eq!(out.pixel(5, 12), [0, 0, 255]);
        assert!(count(&out, [0, 0, 255]) > 4 * 45);
    }

    #[test]
    fn texts_stay_in_their_blocks() {
        let l = Layout::from_blocks([
            TextBlock::new(Rectangle::new(0.0, 0.0, 8.0, 8.0)).with_text("A"),
            TextBlock::new(Rectangle::new(10.0, 10.0, 30.0, 16.0)).with_text("xyz"),
            TextBlock::new(Rectangle::new(40.0, 0.0, 45.0, 5.0)),
        ]);
        let out = draw_texts(&l, (50, 20), &DrawStyle::default());
        let mut seen = [false; 2];
        for y in 0..20 {
            for x in 0..50 {
                if out.pixel(x, y) != [255; 3] {
                    let first = x < 8 && y < 8;
                    let second = (10..30).contains(&x) && (10..16).contains(&y);
                    assert!(first || second, "stray ink at {x},{y}");
                    seen[usize::from(second)] = true;
                }
            }
        }
        assert_eq!(seen, [true, true]);
        assert_eq!(draw_texts(&Layout::new(), (3, 3), &DrawStyle::default()), RasterImage::white(3, 3));
    }
}
