//! The bundled 8×8 monospace bitmap font (printable ASCII).

use crate::geometry::{RasterImage, Rgb};

/// Glyph cell edge length in font units.
pub const CELL: u32 = 8;

/// Row bitmaps of `c`; bit 0 of each row is the leftmost column. Characters
/// outside printable ASCII render as `?`.
pub fn glyph(c: char) -> [u8; 8] {
    let code = c as u32;
    let code = if (0x20..0x7f).contains(&code) { code } else { '?' as u32 };
    font8x8::legacy::BASIC_LEGACY[code as usize]
}

fn ink(g: &[u8; 8], col: u32, row: u32) -> bool {
    g[row as usize] >> col & 1 == 1
}

/// Width in pixels of `text` drawn at an integer `scale`.
pub fn text_width(text: &str, scale: u32) -> u32 {
    text.chars().count() as u32 * CELL * scale
}

/// Draws `text` with its top-left cell corner at `(x, y)`, each font unit
/// becoming a `scale`×`scale` square. Pixels outside the image are skipped.
pub fn draw_text(image: &mut RasterImage, text: &str, x: i64, y: i64, scale: u32, color: Rgb) {
    let s = i64::from(scale.max(1));
    for (i, c) in text.chars().enumerate() {
        let g = glyph(c);
        let cx = x + i as i64 * 8 * s;
        for row in 0..CELL {
            for col in 0..CELL {
                if !ink(&g, col, row) {
                    continue;
                }
                for dy in 0..s {
                    for dx in 0..s {
                        image.put_pixel_clipped(cx + i64::from(col) * s + dx, y + i64::from(row) * s + dy, color);
                    }
                }
            }
        }
    }
}

/// Stretches `text` over the pixel box `[x, x + width) × [y, y + height)`.
///
/// Every character gets an equal share of the width and the full height;
/// each destination pixel samples the glyph cell it falls in, using integer
/// arithmetic only.
pub fn draw_text_fitted(
    image: &mut RasterImage,
    text: &str,
    (x, y): (i64, i64),
    (width, height): (u32, u32),
    color: Rgb,
) {
    let n = text.chars().count() as u64;
    if n == 0 || width == 0 || height == 0 {
        return;
    }
    let (w, h) = (u64::from(width), u64::from(height));
    for (i, c) in text.chars().enumerate() {
        let g = glyph(c);
        let i = i as u64;
        let (left, right) = (i * w / n, (i + 1) * w / n);
        let cw = right - left;
        if cw == 0 {
            continue;
        }
        for dy in 0..h {
            let row = (dy * 8 / h) as u32;
            for dx in 0..cw {
                let col = (dx * 8 / cw) as u32;
                if ink(&g, col, row) {
                    image.put_pixel_clipped(x + (left + dx) as i64, y + dy as i64, color);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn printable_glyphs_are_distinct() {
        let set: HashSet<[u8; 8]> = (0x21u8..0x7f).map(|c| glyph(c as char)).collect();
        assert_eq!(set.len(), 94);
        assert_eq!(glyph(' '), [0; 8]);
    }

    #[test]
    fn bit_zero_is_left() {
        // 'L' has its stem on the left edge.
        let mut img = RasterImage::white(8, 8);
        draw_text(&mut img, "L", 0, 0, 1, [0, 0, 0]);
        let left: u32 = (0..8).filter(|&r| img.pixel(1, r) == [0; 3]).count() as u32;
        let right: u32 = (0..8).filter(|&r| img.pixel(6, r) == [0; 3]).count() as u32;
        assert!(left > right);
    }

    #[test]
    fn scaled_text_matches_unit_text_blockwise() {
        let mut a = RasterImage::white(16, 8);
        let mut b = RasterImage::white(48, 24);
        draw_text(&mut a, "Ab", 0, 0, 1, [0, 0, 0]);
        draw_text(&mut b, "Ab", 0, 0, 3, [0, 0, 0]);
        for y in 0..24 {
            for x in 0..48 {
                assert_eq!(b.pixel(x, y), a.pixel(x / 3, y / 3));
            }
        }
        assert_eq!(text_width("Ab", 3), 48);
    }

    #[test]
    fn fitted_text_stays_inside_box() {
        let mut img = RasterImage::white(40, 30);
        draw_text_fitted(&mut img, "Hey", (5, 7), (19, 11), [0, 0, 0]);
        let mut any = false;
        for y in 0..30 {
            for x in 0..40 {
                if img.pixel(x, y) != [255; 3] {
                    any = true;
                    assert!((5..24).contains(&x) && (7..18).contains(&y));
                }
            }
        }
        assert!(any);
    }

    #[test]
    fn fitted_text_at_exact_multiple_equals_scaled_text() {
        let mut a = RasterImage::white(32, 16);
        let mut b = RasterImage::white(32, 16);
        draw_text(&mut a, "Q7", 0, 0, 2, [9, 9, 9]);
        draw_text_fitted(&mut b, "Q7", (0, 0), (32, 16), [9, 9, 9]);
        assert_eq!(a, b);
    }
}
