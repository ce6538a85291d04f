use crate::font::{glyph, CELL};
use crate::geometry::{RasterImage, Rectangle};
use crate::layout::{Layout, TextBlock};

use super::OcrError;

/// Anything that turns a page image into word-level text blocks.
///
/// Implementations return blocks inside the image bounds, each with text,
/// a rectangle and a confidence score.
pub trait OcrAgent {
    fn detect(&mut self, image: &RasterImage) -> Result<Layout, OcrError>;
}

/// A deterministic recognizer for text drawn with the bundled bitmap font at
/// a known integer scale, dark on a light background.
///
/// Text lines must be separated by at least one ink-free pixel row. Glyphs
/// whose cells abut horizontally form a word; any other spacing starts a
/// new word. Word boxes span whole glyph cells.
#[derive(Debug, Clone)]
pub struct TemplateAgent {
    scale: u32,
    templates: Vec<Template>,
}

#[derive(Debug, Clone)]
struct Template {
    ch: char,
    rows: [u8; 8],
    first_col: u32,
    last_col: u32,
    ink: u32,
}

#[derive(Debug, Clone, Copy)]
struct Hit {
    ch: char,
    x: i64,
    /// One past the last inked pixel column.
    ink_end: i64,
}

impl TemplateAgent {
    pub fn new(scale: u32) -> Self {
        let templates = (0x21u8..0x7f)
            .map(|c| {
                let rows = glyph(c as char);
                let mask = rows.iter().fold(0u8, |acc, r| acc | r);
                Template {
                    ch: c as char,
                    rows,
                    first_col: mask.trailing_zeros(),
                    last_col: 7 - mask.leading_zeros(),
                    ink: rows.iter().map(|r| r.count_ones()).sum(),
                }
            })
            .collect();
        Self {
            scale: scale.max(1),
            templates,
        }
    }

    fn decode_line(&self, dark: &Mask, top: i64, bottom: i64) -> Vec<TextBlock> {
        let cell = i64::from(CELL * self.scale);
        // The glyph cell must contain the inked rows; try every placement
        // and keep the one explaining the most ink.
        let mut best: Option<(u64, i64, Vec<Hit>)> = None;
        for oy in (bottom - cell).max(top - cell + 1)..=top {
            let hits = self.decode_at(dark, oy, top, bottom);
            let explained: u64 = hits
                .iter()
                .map(|h| u64::from(self.template(h.ch).ink))
                .sum();
            if best.as_ref().is_none_or(|(e, _, _)| explained > *e) {
                best = Some((explained, oy, hits));
            }
        }
        let Some((_, oy, hits)) = best else {
            return Vec::new();
        };
        let mut words: Vec<(i64, i64, String)> = Vec::new();
        for h in hits {
            match words.last_mut() {
                Some((_, end, text)) if *end == h.x => {
                    *end += cell;
                    text.push(h.ch);
                }
                _ => words.push((h.x, h.x + cell, h.ch.to_string())),
            }
        }
        let (w, h) = (dark.width as f64, dark.height as f64);
        words
            .into_iter()
            .map(|(x0, x1, text)| {
                let r = Rectangle::new(
                    (x0 as f64).clamp(0.0, w),
                    (oy as f64).clamp(0.0, h),
                    (x1 as f64).clamp(0.0, w),
                    ((oy + cell) as f64).clamp(0.0, h),
                );
                TextBlock::new(r).with_text(text).with_score(1.0)
            })
            .collect()
    }

    fn template(&self, ch: char) -> &Template {
        &self.templates[(ch as u8 - 0x21) as usize]
    }

    fn decode_at(&self, dark: &Mask, oy: i64, top: i64, bottom: i64) -> Vec<Hit> {
        let mut hits = Vec::new();
        let mut x = 0i64;
        while let Some(start) = dark.next_inked_column(x, top, bottom) {
            match self.match_at(dark, start, oy) {
                Some(hit) => {
                    x = hit.ink_end;
                    hits.push(hit);
                }
                None => x = start + 1,
            }
        }
        hits
    }

    /// Finds the glyph whose leftmost inked column sits at pixel column `x`.
    fn match_at(&self, dark: &Mask, x: i64, oy: i64) -> Option<Hit> {
        let s = i64::from(self.scale);
        let mut best: Option<(&Template, i64)> = None;
        for t in &self.templates {
            let ox = x - i64::from(t.first_col) * s;
            if !self.fits(dark, t, ox, oy) {
                continue;
            }
            if best.is_none_or(|(b, _)| t.ink > b.ink) {
                best = Some((t, ox));
            }
        }
        best.map(|(t, ox)| Hit {
            ch: t.ch,
            x: ox,
            ink_end: ox + (i64::from(t.last_col) + 1) * s,
        })
    }

    fn fits(&self, dark: &Mask, t: &Template, ox: i64, oy: i64) -> bool {
        let s = i64::from(self.scale);
        for row in 0..8i64 {
            for col in t.first_col..=t.last_col {
                let want = t.rows[row as usize] >> col & 1 == 1;
                let (bx, by) = (ox + i64::from(col) * s, oy + row * s);
                for dy in 0..s {
                    for dx in 0..s {
                        if dark.get(bx + dx, by + dy) != want {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl OcrAgent for TemplateAgent {
    fn detect(&mut self, image: &RasterImage) -> Result<Layout, OcrError> {
        let dark = Mask::new(image);
        let mut layout = Layout::new();
        let mut y = 0i64;
        while y < dark.height {
            if !dark.row_inked(y) {
                y += 1;
                continue;
            }
            let top = y;
            while y < dark.height && dark.row_inked(y) {
                y += 1;
            }
            for b in self.decode_line(&dark, top, y - 1) {
                layout.push(b);
            }
        }
        for (i, e) in layout.elements.iter_mut().enumerate() {
            if let crate::layout::LayoutElement::Block(b) = e {
                b.id = Some(i as i64);
            }
        }
        Ok(layout)
    }
}

struct Mask {
    width: i64,
    height: i64,
    bits: Vec<bool>,
}

impl Mask {
    fn new(image: &RasterImage) -> Self {
        let (w, h) = (image.width(), image.height());
        let mut bits = Vec::with_capacity(w as usize * h as usize);
        for y in 0..h {
            for x in 0..w {
                bits.push(image.luma(x, y) < 128);
            }
        }
        Self {
            width: i64::from(w),
            height: i64::from(h),
            bits,
        }
    }

    fn get(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && x < self.width && y < self.height && self.bits[(y * self.width + x) as usize]
    }

    fn row_inked(&self, y: i64) -> bool {
        (0..self.width).any(|x| self.get(x, y))
    }

    fn next_inked_column(&self, from: i64, top: i64, bottom: i64) -> Option<i64> {
        (from.max(0)..self.width).find(|&x| (top..=bottom).any(|y| self.get(x, y)))
    }
}
