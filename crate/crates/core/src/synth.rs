//! Seeded generator of ruled tables with known cell contents.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::font::{draw_text, text_width, CELL};
use crate::geometry::{RasterImage, Rectangle, Rgb};
use crate::layout::{Layout, PageInfo, TextBlock};

const CHARSET: &[u8] = b"ABCDEFGHJKLMNPRSTUVWXYZabcdefghijkmnopqrstuvwxyz0123456789.-/";

/// Size limits for generated tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableSpec {
    pub min_columns: usize,
    pub max_columns: usize,
    pub min_rows: usize,
    pub max_rows: usize,
}

impl Default for TableSpec {
    fn default() -> Self {
        Self {
            min_columns: 2,
            max_columns: 5,
            min_rows: 2,
            max_rows: 20,
        }
    }
}

/// A rendered page holding one ruled table, with its ground truth.
#[derive(Debug, Clone)]
pub struct SyntheticTable {
    pub image: RasterImage,
    /// Detector-style output: the table, a weaker duplicate of it, and the
    /// caption as a `title` region.
    pub detections: Layout,
    /// Word tokens in shuffled order, ids `0..n`.
    pub tokens: Layout,
    /// `truth[i]` is the `(row, column)` of token id `i`, or `None` for
    /// tokens outside the table.
    pub truth: Vec<Option<(usize, usize)>>,
    /// Expected cell texts, words joined by spaces.
    pub grid: Vec<Vec<String>>,
    /// Pixel scale of the font.
    pub scale: u32,
}

impl SyntheticTable {
    pub fn columns(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    pub fn generate(seed: u64) -> Self {
        Self::generate_with(seed, &TableSpec::default())
    }

    /// Lays out a table at a random position below a caption line.
    ///
    /// Every first-column cell holds one word; other cells hold zero to two.
    /// Column and row rulings are one or two pixels thick and frame the
    /// table. Token boxes span whole glyph cells.
    pub fn generate_with(seed: u64, spec: &TableSpec) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let columns = rng.gen_range(spec.min_columns..=spec.max_columns);
        let rows = rng.gen_range(spec.min_rows..=spec.max_rows);
        let scale: u32 = rng.gen_range(1..=2);
        let ink: Rgb = {
            let v = rng.gen_range(0..=60);
            [v, v, v]
        };
        let thickness: u32 = rng.gen_range(1..=2);
        let (pad_x, pad_y): (u32, u32) = (rng.gen_range(4..=10), rng.gen_range(3..=8));

        let grid: Vec<Vec<Vec<String>>> = (0..rows)
            .map(|_| {
                (0..columns)
                    .map(|c| {
                        let words = if c == 0 {
                            1
                        } else if rng.gen_bool(0.1) {
                            0
                        } else {
                            rng.gen_range(1..=2)
                        };
                        (0..words).map(|_| random_word(&mut rng)).collect()
                    })
                    .collect()
            })
            .collect();

        let cell_text_width = |words: &[String]| text_width(&words.join(" "), scale);
        let col_widths: Vec<u32> = (0..columns)
            .map(|c| {
                grid.iter()
                    .map(|row| cell_text_width(&row[c]))
                    .max()
                    .unwrap_or(0)
                    .max(CELL * scale)
                    + 2 * pad_x
                    + thickness
            })
            .collect();
        let row_height = CELL * scale + 2 * pad_y + thickness;
        let table_w: u32 = col_widths.iter().sum::<u32>() + thickness;
        let table_h = row_height * rows as u32 + thickness;

        let caption = format!("Table {}", rng.gen_range(1..=99));
        let caption_y = rng.gen_range(5..=30);
        let x0 = rng.gen_range(10..=120);
        let y0 = caption_y + CELL * scale + rng.gen_range(8..=20);
        let width = (x0 + table_w + rng.gen_range(10..=120)).max(x0 + text_width(&caption, scale) + 10);
        let height = y0 + table_h + rng.gen_range(10..=80);
        let mut image = RasterImage::white(width, height);

        let mut col_x = vec![x0];
        for w in &col_widths {
            col_x.push(col_x.last().unwrap() + w);
        }
        let row_y: Vec<u32> = (0..=rows as u32).map(|r| y0 + r * row_height).collect();
        for &x in &col_x {
            for t in 0..thickness {
                for y in y0..y0 + table_h {
                    image.put_pixel(x + t, y, ink);
                }
            }
        }
        for &y in &row_y {
            for t in 0..thickness {
                for x in x0..x0 + table_w {
                    image.put_pixel(x, y + t, ink);
                }
            }
        }

        let mut words: Vec<(TextBlock, Option<(usize, usize)>)> = Vec::new();
        let cell_px = f64::from(CELL * scale);
        let mut place = |image: &mut RasterImage, text: &str, x: u32, y: u32, at: Option<(usize, usize)>| {
            draw_text(image, text, i64::from(x), i64::from(y), scale, ink);
            let w = f64::from(text_width(text, scale));
            let r = Rectangle::new(f64::from(x), f64::from(y), f64::from(x) + w, f64::from(y) + cell_px);
            words.push((TextBlock::new(r).with_text(text).with_score(1.0), at));
        };
        let mut cx = x0;
        for w in caption.split(' ') {
            place(&mut image, w, cx, caption_y, None);
            cx += text_width(w, scale) + CELL * scale;
        }
        for (r, row) in grid.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                let mut x = col_x[c] + thickness + pad_x;
                let y = row_y[r] + thickness + pad_y;
                for w in cell {
                    place(&mut image, w, x, y, Some((r, c)));
                    x += text_width(w, scale) + CELL * scale;
                }
            }
        }
        words.shuffle(&mut rng);

        let mut tokens = Layout::new().with_page_info(PageInfo {
            file_name: None,
            page_number: Some(1),
            width: Some(f64::from(width)),
            height: Some(f64::from(height)),
        });
        let mut truth = Vec::with_capacity(words.len());
        for (i, (b, at)) in words.into_iter().enumerate() {
            tokens.push(b.with_id(i as i64));
            truth.push(at);
        }

        let margin = f64::from(rng.gen_range(1..=2u32));
        let table = Rectangle::new(
            f64::from(x0) - margin,
            f64::from(y0) - margin,
            f64::from(x0 + table_w) + margin,
            f64::from(y0 + table_h) + margin,
        );
        let dx = f64::from(rng.gen_range(1..=3u32));
        let detections = Layout::from_blocks([
            TextBlock::new(table)
                .with_category("table")
                .with_score(round2(rng.gen_range(0.9..0.99))),
            TextBlock::new(table.shift(dx, 0.0))
                .with_category("table")
                .with_score(round2(rng.gen_range(0.8..0.89))),
            TextBlock::new(Rectangle::new(
                f64::from(x0),
                f64::from(caption_y),
                f64::from(x0 + text_width(&caption, scale)),
                f64::from(caption_y) + cell_px,
            ))
            .with_category("title")
            .with_score(round2(rng.gen_range(0.8..0.99))),
        ]);

        SyntheticTable {
            image,
            detections,
            tokens,
            truth,
            grid: grid
                .into_iter()
                .map(|row| row.into_iter().map(|cell| cell.join(" ")).collect())
                .collect(),
            scale,
        }
    }
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn random_word(rng: &mut impl Rng) -> String {
    let len = rng.gen_range(1..=8);
    (0..len)
        .map(|_| CHARSET[rng.gen_range(0..CHARSET.len())] as char)
        .collect()
}
