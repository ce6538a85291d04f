use crate::geometry::Rectangle;
use crate::layout::{Layout, PageInfo, TextBlock};

use super::OcrError;

/// One row of Tesseract's TSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct TsvRow {
    pub level: u8,
    pub page_num: i64,
    pub block_num: i64,
    pub par_num: i64,
    pub line_num: i64,
    pub word_num: i64,
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
    /// Word confidence in percent; `-1` on structural rows.
    pub conf: f64,
    pub text: String,
}

const HEADER: [&str; 12] = [
    "level", "page_num", "block_num", "par_num", "line_num", "word_num", "left", "top", "width",
    "height", "conf", "text",
];

impl TsvRow {
    fn parse(row: usize, record: &[&str]) -> Result<Self, OcrError> {
        let err = |message: String| OcrError::Row { row, message };
        if record.len() < 11 || record.len() > 12 {
            return Err(err(format!("expected 12 columns, found {}", record.len())));
        }
        let int = |i: usize| {
            record[i]
                .trim()
                .parse::<i64>()
                .map_err(|_| err(format!("{} is not an integer: {:?}", HEADER[i], record[i])))
        };
        let real = |i: usize| {
            record[i]
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(format!("{} is not a number: {:?}", HEADER[i], record[i])))
        };
        let level = int(0)?;
        if !(1..=5).contains(&level) {
            return Err(err(format!("level {level} outside 1..=5")));
        }
        let parsed = TsvRow {
            level: level as u8,
            page_num: int(1)?,
            block_num: int(2)?,
            par_num: int(3)?,
            line_num: int(4)?,
            word_num: int(5)?,
            left: real(6)?,
            top: real(7)?,
            width: real(8)?,
            height: real(9)?,
            conf: real(10)?,
            text: record.get(11).copied().unwrap_or("").to_string(),
        };
        if parsed.width < 0.0 || parsed.height < 0.0 {
            return Err(err(format!(
                "negative extent {} x {}",
                parsed.width, parsed.height
            )));
        }
        Ok(parsed)
    }

    fn rectangle(&self) -> Rectangle {
        Rectangle::new(self.left, self.top, self.left + self.width, self.top + self.height)
    }
}

/// Converts Tesseract TSV into a flat layout of blocks at levels
/// `min_level..=5` (1 page, 2 block, 3 paragraph, 4 line, 5 word).
///
/// Word rows with negative confidence are skipped and word scores are
/// `conf / 100`. Blocks get sequential ids in row order and each points at
/// the nearest enclosing emitted block through `parent`. Emitted non-word
/// blocks carry the space-joined text of their words. The level-1 row, when
/// present, fills `page_info`.
pub fn parse_tesseract_tsv(data: &[u8], min_level: u8) -> Result<Layout, OcrError> {
    let min_level = min_level.clamp(1, 5);
    let text = String::from_utf8_lossy(data);
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.split('\t').next().map(str::trim) == Some("level") => {}
        _ => return Err(OcrError::MissingHeader),
    }

    let mut layout = Layout::new();
    let mut blocks: Vec<TextBlock> = Vec::new();
    // Index into `blocks` of the most recent emitted block per level.
    let mut open: [Option<usize>; 6] = [None; 6];
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let record: Vec<&str> = line.split('\t').collect();
        let row = TsvRow::parse(i + 1, &record)?;
        let level = usize::from(row.level);
        if row.level == 1 {
            layout.page_info = Some(PageInfo {
                file_name: None,
                page_number: u32::try_from(row.page_num).ok(),
                width: Some(row.width),
                height: Some(row.height),
            });
        }
        for slot in open.iter_mut().skip(level) {
            *slot = None;
        }
        if row.level < min_level || (row.level == 5 && row.conf < 0.0) {
            continue;
        }
        let mut block = TextBlock::new(row.rectangle()).with_id(blocks.len() as i64);
        if let Some(p) = open[..level].iter().rev().flatten().next() {
            block.parent = blocks[*p].id;
        }
        if row.level == 5 {
            block.text = Some(row.text.clone());
            block.score = Some(row.conf / 100.0);
            for p in open[..level].iter().flatten() {
                let t = blocks[*p].text.get_or_insert_with(String::new);
                if !t.is_empty() {
                    t.push(' ');
                }
                t.push_str(&row.text);
            }
        }
        open[level] = Some(blocks.len());
        blocks.push(block);
    }
    for b in blocks {
        layout.push(b);
    }
    Ok(layout)
}

/// Writes a layout as Tesseract TSV: a page row from `page_info` (when
/// present) followed by one word row per block, each on its own line.
///
/// Scores become percent confidences; blocks without a score get 100.
/// Tabs and newlines inside text are replaced by spaces.
pub fn write_tesseract_tsv(layout: &Layout) -> String {
    let mut out = HEADER.join("\t");
    out.push('\n');
    let page = layout.page_info.as_ref();
    if let Some(info) = page {
        out.push_str(&format!(
            "1\t{}\t0\t0\t0\t0\t0\t0\t{}\t{}\t-1\t\n",
            info.page_number.unwrap_or(1),
            info.width.unwrap_or(0.0),
            info.height.unwrap_or(0.0)
        ));
    }
    let page_num = page.and_then(|p| p.page_number).unwrap_or(1);
    for (i, b) in layout.blocks().iter().enumerate() {
        let Some(r) = b.block.bounding_rectangle() else {
            continue;
        };
        let text: String = b
            .text
            .as_deref()
            .unwrap_or("")
            .chars()
            .map(|c| if c == '\t' || c == '\n' || c == '\r' { ' ' } else { c })
            .collect();
        out.push_str(&format!(
            "5\t{page_num}\t1\t1\t{}\t1\t{}\t{}\t{}\t{}\t{}\t{}\n",
            i + 1,
            r.x1(),
            r.y1(),
            r.width(),
            r.height(),
            b.score.map_or(100.0, |s| s * 100.0),
            text
        ));
    }
    out
}
