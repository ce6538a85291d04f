use crate::geometry::{CanvasSize, Coordinate, CoordinateKind};
use crate::layout::{Layout, LayoutElement, TextBlock};
use crate::pipelines::TableStructure;

use super::format_coord;

const HEADER: [&str; 10] = [
    "id", "category", "score", "text", "x_1", "y_1", "x_2", "y_2", "parent", "next",
];

/// Writes one CSV row per block, nested layouts flattened depth-first.
///
/// Quadrilaterals are written as their bounding box and intervals are
/// extended across the page when the page size is known; an interval with
/// no known canvas leaves its free-axis columns empty. A trailing `page_id`
/// column appears when any layout in the tree carries a page number.
pub fn export_csv(layout: &Layout) -> Vec<u8> {
    let mut rows = Vec::new();
    collect(layout, None, None, &mut rows);
    let with_page = rows.iter().any(|(_, page, _)| page.is_some());

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = HEADER.to_vec();
    if with_page {
        header.push("page_id");
    }
    w.write_record(&header).expect("writing to memory cannot fail");
    for (block, page, canvas) in rows {
        let mut record = block_record(block, canvas);
        if with_page {
            record.push(page.map(|p| p.to_string()).unwrap_or_default());
        }
        w.write_record(&record).expect("writing to memory cannot fail");
    }
    w.into_inner().expect("writing to memory cannot fail")
}

/// Writes one record per table row with one field per cell, the cell's
/// tokens joined by spaces, using `delimiter` between fields.
pub fn export_table_csv(table: &TableStructure, delimiter: u8) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .flexible(true)
        .from_writer(Vec::new());
    for row in table.cell_texts() {
        w.write_record(&row).expect("writing to memory cannot fail");
    }
    w.into_inner().expect("writing to memory cannot fail")
}

type Row<'a> = (&'a TextBlock, Option<u32>, Option<CanvasSize>);

fn collect<'a>(
    layout: &'a Layout,
    page: Option<u32>,
    canvas: Option<CanvasSize>,
    rows: &mut Vec<Row<'a>>,
) {
    let info = layout.page_info.as_ref();
    let page = info.and_then(|i| i.page_number).or(page);
    let canvas = info
        .and_then(|i| Some(CanvasSize::new(i.width?, i.height?)))
        .or(canvas);
    for e in &layout.elements {
        match e {
            LayoutElement::Block(b) => rows.push((b, page, canvas)),
            LayoutElement::Layout(l) => collect(l, page, canvas, rows),
        }
    }
}

fn block_record(b: &TextBlock, canvas: Option<CanvasSize>) -> Vec<String> {
    let opt = |v: Option<i64>| v.map(|v| v.to_string()).unwrap_or_default();
    let coords: [String; 4] = match b.block.coerce(CoordinateKind::Rectangle, canvas) {
        Ok(Coordinate::Rectangle(r)) => [r.x1(), r.y1(), r.x2(), r.y2()].map(format_coord),
        _ => {
            // Only an interval with no canvas ends up here.
            let Coordinate::Interval(i) = &b.block else {
                unreachable!("rectangles and quadrilaterals always coerce")
            };
            let (s, e) = (format_coord(i.start()), format_coord(i.end()));
            match i.axis() {
                crate::geometry::Axis::Horizontal => [s, String::new(), e, String::new()],
                crate::geometry::Axis::Vertical => [String::new(), s, String::new(), e],
            }
        }
    };
    let [x1, y1, x2, y2] = coords;
    vec![
        opt(b.id),
        b.category.clone().unwrap_or_default(),
        b.score.map(|s| s.to_string()).unwrap_or_default(),
        b.text.clone().unwrap_or_default(),
        x1,
        y1,
        x2,
        y2,
        opt(b.parent),
        opt(b.next),
    ]
}
