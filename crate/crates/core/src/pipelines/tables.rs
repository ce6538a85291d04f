use serde::{Deserialize, Serialize};

use super::{cluster_rows, detect_rulings, nms_blocks, suppress_close_rows, Orientation, PipelineError, RowBand};
use crate::geometry::{RasterImage, Rectangle};
use crate::layout::{Layout, TextBlock};

/// Tuning knobs for [`extract_tables`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TableParams {
    /// Minimum detection score for a table region.
    pub score_min: f64,
    pub iou_threshold: f64,
    /// Fraction of the region height a column ruling must span.
    pub min_run_fraction: f64,
    /// Row clustering gap; the median token height when unset.
    pub row_gap: Option<f64>,
    pub row_min_gap: f64,
}

impl Default for TableParams {
    fn default() -> Self {
        Self {
            score_min: 0.8,
            iou_threshold: 0.5,
            min_run_fraction: 0.8,
            row_gap: None,
            row_min_gap: 3.0,
        }
    }
}

/// A recovered table grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TableStructure {
    pub region: Rectangle,
    /// Ascending x positions between columns.
    pub column_separators: Vec<f64>,
    pub row_bands: Vec<RowBand>,
    /// `cells[row][column]`, tokens sorted left to right.
    pub cells: Vec<Vec<Vec<TextBlock>>>,
    pub page: Option<u32>,
}

impl TableStructure {
    pub fn row_count(&self) -> usize {
        self.cells.len()
    }

    pub fn column_count(&self) -> usize {
        self.column_separators.len() + 1
    }

    /// Cell texts with tokens joined by single spaces.
    pub fn cell_texts(&self) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        cell.iter()
                            .filter_map(|t| t.text.as_deref())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect()
            })
            .collect()
    }
}

/// Recovers table grids from ruled tables.
///
/// Detections labelled `table` scoring at least `score_min` survive
/// non-maximum suppression and are processed top to bottom. In each region,
/// vertical rulings become column separators, except that the outermost
/// rulings are dropped as the table frame when no token centre lies beyond
/// them. Tokens of the left-most column are clustered into rows and close
/// rows are merged. Every token whose centre lies inside the region is then
/// assigned to the column between the separators around its centre and to
/// the row whose band is nearest, with boundaries halfway between bands.
/// Tokens outside the detected region are ignored.
pub fn extract_tables(
    image: &RasterImage,
    detections: &Layout,
    tokens: &Layout,
    params: &TableParams,
) -> Result<Vec<TableStructure>, PipelineError> {
    let tables = detections.filter(|b| {
        b.category.as_deref() == Some("table") && b.score.is_some_and(|s| s >= params.score_min)
    });
    let mut regions: Vec<Rectangle> = nms_blocks(&tables, params.iou_threshold)
        .blocks()
        .iter()
        .filter_map(|b| b.block.bounding_rectangle())
        .collect();
    regions.sort_by(|a, b| a.y1().total_cmp(&b.y1()).then(a.x1().total_cmp(&b.x1())));

    let page = tokens.page_info.as_ref().and_then(|p| p.page_number);
    let all_tokens: Vec<(&TextBlock, Rectangle)> = tokens
        .blocks()
        .into_iter()
        .filter_map(|b| Some((b, b.block.bounding_rectangle()?)))
        .collect();

    let mut out = Vec::with_capacity(regions.len());
    for region in regions {
        let inside: Vec<(&TextBlock, Rectangle)> = all_tokens
            .iter()
            .filter(|(_, r)| region.contains_point(r.center()))
            .cloned()
            .collect();
        let separators = match detect_rulings(image, &region, Orientation::Vertical, params.min_run_fraction) {
            Ok(rulings) => trim_frame(rulings, &inside),
            Err(PipelineError::EmptyRegion) => Vec::new(),
            Err(e) => return Err(e),
        };
        let column_of = |r: &Rectangle| separators.iter().filter(|&&s| s < r.center().x).count();

        let mut first_column: Layout = inside
            .iter()
            .filter(|(_, r)| column_of(r) == 0)
            .map(|(b, _)| (*b).clone())
            .collect();
        if first_column.is_empty() {
            first_column = inside.iter().map(|(b, _)| (*b).clone()).collect();
        }
        let gap = params.row_gap.unwrap_or_else(|| median_height(&first_column));
        let mut bands = suppress_close_rows(&cluster_rows(&first_column, gap), params.row_min_gap);
        for b in &mut bands {
            b.page = page;
        }
        let bounds: Vec<f64> = bands
            .windows(2)
            .map(|w| (w[0].bottom + w[1].top) / 2.0)
            .collect();

        let columns = separators.len() + 1;
        log::debug!(
            "table at ({:.0}, {:.0}): {} tokens, {} columns, {} rows",
            region.x1(),
            region.y1(),
            inside.len(),
            columns,
            bands.len()
        );
        let mut cells: Vec<Vec<Vec<TextBlock>>> = vec![vec![Vec::new(); columns]; bands.len()];
        if !bands.is_empty() {
            for (b, r) in &inside {
                let row = bounds.iter().filter(|&&y| y < r.center().y).count();
                cells[row][column_of(r)].push((*b).clone());
            }
        }
        for cell in cells.iter_mut().flatten() {
            cell.sort_by(|a, b| {
                let (ra, rb) = (a.block.bounding_rectangle(), b.block.bounding_rectangle());
                let key = |r: Option<Rectangle>| r.map_or((0.0, 0.0), |r| (r.x1(), r.y1()));
                let (ka, kb) = (key(ra), key(rb));
                ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
            });
        }
        out.push(TableStructure {
            region,
            column_separators: separators,
            row_bands: bands,
            cells,
            page,
        });
    }
    Ok(out)
}

fn trim_frame(mut rulings: Vec<f64>, tokens: &[(&TextBlock, Rectangle)]) -> Vec<f64> {
    let centers: Vec<f64> = tokens.iter().map(|(_, r)| r.center().x).collect();
    if let Some(&first) = rulings.first() {
        if !centers.iter().any(|&c| c < first) {
            rulings.remove(0);
        }
    }
    if let Some(&last) = rulings.last() {
        if !centers.iter().any(|&c| c > last) {
            rulings.pop();
        }
    }
    rulings
}

fn median_height(tokens: &Layout) -> f64 {
    let mut h: Vec<f64> = tokens
        .blocks()
        .iter()
        .filter_map(|b| b.block.bounding_rectangle())
        .map(|r| r.height())
        .collect();
    if h.is_empty() {
        return 0.0;
    }
    h.sort_by(f64::total_cmp);
    let n = h.len();
    if n % 2 == 1 {
        h[n / 2]
    } else {
        (h[n / 2 - 1] + h[n / 2]) / 2.0
    }
}

/// Stacks tables continued across pages, in the given order.
///
/// The first table's region and separators are kept; row bands keep their
/// page-local coordinates and are tagged with their page.
pub fn concat_tables(tables: &[TableStructure]) -> Result<TableStructure, PipelineError> {
    let first = tables.first().ok_or(PipelineError::NoTables)?;
    let page_name = |t: &TableStructure| t.page.map_or_else(|| "?".to_string(), |p| p.to_string());
    let mut out = TableStructure {
        region: first.region,
        column_separators: first.column_separators.clone(),
        row_bands: Vec::new(),
        cells: Vec::new(),
        page: first.page,
    };
    for t in tables {
        if t.column_count() != first.column_count() {
            return Err(PipelineError::ColumnMismatch {
                first_page: page_name(first),
                page: page_name(t),
                expected: first.column_count(),
                found: t.column_count(),
            });
        }
        out.row_bands.extend(t.row_bands.iter().map(|b| RowBand {
            page: b.page.or(t.page),
            ..*b
        }));
        out.cells.extend(t.cells.iter().cloned());
    }
    Ok(out)
}
