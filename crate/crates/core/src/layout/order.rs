use serde::{Deserialize, Serialize};

use super::{element_bounds, Layout, LayoutElement};

/// Geometric reading-order modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadingOrder {
    /// Columns right to left, each read top to bottom (vertical CJK text).
    ColumnRtl,
    /// Rows top to bottom, each read left to right.
    RowLtr,
}

impl std::str::FromStr for ReadingOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "column_rtl" => Ok(ReadingOrder::ColumnRtl),
            "row_ltr" => Ok(ReadingOrder::RowLtr),
            other => Err(format!("unknown reading order {other:?}")),
        }
    }
}

struct SortKey {
    primary: f64,
    secondary: f64,
    id: i64,
}

impl Layout {
    /// Reorders the top-level elements and rewrites `next` so every block
    /// points at the id of the element after it.
    ///
    /// Ties on the primary axis fall back to the secondary axis, then to the
    /// block id. A nested layout is positioned by the box around its blocks
    /// and linked to through its first block.
    pub fn sort_reading_order(&self, mode: ReadingOrder) -> Layout {
        let key = |e: &LayoutElement| {
            let c = element_bounds(e).map(|c| c.center());
            let id = head_id(e).unwrap_or(i64::MAX);
            match (c, mode) {
                (None, _) => SortKey {
                    primary: f64::INFINITY,
                    secondary: f64::INFINITY,
                    id,
                },
                (Some(c), ReadingOrder::ColumnRtl) => SortKey {
                    primary: -c.x,
                    secondary: c.y,
                    id,
                },
                (Some(c), ReadingOrder::RowLtr) => SortKey {
                    primary: c.y,
                    secondary: c.x,
                    id,
                },
            }
        };
        let mut keyed: Vec<(SortKey, &LayoutElement)> =
            self.elements.iter().map(|e| (key(e), e)).collect();
        keyed.sort_by(|(a, _), (b, _)| {
            a.primary
                .total_cmp(&b.primary)
                .then(a.secondary.total_cmp(&b.secondary))
                .then(a.id.cmp(&b.id))
        });
        let mut elements: Vec<LayoutElement> = keyed.into_iter().map(|(_, e)| e.clone()).collect();
        let heads: Vec<Option<i64>> = elements.iter().map(head_id).collect();
        for (i, e) in elements.iter_mut().enumerate() {
            if let LayoutElement::Block(b) = e {
                b.next = heads.get(i + 1).copied().flatten();
            }
        }
        Layout {
            elements,
            page_info: self.page_info.clone(),
        }
    }
}

fn head_id(e: &LayoutElement) -> Option<i64> {
    match e {
        LayoutElement::Block(b) => b.id,
        LayoutElement::Layout(l) => l.blocks().first().and_then(|b| b.id),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rectangle;
    use crate::layout::TextBlock;

    fn at(id: i64, cx: f64, cy: f64) -> TextBlock {
        TextBlock::new(Rectangle::new(cx - 1.0, cy - 1.0, cx + 1.0, cy + 1.0)).with_id(id)
    }

    fn ids(l: &Layout) -> Vec<i64> {
        l.blocks().iter().map(|b| b.id.unwrap()).collect()
    }

    #[test]
    fn single_block_has_no_next() {
        let l = Layout::from_blocks([at(1, 5.0, 5.0)]);
        assert_eq!(l.sort_reading_order(ReadingOrder::RowLtr), l);
    }

    #[test]
    fn columns_right_to_left() {
        let l = Layout::from_blocks([at(1, 20.0, 50.0), at(2, 80.0, 50.0)]);
        let s = l.sort_reading_order(ReadingOrder::ColumnRtl);
        assert_eq!(ids(&s), vec![2, 1]);
        assert_eq!(s.blocks()[0].next, Some(1));
        assert_eq!(s.blocks()[1].next, None);
    }

    #[test]
    fn rows_top_to_bottom() {
        let l = Layout::from_blocks([at(5, 0.0, 5.0), at(1, 0.0, 1.0), at(3, 0.0, 3.0)]);
        let s = l.sort_reading_order(ReadingOrder::RowLtr);
        assert_eq!(ids(&s), vec![1, 3, 5]);
    }

    #[test]
    fn ties_break_on_secondary_axis_then_id() {
        let l = Layout::from_blocks([at(3, 10.0, 9.0), at(2, 10.0, 1.0), at(1, 10.0, 1.0)]);
        let s = l.sort_reading_order(ReadingOrder::ColumnRtl);
        assert_eq!(ids(&s), vec![1, 2, 3]);
    }

    #[test]
    fn parses_mode_names() {
        assert_eq!("column_rtl".parse::<ReadingOrder>(), Ok(ReadingOrder::ColumnRtl));
        assert!("diagonal".parse::<ReadingOrder>().is_err());
    }
}
