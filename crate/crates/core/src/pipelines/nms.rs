use crate::geometry::Rectangle;
use crate::layout::{Layout, TextBlock};

/// Intersection over union, with the union taken as the sum of both areas
/// minus the overlap. Zero when both boxes are degenerate.
pub fn iou(a: &Rectangle, b: &Rectangle) -> f64 {
    a.iou(b)
}

/// Greedy non-maximum suppression over the flattened blocks of `layout`.
///
/// Blocks are visited by descending score (a missing score counts as 0,
/// ties keep input order) and kept when their IoU with every block kept so
/// far is below `iou_threshold`. Survivors are returned in input order.
/// Blocks without a finite bounding box are always kept and never suppress
/// anything.
pub fn nms_blocks(layout: &Layout, iou_threshold: f64) -> Layout {
    let blocks: Vec<&TextBlock> = layout.blocks();
    let boxes: Vec<Option<Rectangle>> = blocks.iter().map(|b| b.block.bounding_rectangle()).collect();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&i, &j| {
        let (si, sj) = (blocks[i].score.unwrap_or(0.0), blocks[j].score.unwrap_or(0.0));
        sj.total_cmp(&si)
    });
    let mut kept = vec![false; blocks.len()];
    let mut kept_boxes: Vec<Rectangle> = Vec::new();
    for i in order {
        match boxes[i] {
            None => kept[i] = true,
            Some(r) => {
                if kept_boxes.iter().all(|k| iou(&r, k) < iou_threshold) {
                    kept[i] = true;
                    kept_boxes.push(r);
                }
            }
        }
    }
    let mut out = Layout::new();
    out.page_info = layout.page_info.clone();
    for (b, k) in blocks.into_iter().zip(kept) {
        if k {
            out.push(b.clone());
        }
    }
    out
}
