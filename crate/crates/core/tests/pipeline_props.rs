mod common;

use common::*;
use layoutkit::geometry::{Rectangle, RasterImage};
use layoutkit::layout::{Layout, TextBlock};
use layoutkit::pipelines::{cluster_rows, iou, nms_blocks, plan_reorganization, remap_ocr_results, suppress_close_rows};
use layoutkit::viz::{draw_boxes, DrawStyle};
use proptest::prelude::*;

fn scored_boxes(max: usize) -> impl Strategy<Value = Layout> {
    proptest::collection::vec((integer_rectangle(), cents(0, 1)), 0..max)
        .prop_map(|v| v.into_iter().map(|(r, s)| TextBlock::new(r).with_score(s)).collect())
}

fn tokens() -> impl Strategy<Value = Layout> {
    proptest::collection::vec((0i32..800, 0i32..800, 1i32..120, 1i32..60), 0..40).prop_map(|v| {
        v.into_iter()
            .map(|(x, y, w, h)| {
                TextBlock::new(Rectangle::new(f64::from(x), f64::from(y), f64::from(x + w), f64::from(y + h)))
            })
            .collect()
    })
}

fn overlap_area(a: &Rectangle, b: &Rectangle) -> f64 {
    let w = (a.x2().min(b.x2()) - a.x1().max(b.x1())).max(0.0);
    let h = (a.y2().min(b.y2()) - a.y1().max(b.y1())).max(0.0);
    w * h
}

proptest! {
    #[test]
    fn nms_survivors_overlap_less_than_threshold(layout in scored_boxes(30), t in 0.05f64..0.95) {
        let kept = nms_blocks(&layout, t);
        let boxes: Vec<Rectangle> = kept.blocks().iter().map(|b| b.block.bounding_rectangle().unwrap()).collect();
        for (i, a) in boxes.iter().enumerate() {
            for b in &boxes[i + 1..] {
                prop_assert!(iou(a, b) < t);
            }
        }
        let best = layout.blocks().iter().map(|b| b.score.unwrap()).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(layout.is_empty() || kept.blocks().iter().any(|b| b.score == Some(best)));
    }

    #[test]
    fn reorg_plan_invariants(layout in tokens(), max_height in 8.0f64..40.0, gap in 0.0f64..8.0) {
        let plan = plan_reorganization(&layout, max_height, gap, 400.0).unwrap();
        prop_assert_eq!(plan.placements.len(), layout.len());
        let mut seen: Vec<usize> = plan.placements.iter().map(|p| p.token_index).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..layout.len()).collect::<Vec<_>>());
        for (i, p) in plan.placements.iter().enumerate() {
            let t = p.target;
            prop_assert!(t.x1() >= 0.0 && t.y1() >= 0.0 && t.x2() <= plan.canvas_width && t.y2() <= plan.canvas_height);
            prop_assert!(t.height() <= max_height + 1e-9);
            for q in &plan.placements[i + 1..] {
                prop_assert_eq!(overlap_area(&t, &q.target), 0.0);
            }
        }
    }

    #[test]
    fn remapping_targets_recovers_sources(layout in tokens(), max_height in 8.0f64..40.0) {
        let plan = plan_reorganization(&layout, max_height, 4.0, 400.0).unwrap();
        let ocr: Layout = plan.placements.iter().map(|p| TextBlock::new(p.target)).collect();
        let back = remap_ocr_results(&plan, &ocr);
        prop_assert_eq!(back.dropped, 0);
        for (p, b) in plan.placements.iter().zip(back.layout.blocks()) {
            let r = b.block.bounding_rectangle().unwrap();
            let s = p.source;
            for (u, v) in [(r.x1(), s.x1()), (r.y1(), s.y1()), (r.x2(), s.x2()), (r.y2(), s.y2())] {
                prop_assert!((u - v).abs() <= 1.0, "{:?} vs {:?}", r, s);
            }
        }
    }

    #[test]
    fn row_gaps_respect_the_minimum(layout in tokens(), gap in 1.0f64..30.0, min_gap in 0.0f64..10.0) {
        let bands = suppress_close_rows(&cluster_rows(&layout, gap), min_gap);
        for w in bands.windows(2) {
            prop_assert!(w[1].top - w[0].bottom >= min_gap);
        }
        for b in layout.blocks() {
            let c = b.block.center().y;
            prop_assert!(bands.iter().any(|band| band.top <= c && c <= band.bottom));
        }
    }

    #[test]
    fn thin_unlabelled_boxes_leave_interiors_alone(layout in scored_boxes(6)) {
        let (w, h) = (160u32, 160u32);
        let pixels: Vec<u8> = (0..w * h * 3).map(|i| (i * 7 % 256) as u8).collect();
        let page = RasterImage::from_raw(w, h, pixels).unwrap();
        let style = DrawStyle { box_width: 1, show_labels: false, ..DrawStyle::default() };
        let out = draw_boxes(&page, &layout, &style);
        let boxes: Vec<Rectangle> = layout.blocks().iter().map(|b| b.block.bounding_rectangle().unwrap()).collect();
        for y in 0..h {
            for x in 0..w {
                let (px, py) = (f64::from(x), f64::from(y));
                let strictly_inside_all = boxes.iter().any(|r| px > r.x1() && px < r.x2() && py > r.y1() && py < r.y2());
                let on_any_edge = boxes.iter().any(|r| {
                    let within_x = px >= r.x1() && px <= r.x2();
                    let within_y = py >= r.y1() && py <= r.y2();
                    (within_y && (px == r.x1() || px == r.x2())) || (within_x && (py == r.y1() || py == r.y2()))
                });
                if strictly_inside_all && !on_any_edge {
                    prop_assert_eq!(out.pixel(x, y), page.pixel(x, y));
                }
            }
        }
    }
}
