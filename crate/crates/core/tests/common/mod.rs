//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use layoutkit::geometry::{Axis, Coordinate, CoordinateKind, Interval, Point, Quadrilateral, Rectangle};
use layoutkit::layout::{Layout, PageInfo, TextBlock};
use proptest::prelude::*;
use rand::Rng;

pub const KINDS: [CoordinateKind; 3] = [
    CoordinateKind::Interval,
    CoordinateKind::Rectangle,
    CoordinateKind::Quadrilateral,
];

/// Page size attached to generated intervals so every block is bounded.
pub const CANVAS: f64 = 120.0;

fn span(rng: &mut impl Rng, limit: i32) -> (f64, f64) {
    let a = rng.gen_range(0..limit);
    let b = rng.gen_range(a + 1..=limit);
    (f64::from(a), f64::from(b))
}

/// An integer-valued block of the given kind inside a `CANVAS`-sized page.
///
/// Quadrilaterals are rectangles with corners pulled inward, which keeps
/// them simple polygons.
pub fn random_block(rng: &mut impl Rng, kind: CoordinateKind) -> Coordinate {
    let limit = CANVAS as i32 - 20;
    match kind {
        CoordinateKind::Interval => {
            let (a, b) = span(rng, limit);
            let axis = if rng.gen_bool(0.5) { Axis::Horizontal } else { Axis::Vertical };
            Interval::new(a, b, axis)
                .with_canvas(Some(CANVAS), Some(CANVAS))
                .unwrap()
                .into()
        }
        CoordinateKind::Rectangle => {
            let ((x1, x2), (y1, y2)) = (span(rng, limit), span(rng, limit));
            Rectangle::new(x1, y1, x2, y2).into()
        }
        CoordinateKind::Quadrilateral => {
            let ((x1, x2), (y1, y2)) = (span(rng, limit), span(rng, limit));
            let jx = ((x2 - x1) / 4.0).floor() as i32;
            let jy = ((y2 - y1) / 4.0).floor() as i32;
            let mut j = |m: i32| f64::from(rng.gen_range(0..=m));
            Quadrilateral::new([
                Point::new(x1 + j(jx), y1 + j(jy)),
                Point::new(x2 - j(jx), y1 + j(jy)),
                Point::new(x2 - j(jx), y2 - j(jy)),
                Point::new(x1 + j(jx), y2 - j(jy)),
            ])
            .into()
        }
    }
}

/// Number of unit pixel cells shared by two integer rectangles.
pub fn shared_cells(a: &Rectangle, b: &Rectangle) -> usize {
    let inside = |r: &Rectangle, x: usize, y: usize| {
        let (x, y) = (x as f64, y as f64);
        x >= r.x1() && x + 1.0 <= r.x2() && y >= r.y1() && y + 1.0 <= r.y2()
    };
    let mut n = 0;
    for y in 0..64 {
        for x in 0..64 {
            if inside(a, x, y) && inside(b, x, y) {
                n += 1;
            }
        }
    }
    n
}

/// The unique subset `S` in which every box is kept exactly when it does
/// not overlap a higher-priority member of `S`, found by trying every
/// subset. Priority is descending score, ties by index.
pub fn nms_oracle(boxes: &[Rectangle], scores: &[f64], threshold: f64) -> Vec<usize> {
    let n = boxes.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| scores[j].total_cmp(&scores[i]).then(i.cmp(&j)));
    let rank: Vec<usize> = {
        let mut r = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            r[i] = pos;
        }
        r
    };
    let mut found = Vec::new();
    for mask in 0u32..(1 << n) {
        let member = |i: usize| mask & (1 << i) != 0;
        let consistent = (0..n).all(|i| {
            let blocked = (0..n).any(|j| member(j) && rank[j] < rank[i] && boxes[i].iou(&boxes[j]) >= threshold);
            member(i) == !blocked
        });
        if consistent {
            found.push((0..n).filter(|&i| member(i)).collect::<Vec<_>>());
        }
    }
    assert_eq!(found.len(), 1, "suppression fixed point must be unique");
    found.pop().unwrap()
}

pub fn levenshtein_oracle(a: &[char], b: &[char]) -> usize {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.len(),
        (_, None) => a.len(),
        (Some((ca, ra)), Some((cb, rb))) => {
            let substitute = levenshtein_oracle(ra, rb) + usize::from(ca != cb);
            let delete = levenshtein_oracle(ra, b) + 1;
            let insert = levenshtein_oracle(a, rb) + 1;
            substitute.min(delete).min(insert)
        }
    }
}

pub fn jaccard_oracle(a: &str, b: &str) -> f64 {
    let count = |s: &str| {
        let mut m: BTreeMap<char, usize> = BTreeMap::new();
        for c in s.chars() {
            *m.entry(c).or_default() += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let keys: std::collections::BTreeSet<char> = ca.keys().chain(cb.keys()).copied().collect();
    let (mut inter, mut union) = (0usize, 0usize);
    for k in keys {
        let (x, y) = (ca.get(&k).copied().unwrap_or(0), cb.get(&k).copied().unwrap_or(0));
        inter += x.min(y);
        union += x.max(y);
    }
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

/// All strings over `alphabet` up to `max_len` characters, shortest first.
pub fn all_strings(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|s| alphabet.iter().map(move |c| format!("{s}{c}")))
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

// proptest strategies

/// Values on a 0.01 grid, which survive JSON's two-decimal rounding.
pub fn cents(lo: i32, hi: i32) -> impl Strategy<Value = f64> {
    (lo * 100..=hi * 100).prop_map(|v| f64::from(v) / 100.0)
}

fn hundredths(v: i32) -> f64 {
    f64::from(v) / 100.0
}

pub fn rectangle() -> impl Strategy<Value = Rectangle> {
    (0..50_000, 0..50_000, 0..20_000, 0..20_000)
        .prop_map(|(x, y, w, h)| Rectangle::new(hundredths(x), hundredths(y), hundredths(x + w), hundredths(y + h)))
}

pub fn integer_rectangle() -> impl Strategy<Value = Rectangle> {
    (0i32..100, 0i32..100, 1i32..60, 1i32..60).prop_map(|(x, y, w, h)| {
        Rectangle::new(f64::from(x), f64::from(y), f64::from(x + w), f64::from(y + h))
    })
}

pub fn interval() -> impl Strategy<Value = Interval> {
    (
        0..50_000,
        0..20_000,
        prop_oneof![Just(Axis::Horizontal), Just(Axis::Vertical)],
        proptest::option::of(cents(1, 900)),
        proptest::option::of(cents(1, 900)),
    )
        .prop_map(|(s, len, axis, w, h)| {
            Interval::new(hundredths(s), hundredths(s + len), axis)
                .with_canvas(w, h)
                .unwrap()
        })
}

pub fn quadrilateral() -> impl Strategy<Value = Quadrilateral> {
    (rectangle(), proptest::array::uniform8(0.0f64..0.25)).prop_map(|(r, j)| {
        let q = |v: f64| (v * 100.0).round() / 100.0;
        let (w, h) = (r.width(), r.height());
        Quadrilateral::new([
            Point::new(q(r.x1() + j[0] * w), q(r.y1() + j[1] * h)),
            Point::new(q(r.x2() - j[2] * w), q(r.y1() + j[3] * h)),
            Point::new(q(r.x2() - j[4] * w), q(r.y2() - j[5] * h)),
            Point::new(q(r.x1() + j[6] * w), q(r.y2() - j[7] * h)),
        ])
    })
}

pub fn coordinate() -> impl Strategy<Value = Coordinate> {
    prop_oneof![
        interval().prop_map(Coordinate::from),
        rectangle().prop_map(Coordinate::from),
        quadrilateral().prop_map(Coordinate::from),
    ]
}

pub fn text_block() -> impl Strategy<Value = TextBlock> {
    (
        coordinate(),
        proptest::option::of("\\PC{0,12}"),
        proptest::option::of(prop_oneof![Just("text"), Just("title"), Just("table"), Just("figure")]),
        proptest::option::of(cents(0, 1)),
        proptest::option::of(0i64..1000),
        proptest::option::of(0i64..1000),
        proptest::option::of(0i64..1000),
    )
        .prop_map(|(block, text, category, score, id, parent, next)| TextBlock {
            block,
            text,
            category: category.map(str::to_string),
            score,
            id,
            parent,
            next,
        })
}

pub fn page_info() -> impl Strategy<Value = PageInfo> {
    (
        proptest::option::of("[a-z0-9_]{1,10}\\.png"),
        proptest::option::of(1u32..500),
        proptest::option::of(cents(1, 3000)),
        proptest::option::of(cents(1, 3000)),
    )
        .prop_map(|(file_name, page_number, width, height)| PageInfo {
            file_name,
            page_number,
            width,
            height,
        })
}

pub fn flat_layout() -> impl Strategy<Value = Layout> {
    (proptest::collection::vec(text_block(), 0..12), proptest::option::of(page_info())).prop_map(
        |(blocks, info)| {
            let mut l = Layout::from_blocks(blocks);
            l.page_info = info;
            l
        },
    )
}

/// Layouts with up to two levels of nested child layouts.
pub fn nested_layout() -> impl Strategy<Value = Layout> {
    flat_layout().prop_recursive(2, 24, 3, |inner| {
        (flat_layout(), proptest::collection::vec((inner, 0usize..20), 0..3)).prop_map(|(mut outer, children)| {
            for (child, at) in children {
                let at = at.min(outer.elements.len());
                outer.elements.insert(at, child.into());
            }
            outer
        })
    })
}

/// The recursive edit-distance definition evaluated over every pair of
/// strings in a suffix-closed set, memoised by string index.
pub struct LevenshteinTable {
    pub strings: Vec<Vec<char>>,
    tail: Vec<usize>,
    memo: Vec<u8>,
}

impl LevenshteinTable {
    pub fn new(alphabet: &[char], max_len: usize) -> Self {
        let strings: Vec<Vec<char>> = all_strings(alphabet, max_len).iter().map(|s| s.chars().collect()).collect();
        let index: std::collections::HashMap<&[char], usize> =
            strings.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let tail = strings.iter().map(|s| if s.is_empty() { 0 } else { index[&s[1..]] }).collect();
        let n = strings.len();
        Self {
            tail,
            memo: vec![u8::MAX; n * n],
            strings,
        }
    }

    pub fn distance(&mut self, a: usize, b: usize) -> usize {
        let n = self.strings.len();
        if self.memo[a * n + b] != u8::MAX {
            return usize::from(self.memo[a * n + b]);
        }
        let (sa, sb) = (&self.strings[a], &self.strings[b]);
        let d = if sa.is_empty() {
            sb.len()
        } else if sb.is_empty() {
            sa.len()
        } else {
            let differ = usize::from(sa[0] != sb[0]);
            let (ta, tb) = (self.tail[a], self.tail[b]);
            (self.distance(ta, tb) + differ)
                .min(self.distance(ta, b) + 1)
                .min(self.distance(a, tb) + 1)
        };
        self.memo[a * n + b] = d as u8;
        d
    }
}
