//! Text blocks and (possibly nested) layouts built on top of the coordinate
//! types, with batch transforms and reading-order utilities.

mod block;
mod order;

pub use block::{TextBlock, Transform};
pub use order::ReadingOrder;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Coordinate, GeometryError, Rectangle};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LayoutError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("duplicate block id {0}")]
    DuplicateId(i64),
    #[error("block {id:?} references missing parent {parent}")]
    DanglingParent { id: Option<i64>, parent: i64 },
    #[error("block {id:?} references missing next block {next}")]
    DanglingNext { id: Option<i64>, next: i64 },
    #[error("parent references form a cycle through block {0}")]
    ParentCycle(i64),
    #[error("block {id:?} has score {score} outside [0, 1]")]
    ScoreOutOfRange { id: Option<i64>, score: f64 },
}

/// Page-level metadata attached to a layout.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PageInfo {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub page_number: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LayoutElement {
    Block(TextBlock),
    Layout(Layout),
}

impl From<TextBlock> for LayoutElement {
    fn from(b: TextBlock) -> Self {
        LayoutElement::Block(b)
    }
}

impl From<Layout> for LayoutElement {
    fn from(l: Layout) -> Self {
        LayoutElement::Layout(l)
    }
}

/// An ordered collection of text blocks and nested layouts.
///
/// List order is the canonical reading order. Nested layouts keep absolute
/// page coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Layout {
    pub elements: Vec<LayoutElement>,
    pub page_info: Option<PageInfo>,
}

impl FromIterator<TextBlock> for Layout {
    fn from_iter<T: IntoIterator<Item = TextBlock>>(iter: T) -> Self {
        Layout::from_blocks(iter)
    }
}

impl Layout {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = TextBlock>) -> Self {
        Self {
            elements: blocks.into_iter().map(LayoutElement::Block).collect(),
            page_info: None,
        }
    }

    pub fn with_page_info(mut self, info: PageInfo) -> Self {
        self.page_info = Some(info);
        self
    }

    pub fn push(&mut self, element: impl Into<LayoutElement>) {
        self.elements.push(element.into());
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All text blocks, depth-first in element order.
    pub fn blocks(&self) -> Vec<&TextBlock> {
        let mut out = Vec::new();
        self.collect_blocks(&mut out);
        out
    }

    fn collect_blocks<'a>(&'a self, out: &mut Vec<&'a TextBlock>) {
        for e in &self.elements {
            match e {
                LayoutElement::Block(b) => out.push(b),
                LayoutElement::Layout(l) => l.collect_blocks(out),
            }
        }
    }

    /// Depth-first flattening into a single-level layout.
    pub fn flatten(&self) -> Layout {
        Layout {
            elements: self.blocks().into_iter().cloned().map(LayoutElement::Block).collect(),
            page_info: self.page_info.clone(),
        }
    }

    /// Bounding box of every bounded block in the layout.
    pub fn bounding_rectangle(&self) -> Option<Rectangle> {
        self.blocks()
            .iter()
            .filter_map(|b| b.block.bounding_rectangle())
            .reduce(|a, b| a.enclose(&b))
    }

    /// Applies a positional transform to every block, recursively.
    pub fn apply(&self, transform: &Transform) -> Result<Layout, LayoutError> {
        let elements = self
            .elements
            .iter()
            .map(|e| {
                Ok(match e {
                    LayoutElement::Block(b) => LayoutElement::Block(b.apply(transform)?),
                    LayoutElement::Layout(l) => LayoutElement::Layout(l.apply(transform)?),
                })
            })
            .collect::<Result<_, LayoutError>>()?;
        Ok(Layout {
            elements,
            page_info: self.page_info.clone(),
        })
    }

    /// Keeps blocks matching `predicate` in order. Nested layouts are
    /// filtered recursively and dropped once empty.
    pub fn filter(&self, predicate: impl Fn(&TextBlock) -> bool) -> Layout {
        self.filter_with(&predicate)
    }

    fn filter_with(&self, predicate: &dyn Fn(&TextBlock) -> bool) -> Layout {
        let elements = self
            .elements
            .iter()
            .filter_map(|e| match e {
                LayoutElement::Block(b) => predicate(b).then(|| LayoutElement::Block(b.clone())),
                LayoutElement::Layout(l) => {
                    let f = l.filter_with(predicate);
                    (!f.is_empty()).then_some(LayoutElement::Layout(f))
                }
            })
            .collect();
        Layout {
            elements,
            page_info: self.page_info.clone(),
        }
    }

    /// Texts of all blocks, depth-first, skipping blocks without text.
    pub fn get_texts(&self) -> Vec<String> {
        self.blocks().into_iter().filter_map(|b| b.text.clone()).collect()
    }

    /// Checks id uniqueness, reference integrity and score ranges across the
    /// whole tree.
    pub fn validate(&self) -> Result<(), LayoutError> {
        let blocks = self.blocks();
        let mut ids = BTreeSet::new();
        for b in &blocks {
            if let Some(id) = b.id {
                if !ids.insert(id) {
                    return Err(LayoutError::DuplicateId(id));
                }
            }
            if let Some(score) = b.score {
                if !(0.0..=1.0).contains(&score) {
                    return Err(LayoutError::ScoreOutOfRange { id: b.id, score });
                }
            }
        }
        for b in &blocks {
            if let Some(parent) = b.parent {
                if !ids.contains(&parent) {
                    return Err(LayoutError::DanglingParent { id: b.id, parent });
                }
            }
            if let Some(next) = b.next {
                if !ids.contains(&next) {
                    return Err(LayoutError::DanglingNext { id: b.id, next });
                }
            }
        }
        Ok(())
    }

    /// Regroups the flattened blocks by their `parent` field.
    ///
    /// Every block that is the parent of at least one other block becomes a
    /// nested layout whose first element is the parent itself, followed by
    /// its children in original order. Blocks without a parent stay at the
    /// top level. Coordinates are left untouched.
    pub fn group_by_parent(&self) -> Result<Layout, LayoutError> {
        let blocks = self.blocks();
        if blocks.iter().all(|b| b.parent.is_none()) {
            return Ok(self.clone());
        }
        let by_id: HashMap<i64, usize> = blocks
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.id.map(|id| (id, i)))
            .collect();
        let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut roots = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            match b.parent {
                None => roots.push(i),
                Some(p) => {
                    let &pi = by_id
                        .get(&p)
                        .ok_or(LayoutError::DanglingParent { id: b.id, parent: p })?;
                    children.entry(pi).or_default().push(i);
                }
            }
        }
        // every block must be reachable from a root, otherwise the parent
        // links contain a cycle
        let mut reached = vec![false; blocks.len()];
        let mut stack = roots.clone();
        while let Some(i) = stack.pop() {
            reached[i] = true;
            if let Some(c) = children.get(&i) {
                stack.extend(c);
            }
        }
        if let Some(i) = reached.iter().position(|r| !r) {
            return Err(LayoutError::ParentCycle(blocks[i].id.unwrap_or_default()));
        }

        fn build(i: usize, blocks: &[&TextBlock], children: &BTreeMap<usize, Vec<usize>>) -> LayoutElement {
            match children.get(&i) {
                None => LayoutElement::Block(blocks[i].clone()),
                Some(kids) => {
                    let mut elements = vec![LayoutElement::Block(blocks[i].clone())];
                    elements.extend(kids.iter().map(|&k| build(k, blocks, children)));
                    LayoutElement::Layout(Layout {
                        elements,
                        page_info: None,
                    })
                }
            }
        }

        Ok(Layout {
            elements: roots.iter().map(|&r| build(r, &blocks, &children)).collect(),
            page_info: self.page_info.clone(),
        })
    }
}

/// Center of an element's bounding box; nested layouts use the box around
/// all of their blocks.
pub(crate) fn element_bounds(e: &LayoutElement) -> Option<Coordinate> {
    match e {
        LayoutElement::Block(b) => Some(b.block),
        LayoutElement::Layout(l) => l.bounding_rectangle().map(Coordinate::Rectangle),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rectangle;

    fn block(id: i64, x: f64, y: f64) -> TextBlock {
        TextBlock::new(Rectangle::new(x, y, x + 10.0, y + 10.0)).with_id(id)
    }

    fn sample() -> Layout {
        Layout::from_blocks([
            block(1, 0.0, 0.0).with_text("a").with_score(0.95).with_category("Text"),
            block(2, 20.0, 0.0).with_score(0.5).with_category("Table"),
            block(3, 40.0, 0.0).with_text("c").with_score(0.91).with_category("Table"),
        ])
    }

    #[test]
    fn apply_on_empty_and_identity() {
        let t = Transform::Scale { fx: 2.0, fy: 2.0 };
        assert_eq!(Layout::new().apply(&t).unwrap(), Layout::new());
        let l = sample();
        assert_eq!(l.apply(&Transform::Shift { dx: 0.0, dy: 0.0 }).unwrap(), l);
    }

    #[test]
    fn apply_scale_elementwise() {
        let l = sample();
        let s = l.apply(&Transform::Scale { fx: 2.0, fy: 2.0 }).unwrap();
        for (a, b) in l.blocks().iter().zip(s.blocks()) {
            assert_eq!(b.block, a.block.scale(2.0, 2.0).unwrap());
            assert_eq!((&a.text, a.score, a.id), (&b.text, b.score, b.id));
        }
    }

    #[test]
    fn apply_propagates_errors() {
        let r = sample().apply(&Transform::Scale { fx: -1.0, fy: 1.0 });
        assert!(matches!(r, Err(LayoutError::Geometry(_))));
    }

    #[test]
    fn filter_by_score_and_category() {
        let l = sample();
        assert_eq!(l.filter(|_| true), l);
        let high = l.filter(|b| b.score.is_some_and(|s| s >= 0.9));
        assert_eq!(high.len(), 2);
        let tables = l.filter(|b| b.category.as_deref() == Some("Table"));
        assert_eq!(
            tables.blocks().iter().map(|b| b.id).collect::<Vec<_>>(),
            vec![Some(2), Some(3)]
        );
    }

    #[test]
    fn filter_drops_empty_nested_layouts() {
        let mut l = sample();
        l.push(Layout::from_blocks([block(9, 0.0, 50.0).with_score(0.1)]));
        let f = l.filter(|b| b.score.is_some_and(|s| s >= 0.9));
        assert!(f.elements.iter().all(|e| matches!(e, LayoutElement::Block(_))));
    }

    #[test]
    fn texts_flatten_depth_first() {
        assert!(Layout::new().get_texts().is_empty());
        let mut l = Layout::from_blocks([block(1, 0.0, 0.0).with_text("a")]);
        l.push(Layout::from_blocks([
            block(2, 0.0, 0.0).with_text("b"),
            block(3, 0.0, 0.0).with_text("c"),
        ]));
        l.push(block(4, 0.0, 0.0).with_text("d"));
        assert_eq!(l.get_texts(), ["a", "b", "c", "d"]);
    }

    #[test]
    fn group_by_parent_nests_children() {
        let l = Layout::from_blocks([
            block(10, 0.0, 0.0).with_category("column"),
            block(11, 50.0, 0.0).with_category("column"),
            block(1, 0.0, 1.0).with_parent(10),
            block(2, 0.0, 2.0).with_parent(10),
            block(3, 50.0, 1.0).with_parent(11),
            block(4, 90.0, 90.0),
        ]);
        let g = l.group_by_parent().unwrap();
        assert_eq!(g.len(), 3);
        let ids = |e: &LayoutElement| match e {
            LayoutElement::Layout(l) => l.blocks().iter().map(|b| b.id.unwrap()).collect(),
            LayoutElement::Block(b) => vec![b.id.unwrap()],
        };
        assert_eq!(ids(&g.elements[0]), vec![10, 1, 2]);
        assert_eq!(ids(&g.elements[1]), vec![11, 3]);
        assert_eq!(ids(&g.elements[2]), vec![4]);
    }

    #[test]
    fn group_by_parent_without_parents_is_identity() {
        let l = sample();
        assert_eq!(l.group_by_parent().unwrap(), l);
    }

    #[test]
    fn group_by_parent_rejects_dangling_and_cycles() {
        let l = Layout::from_blocks([block(1, 0.0, 0.0).with_parent(7)]);
        assert!(matches!(l.group_by_parent(), Err(LayoutError::DanglingParent { .. })));
        let l = Layout::from_blocks([block(1, 0.0, 0.0).with_parent(2), block(2, 0.0, 0.0).with_parent(1)]);
        assert!(matches!(l.group_by_parent(), Err(LayoutError::ParentCycle(_))));
    }

    #[test]
    fn validate_catches_bad_references() {
        assert!(sample().validate().is_ok());
        let dup = Layout::from_blocks([block(1, 0.0, 0.0), block(1, 5.0, 0.0)]);
        assert_eq!(dup.validate(), Err(LayoutError::DuplicateId(1)));
        let next = Layout::from_blocks([block(1, 0.0, 0.0).with_next(3)]);
        assert!(matches!(next.validate(), Err(LayoutError::DanglingNext { .. })));
        let mut bad = block(1, 0.0, 0.0);
        bad.score = Some(1.5);
        assert!(matches!(
            Layout::from_blocks([bad]).validate(),
            Err(LayoutError::ScoreOutOfRange { .. })
        ));
    }
}
