use crate::geometry::{Coordinate, Padding};

use super::LayoutError;

/// A coordinate plus the extra features of one layout element.
#[derive(Debug, Clone, PartialEq)]
pub struct TextBlock {
    pub block: Coordinate,
    pub text: Option<String>,
    pub category: Option<String>,
    /// Detection or recognition confidence in `[0, 1]`.
    pub score: Option<f64>,
    pub id: Option<i64>,
    /// Id of the enclosing block.
    pub parent: Option<i64>,
    /// Id of the block that follows in reading order.
    pub next: Option<i64>,
}

impl TextBlock {
    pub fn new(block: impl Into<Coordinate>) -> Self {
        Self {
            block: block.into(),
            text: None,
            category: None,
            score: None,
            id: None,
            parent: None,
            next: None,
        }
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    pub fn with_category(mut self, category: impl Into<String>) -> Self {
        self.category = Some(category.into());
        self
    }

    pub fn with_score(mut self, score: f64) -> Self {
        self.score = Some(score);
        self
    }

    pub fn with_id(mut self, id: i64) -> Self {
        self.id = Some(id);
        self
    }

    pub fn with_parent(mut self, parent: i64) -> Self {
        self.parent = Some(parent);
        self
    }

    pub fn with_next(mut self, next: i64) -> Self {
        self.next = Some(next);
        self
    }

    /// Same block with a different coordinate.
    pub fn with_block(&self, block: impl Into<Coordinate>) -> Self {
        Self {
            block: block.into(),
            ..self.clone()
        }
    }

    pub fn apply(&self, transform: &Transform) -> Result<TextBlock, LayoutError> {
        Ok(self.with_block(transform.apply(&self.block)?))
    }
}

/// A positional transform applicable to whole layouts.
#[derive(Debug, Clone, PartialEq)]
pub enum Transform {
    Shift { dx: f64, dy: f64 },
    Pad { padding: Padding, safe_mode: bool },
    Scale { fx: f64, fy: f64 },
    RelativeTo(Coordinate),
    ConditionOn(Coordinate),
}

impl Transform {
    pub fn apply(&self, c: &Coordinate) -> Result<Coordinate, LayoutError> {
        Ok(match self {
            Transform::Shift { dx, dy } => c.shift(*dx, *dy),
            Transform::Pad { padding, safe_mode } => c.pad(*padding, *safe_mode)?,
            Transform::Scale { fx, fy } => c.scale(*fx, *fy)?,
            Transform::RelativeTo(base) => c.relative_to(base),
            Transform::ConditionOn(base) => c.condition_on(base),
        })
    }
}
