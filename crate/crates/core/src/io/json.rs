//! Canonical layout JSON.
//!
//! ```json
//! {"page_info":{...}|null,
//!  "elements":[
//!    {"block_type":"rectangle","x_1":1,"y_1":2,"x_2":3,"y_2":4,"text":"hi"},
//!    {"block_type":"interval","start":0,"end":5,"axis":"vertical"},
//!    {"block_type":"quadrilateral","points":[[0,0],[4,0],[4,4],[0,4]]},
//!    {"block_type":"layout","page_info":null,"elements":[...]}
//!  ]}
//! ```
//!
//! Keys are emitted in a fixed order, optional fields are omitted when
//! absent, and coordinates are rounded to two decimals.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use super::{round_coord, IoError};
use crate::geometry::{Axis, Coordinate, GeometryError, Interval, Point, Quadrilateral, Rectangle};
use crate::layout::{Layout, LayoutElement, PageInfo, TextBlock};

#[derive(Clone, Copy)]
struct Coord(f64);

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = round_coord(self.0);
        if v.fract() == 0.0 && v.abs() < 9.0e15 {
            s.serialize_i64(v as i64)
        } else {
            s.serialize_f64(v)
        }
    }
}

#[derive(Serialize)]
struct LayoutOut<'a> {
    page_info: Option<&'a PageInfo>,
    elements: Vec<ElementOut<'a>>,
}

#[derive(Serialize)]
struct FieldsOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    text: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    category: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parent: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    next: Option<i64>,
}

#[derive(Serialize)]
#[serde(tag = "block_type", rename_all = "lowercase")]
enum ElementOut<'a> {
    Interval {
        start: Coord,
        end: Coord,
        axis: Axis,
        #[serde(skip_serializing_if = "Option::is_none")]
        canvas_width: Option<Coord>,
        #[serde(skip_serializing_if = "Option::is_none")]
        canvas_height: Option<Coord>,
        #[serde(flatten)]
        fields: FieldsOut<'a>,
    },
    Rectangle {
        x_1: Coord,
        y_1: Coord,
        x_2: Coord,
        y_2: Coord,
        #[serde(flatten)]
        fields: FieldsOut<'a>,
    },
    Quadrilateral {
        points: [[Coord; 2]; 4],
        #[serde(flatten)]
        fields: FieldsOut<'a>,
    },
    Layout(LayoutOut<'a>),
}

fn layout_out(layout: &Layout) -> LayoutOut<'_> {
    LayoutOut {
        page_info: layout.page_info.as_ref(),
        elements: layout.elements.iter().map(element_out).collect(),
    }
}

fn element_out(e: &LayoutElement) -> ElementOut<'_> {
    let b = match e {
        LayoutElement::Layout(l) => return ElementOut::Layout(layout_out(l)),
        LayoutElement::Block(b) => b,
    };
    let fields = FieldsOut {
        text: b.text.as_deref(),
        category: b.category.as_deref(),
        score: b.score,
        id: b.id,
        parent: b.parent,
        next: b.next,
    };
    match &b.block {
        Coordinate::Interval(i) => ElementOut::Interval {
            start: Coord(i.start()),
            end: Coord(i.end()),
            axis: i.axis(),
            canvas_width: i.canvas_width().map(Coord),
            canvas_height: i.canvas_height().map(Coord),
            fields,
        },
        Coordinate::Rectangle(r) => ElementOut::Rectangle {
            x_1: Coord(r.x1()),
            y_1: Coord(r.y1()),
            x_2: Coord(r.x2()),
            y_2: Coord(r.y2()),
            fields,
        },
        Coordinate::Quadrilateral(q) => ElementOut::Quadrilateral {
            points: q.points().map(|p| [Coord(p.x), Coord(p.y)]),
            fields,
        },
    }
}

pub fn export_json(layout: &Layout) -> Vec<u8> {
    serde_json::to_vec(&layout_out(layout)).expect("layout serialization cannot fail")
}

#[derive(Deserialize)]
struct LayoutIn {
    #[serde(default)]
    page_info: Option<PageInfo>,
    elements: Vec<Value>,
}

#[derive(Deserialize)]
struct FieldsIn {
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    category: Option<String>,
    #[serde(default)]
    score: Option<f64>,
    #[serde(default)]
    id: Option<i64>,
    #[serde(default)]
    parent: Option<i64>,
    #[serde(default)]
    next: Option<i64>,
}

#[derive(Deserialize)]
#[serde(tag = "block_type", rename_all = "lowercase")]
enum ElementIn {
    Interval {
        start: f64,
        end: f64,
        axis: Axis,
        #[serde(default)]
        canvas_width: Option<f64>,
        #[serde(default)]
        canvas_height: Option<f64>,
        #[serde(flatten)]
        fields: FieldsIn,
    },
    Rectangle {
        x_1: f64,
        y_1: f64,
        x_2: f64,
        y_2: f64,
        #[serde(flatten)]
        fields: FieldsIn,
    },
    Quadrilateral {
        points: [[f64; 2]; 4],
        #[serde(flatten)]
        fields: FieldsIn,
    },
    Layout(LayoutIn),
}

/// Parses layout JSON. Errors name the offending element by its path, e.g.
/// `elements[2].elements[0]`.
pub fn load_json(data: &[u8]) -> Result<Layout, IoError> {
    let root: LayoutIn = serde_json::from_slice(data)?;
    parse_layout(root, "")
}

fn parse_layout(raw: LayoutIn, prefix: &str) -> Result<Layout, IoError> {
    let mut layout = Layout {
        elements: Vec::with_capacity(raw.elements.len()),
        page_info: raw.page_info,
    };
    for (i, value) in raw.elements.into_iter().enumerate() {
        let path = format!("{prefix}elements[{i}]");
        let element: ElementIn = serde_json::from_value(value).map_err(|e| IoError::Element {
            path: path.clone(),
            message: e.to_string(),
        })?;
        let element = parse_element(element).map_err(|message| IoError::Element {
            path: path.clone(),
            message,
        })?;
        layout.elements.push(match element {
            Parsed::Block(b) => LayoutElement::Block(b),
            Parsed::Nested(l) => LayoutElement::Layout(parse_layout(l, &format!("{path}."))?),
        });
    }
    Ok(layout)
}

enum Parsed {
    Block(TextBlock),
    Nested(LayoutIn),
}

fn parse_element(e: ElementIn) -> Result<Parsed, String> {
    let geo = |r: Result<Coordinate, GeometryError>| r.map_err(|e| e.to_string());
    let (block, fields) = match e {
        ElementIn::Layout(l) => return Ok(Parsed::Nested(l)),
        ElementIn::Interval {
            start,
            end,
            axis,
            canvas_width,
            canvas_height,
            fields,
        } => (
            geo(Interval::try_new(start, end, axis)
                .and_then(|i| i.with_canvas(canvas_width, canvas_height))
                .map(Coordinate::from))?,
            fields,
        ),
        ElementIn::Rectangle {
            x_1,
            y_1,
            x_2,
            y_2,
            fields,
        } => (geo(Rectangle::try_new(x_1, y_1, x_2, y_2).map(Coordinate::from))?, fields),
        ElementIn::Quadrilateral { points, fields } => (
            geo(Quadrilateral::try_new(points.map(|[x, y]| Point::new(x, y))).map(Coordinate::from))?,
            fields,
        ),
    };
    if let Some(score) = fields.score {
        if !(0.0..=1.0).contains(&score) {
            return Err(format!("score {score} outside [0, 1]"));
        }
    }
    Ok(Parsed::Block(TextBlock {
        block,
        text: fields.text,
        category: fields.category,
        score: fields.score,
        id: fields.id,
        parent: fields.parent,
        next: fields.next,
    }))
}
