use serde::{Deserialize, Serialize};

use super::region::{Extent, Region};
use super::{check_finite, check_scale, GeometryError, Padding, Point};

/// An axis-aligned box given by its top-left and bottom-right corners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRectangle", into = "RawRectangle")]
pub struct Rectangle {
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
}

#[derive(Serialize, Deserialize)]
struct RawRectangle {
    x_1: f64,
    y_1: f64,
    x_2: f64,
    y_2: f64,
}

impl TryFrom<RawRectangle> for Rectangle {
    type Error = GeometryError;

    fn try_from(r: RawRectangle) -> Result<Self, Self::Error> {
        Rectangle::try_new(r.x_1, r.y_1, r.x_2, r.y_2)
    }
}

impl From<Rectangle> for RawRectangle {
    fn from(r: Rectangle) -> Self {
        RawRectangle {
            x_1: r.x1,
            y_1: r.y1,
            x_2: r.x2,
            y_2: r.y2,
        }
    }
}

impl Rectangle {
    /// # Panics
    ///
    /// Panics on inverted corners or non-finite values. Use
    /// [`Rectangle::try_new`] for untrusted input.
    pub fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        Self::try_new(x1, y1, x2, y2).expect("invalid rectangle")
    }

    pub fn try_new(x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Self, GeometryError> {
        check_finite(&[x1, y1, x2, y2])?;
        if x1 > x2 || y1 > y2 {
            return Err(GeometryError::InvertedRectangle { x1, y1, x2, y2 });
        }
        Ok(Self { x1, y1, x2, y2 })
    }

    /// From COCO-style `(x, y, width, height)`.
    pub fn from_xywh(x: f64, y: f64, width: f64, height: f64) -> Result<Self, GeometryError> {
        Self::try_new(x, y, x + width, y + height)
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }

    pub fn width(&self) -> f64 {
        self.x2 - self.x1
    }

    pub fn height(&self) -> f64 {
        self.y2 - self.y1
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point {
        Point::new((self.x1 + self.x2) / 2.0, (self.y1 + self.y2) / 2.0)
    }

    pub fn top_left(&self) -> Point {
        Point::new(self.x1, self.y1)
    }

    /// Corners clockwise from the top-left.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x1, self.y1),
            Point::new(self.x2, self.y1),
            Point::new(self.x2, self.y2),
            Point::new(self.x1, self.y2),
        ]
    }

    pub fn contains_point(&self, p: Point) -> bool {
        p.x >= self.x1 && p.x <= self.x2 && p.y >= self.y1 && p.y <= self.y2
    }

    /// Intersection-over-union. Two zero-area boxes have IoU 0.
    pub fn iou(&self, other: &Rectangle) -> f64 {
        let inter = self.intersect(other).area();
        let union = self.area() + other.area() - inter;
        if union <= 0.0 {
            0.0
        } else {
            inter / union
        }
    }

    pub fn intersect(&self, other: &Rectangle) -> Rectangle {
        Self::from_region(&self.region().intersect(&other.region()))
    }

    pub fn enclose(&self, other: &Rectangle) -> Rectangle {
        Self::from_region(&self.region().enclose(&other.region()))
    }

    pub fn shift(&self, dx: f64, dy: f64) -> Self {
        Self {
            x1: self.x1 + dx,
            y1: self.y1 + dy,
            x2: self.x2 + dx,
            y2: self.y2 + dy,
        }
    }

    pub fn pad(&self, padding: Padding, safe_mode: bool) -> Result<Self, GeometryError> {
        let mut r = Self {
            x1: self.x1 - padding.left,
            y1: self.y1 - padding.top,
            x2: self.x2 + padding.right,
            y2: self.y2 + padding.bottom,
        };
        if r.x1 > r.x2 || r.y1 > r.y2 {
            return Err(GeometryError::PaddingInverts);
        }
        if safe_mode {
            r.x1 = r.x1.max(0.0);
            r.y1 = r.y1.max(0.0);
            r.x2 = r.x2.max(0.0);
            r.y2 = r.y2.max(0.0);
        }
        Ok(r)
    }

    pub fn scale(&self, fx: f64, fy: f64) -> Result<Self, GeometryError> {
        check_scale(fx, fy)?;
        Ok(Self {
            x1: self.x1 * fx,
            y1: self.y1 * fy,
            x2: self.x2 * fx,
            y2: self.y2 * fy,
        })
    }

    pub(crate) fn region(&self) -> Region {
        Region {
            x: Extent::new(self.x1, self.x2),
            y: Extent::new(self.y1, self.y2),
        }
    }

    /// Only valid for bounded regions.
    pub(crate) fn from_region(r: &Region) -> Rectangle {
        debug_assert!(r.x.is_bounded() && r.y.is_bounded());
        Rectangle {
            x1: r.x.lo,
            y1: r.y.lo,
            x2: r.x.hi,
            y2: r.y.hi,
        }
    }

    pub(crate) fn bounding(points: &[Point]) -> Rectangle {
        let (mut x1, mut y1) = (f64::INFINITY, f64::INFINITY);
        let (mut x2, mut y2) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            x1 = x1.min(p.x);
            y1 = y1.min(p.y);
            x2 = x2.max(p.x);
            y2 = y2.max(p.y);
        }
        Rectangle { x1, y1, x2, y2 }
    }
}
