use super::region::Region;
use super::{check_finite, check_scale, GeometryError, Padding, Point, Rectangle};

/// A four-corner region for skewed or warped content.
///
/// Points are expected clockwise from the top-left corner (in image
/// coordinates, y pointing down). The polygon must be simple; degenerate
/// (zero-area) quadrilaterals are accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrilateral {
    points: [Point; 4],
}

impl Quadrilateral {
    /// # Panics
    ///
    /// Panics when the polygon self-intersects. Use [`Quadrilateral::try_new`]
    /// for untrusted input.
    pub fn new(points: [Point; 4]) -> Self {
        Self::try_new(points).expect("invalid quadrilateral")
    }

    pub fn try_new(points: [Point; 4]) -> Result<Self, GeometryError> {
        check_finite(&points.iter().flat_map(|p| [p.x, p.y]).collect::<Vec<_>>())?;
        if !is_simple(&points) {
            return Err(GeometryError::SelfIntersecting);
        }
        Ok(Self { points })
    }

    pub fn from_rectangle(r: &Rectangle) -> Self {
        Self { points: r.corners() }
    }

    pub fn points(&self) -> &[Point; 4] {
        &self.points
    }

    pub fn bounding_rectangle(&self) -> Rectangle {
        Rectangle::bounding(&self.points)
    }

    /// Signed shoelace area; positive for clockwise order in image coordinates.
    pub fn signed_area(&self) -> f64 {
        let p = &self.points;
        (0..4)
            .map(|i| {
                let (a, b) = (p[i], p[(i + 1) % 4]);
                a.x * b.y - b.x * a.y
            })
            .sum::<f64>()
            / 2.0
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn shift(&self, dx: f64, dy: f64) -> Self {
        Self {
            points: self.points.map(|p| Point::new(p.x + dx, p.y + dy)),
        }
    }

    /// Moves the top-left corner up-left, the top-right corner up-right, and
    /// so on.
    pub fn pad(&self, padding: Padding, safe_mode: bool) -> Result<Self, GeometryError> {
        let [p1, p2, p3, p4] = self.points;
        let mut points = [
            Point::new(p1.x - padding.left, p1.y - padding.top),
            Point::new(p2.x + padding.right, p2.y - padding.top),
            Point::new(p3.x + padding.right, p3.y + padding.bottom),
            Point::new(p4.x - padding.left, p4.y + padding.bottom),
        ];
        let padded = Self { points };
        let before = self.signed_area();
        let after = padded.signed_area();
        if !is_simple(&points) || (before != 0.0 && after != 0.0 && before.signum() != after.signum())
        {
            return Err(GeometryError::PaddingInverts);
        }
        if safe_mode {
            for p in &mut points {
                p.x = p.x.max(0.0);
                p.y = p.y.max(0.0);
            }
        }
        Ok(Self { points })
    }

    pub fn scale(&self, fx: f64, fy: f64) -> Result<Self, GeometryError> {
        check_scale(fx, fy)?;
        Ok(Self {
            points: self.points.map(|p| Point::new(p.x * fx, p.y * fy)),
        })
    }

    pub(crate) fn region(&self) -> Region {
        self.bounding_rectangle().region()
    }

    /// Mean lengths of the opposing edge pairs: `(width, height)`.
    pub fn mean_edge_lengths(&self) -> (f64, f64) {
        let [p1, p2, p3, p4] = self.points;
        let w = (p1.distance(&p2) + p4.distance(&p3)) / 2.0;
        let h = (p1.distance(&p4) + p2.distance(&p3)) / 2.0;
        (w, h)
    }
}

fn orientation(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// True when segments `ab` and `cd` cross at a single interior point.
fn properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

fn is_simple(p: &[Point; 4]) -> bool {
    !properly_cross(p[0], p[1], p[2], p[3]) && !properly_cross(p[1], p[2], p[3], p[0])
}
