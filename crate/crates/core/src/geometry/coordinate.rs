use super::region::Region;
use super::{
    Axis, CanvasSize, GeometryError, Homography, Interval, Padding, Point, Quadrilateral,
    RasterImage, Rectangle, Rgb,
};

/// The coordinate type of a block, ordered by generality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordinateKind {
    Interval,
    Rectangle,
    Quadrilateral,
}

/// Any of the three coordinate types.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coordinate {
    Interval(Interval),
    Rectangle(Rectangle),
    Quadrilateral(Quadrilateral),
}

impl From<Interval> for Coordinate {
    fn from(i: Interval) -> Self {
        Coordinate::Interval(i)
    }
}

impl From<Rectangle> for Coordinate {
    fn from(r: Rectangle) -> Self {
        Coordinate::Rectangle(r)
    }
}

impl From<Quadrilateral> for Coordinate {
    fn from(q: Quadrilateral) -> Self {
        Coordinate::Quadrilateral(q)
    }
}

impl Coordinate {
    pub fn kind(&self) -> CoordinateKind {
        match self {
            Coordinate::Interval(_) => CoordinateKind::Interval,
            Coordinate::Rectangle(_) => CoordinateKind::Rectangle,
            Coordinate::Quadrilateral(_) => CoordinateKind::Quadrilateral,
        }
    }

    pub(crate) fn region(&self) -> Region {
        match self {
            Coordinate::Interval(i) => i.region(),
            Coordinate::Rectangle(r) => r.region(),
            Coordinate::Quadrilateral(q) => q.region(),
        }
    }

    /// Axis-aligned bounding box, or `None` for an interval whose free axis
    /// is unbounded.
    pub fn bounding_rectangle(&self) -> Option<Rectangle> {
        let r = self.region();
        (r.x.is_bounded() && r.y.is_bounded()).then(|| Rectangle::from_region(&r))
    }

    /// Center of the bounding region. For an interval without canvas extents
    /// the free coordinate is reported as 0.
    pub fn center(&self) -> Point {
        let r = self.region();
        Point::new(r.x.center().unwrap_or(0.0), r.y.center().unwrap_or(0.0))
    }

    /// Area of the bounding region (infinite for an unbounded slab).
    pub fn area(&self) -> f64 {
        match self {
            Coordinate::Quadrilateral(q) => q.area(),
            _ => {
                let r = self.region();
                (r.x.hi - r.x.lo) * (r.y.hi - r.y.lo)
            }
        }
    }

    /// The translation origin used by [`relative_to`](Self::relative_to) and
    /// [`condition_on`](Self::condition_on): the start of an interval, the
    /// top-left corner of a rectangle, the first point of a quadrilateral.
    pub fn origin(&self) -> Point {
        match self {
            Coordinate::Interval(i) => match i.axis() {
                Axis::Horizontal => Point::new(i.start(), 0.0),
                Axis::Vertical => Point::new(0.0, i.start()),
            },
            Coordinate::Rectangle(r) => r.top_left(),
            Coordinate::Quadrilateral(q) => q.points()[0],
        }
    }

    pub fn shift(&self, dx: f64, dy: f64) -> Coordinate {
        match self {
            Coordinate::Interval(i) => i.shift(dx, dy).into(),
            Coordinate::Rectangle(r) => r.shift(dx, dy).into(),
            Coordinate::Quadrilateral(q) => q.shift(dx, dy).into(),
        }
    }

    pub fn pad(&self, padding: Padding, safe_mode: bool) -> Result<Coordinate, GeometryError> {
        Ok(match self {
            Coordinate::Interval(i) => i.pad(padding, safe_mode)?.into(),
            Coordinate::Rectangle(r) => r.pad(padding, safe_mode)?.into(),
            Coordinate::Quadrilateral(q) => q.pad(padding, safe_mode)?.into(),
        })
    }

    /// Scales about the origin `(0, 0)`.
    pub fn scale(&self, fx: f64, fy: f64) -> Result<Coordinate, GeometryError> {
        Ok(match self {
            Coordinate::Interval(i) => i.scale(fx, fy)?.into(),
            Coordinate::Rectangle(r) => r.scale(fx, fy)?.into(),
            Coordinate::Quadrilateral(q) => q.scale(fx, fy)?.into(),
        })
    }

    /// Closed containment of this block's bounding region in `outer`'s.
    /// With `center_only`, only the center point has to lie in `outer`.
    pub fn is_in(&self, outer: &Coordinate, center_only: bool) -> bool {
        let outer = outer.region();
        let inner = self.region();
        if center_only {
            outer.contains_center_of(&inner)
        } else {
            outer.contains(&inner)
        }
    }

    /// Overlap of the two blocks' bounding regions, tagged with the more
    /// general of the two input types. Intervals on different axes meet in a
    /// rectangle. Disjoint inputs give a zero-area block.
    pub fn intersect(&self, other: &Coordinate) -> Coordinate {
        if let (Coordinate::Interval(a), Coordinate::Interval(b)) = (self, other) {
            if a.axis() == b.axis() {
                return a.overlap(b).into();
            }
        }
        let overlap = self.region().intersect(&other.region());
        let rect = Rectangle::from_region(&overlap);
        match self.kind().max(other.kind()) {
            CoordinateKind::Quadrilateral => Quadrilateral::from_rectangle(&rect).into(),
            _ => rect.into(),
        }
    }

    /// Smallest axis-aligned block enclosing both operands, tagged with the
    /// more general input type. Intervals mixed with other types (or with an
    /// interval on the other axis) need canvas extents to become rectangles.
    pub fn union(&self, other: &Coordinate) -> Result<Coordinate, GeometryError> {
        if let (Coordinate::Interval(a), Coordinate::Interval(b)) = (self, other) {
            if a.axis() == b.axis() {
                return Ok(a.span(b).into());
            }
        }
        let a = self.bounded_rectangle()?;
        let b = other.bounded_rectangle()?;
        let rect = a.enclose(&b);
        Ok(match self.kind().max(other.kind()) {
            CoordinateKind::Quadrilateral => Quadrilateral::from_rectangle(&rect).into(),
            _ => rect.into(),
        })
    }

    fn bounded_rectangle(&self) -> Result<Rectangle, GeometryError> {
        match self {
            Coordinate::Interval(i) => i.to_rectangle(None),
            Coordinate::Rectangle(r) => Ok(*r),
            Coordinate::Quadrilateral(q) => Ok(q.bounding_rectangle()),
        }
    }

    /// Expresses this block in the frame whose origin is `base`'s origin.
    pub fn relative_to(&self, base: &Coordinate) -> Coordinate {
        let o = base.origin();
        self.shift(-o.x, -o.y)
    }

    /// Inverse of [`relative_to`](Self::relative_to): places a block given in
    /// `base`'s frame back onto the page.
    pub fn condition_on(&self, base: &Coordinate) -> Coordinate {
        let o = base.origin();
        self.shift(o.x, o.y)
    }

    /// Converts to another coordinate type. Upward conversion of an interval
    /// needs a bound on its free axis, taken from its own canvas extents or
    /// from `canvas`. Quadrilaterals convert down to their bounding box.
    pub fn coerce(
        &self,
        target: CoordinateKind,
        canvas: Option<CanvasSize>,
    ) -> Result<Coordinate, GeometryError> {
        use CoordinateKind as K;
        Ok(match (self, target) {
            (c, t) if c.kind() == t => *c,
            (Coordinate::Interval(i), K::Rectangle) => i.to_rectangle(canvas)?.into(),
            (Coordinate::Interval(i), K::Quadrilateral) => {
                Quadrilateral::from_rectangle(&i.to_rectangle(canvas)?).into()
            }
            (Coordinate::Rectangle(r), K::Quadrilateral) => Quadrilateral::from_rectangle(r).into(),
            (Coordinate::Quadrilateral(q), K::Rectangle) => q.bounding_rectangle().into(),
            (c, t) => {
                return Err(GeometryError::UnsupportedCoercion {
                    from: c.kind(),
                    to: t,
                })
            }
        })
    }

    /// Cuts this block out of `image`.
    ///
    /// Intervals and rectangles give an axis-aligned crop clamped to the
    /// image; an interval spans the whole image on its free axis. A
    /// quadrilateral is perspective-warped onto an upright rectangle whose
    /// sides are the mean lengths of its opposing edges.
    pub fn crop_image(&self, image: &RasterImage) -> Result<RasterImage, GeometryError> {
        if image.is_empty() {
            return Err(GeometryError::EmptyCrop);
        }
        let (w, h) = (image.width() as f64, image.height() as f64);
        let (x, y) = match self {
            Coordinate::Interval(i) => match i.axis() {
                Axis::Horizontal => ((i.start(), i.end()), (0.0, h)),
                Axis::Vertical => ((0.0, w), (i.start(), i.end())),
            },
            Coordinate::Rectangle(r) => ((r.x1(), r.x2()), (r.y1(), r.y2())),
            Coordinate::Quadrilateral(q) => return warp_quadrilateral(q, image),
        };
        let (x0, x1) = pixel_span(x, image.width());
        let (y0, y1) = pixel_span(y, image.height());
        if x1 <= x0 || y1 <= y0 {
            return Err(GeometryError::EmptyCrop);
        }
        Ok(image.sub_image(x0, y0, x1 - x0, y1 - y0))
    }
}

/// Rounds a real span to pixel boundaries, clamped to `[0, limit]`.
pub(crate) fn pixel_span((lo, hi): (f64, f64), limit: u32) -> (u32, u32) {
    let clamp = |v: f64| v.round().clamp(0.0, limit as f64) as u32;
    (clamp(lo), clamp(hi))
}

fn warp_quadrilateral(q: &Quadrilateral, image: &RasterImage) -> Result<RasterImage, GeometryError> {
    let (mw, mh) = q.mean_edge_lengths();
    let (w, h) = (mw.round(), mh.round());
    if w < 1.0 || h < 1.0 {
        return Err(GeometryError::EmptyCrop);
    }
    let target = [
        Point::new(0.0, 0.0),
        Point::new(w, 0.0),
        Point::new(w, h),
        Point::new(0.0, h),
    ];
    let to_source = Homography::from_correspondences(&target, q.points())?;
    let (w, h) = (w as u32, h as u32);
    let mut out = RasterImage::white(w, h);
    for v in 0..h {
        for u in 0..w {
            let s = to_source.apply(Point::new(u as f64 + 0.5, v as f64 + 0.5));
            out.put_pixel(u, v, sample_bilinear(image, s.x - 0.5, s.y - 0.5));
        }
    }
    Ok(out)
}

/// Bilinear sample at continuous pixel position `(fx, fy)`, where integer
/// positions are pixel centers. Samples off the image replicate the border.
fn sample_bilinear(image: &RasterImage, fx: f64, fy: f64) -> Rgb {
    let max_x = image.width() as i64 - 1;
    let max_y = image.height() as i64 - 1;
    let x0 = fx.floor();
    let y0 = fy.floor();
    let tx = fx - x0;
    let ty = fy - y0;
    let at = |x: i64, y: i64| image.pixel(x.clamp(0, max_x) as u32, y.clamp(0, max_y) as u32);
    let (x0, y0) = (x0 as i64, y0 as i64);
    let p00 = at(x0, y0);
    let p10 = at(x0 + 1, y0);
    let p01 = at(x0, y0 + 1);
    let p11 = at(x0 + 1, y0 + 1);
    let mut out = [0u8; 3];
    for c in 0..3 {
        let top = p00[c] as f64 * (1.0 - tx) + p10[c] as f64 * tx;
        let bottom = p01[c] as f64 * (1.0 - tx) + p11[c] as f64 * tx;
        out[c] = (top * (1.0 - ty) + bottom * ty).round().clamp(0.0, 255.0) as u8;
    }
    out
}
