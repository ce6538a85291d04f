use super::region::{Extent, Region};
use super::{check_finite, check_scale, Axis, CanvasSize, GeometryError, Padding, Rectangle};

/// A 1-D span along one axis of the page.
///
/// On its free axis an interval is an infinite slab, unless canvas extents are
/// attached, in which case the slab is clipped to `[0, extent]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    start: f64,
    end: f64,
    axis: Axis,
    canvas_width: Option<f64>,
    canvas_height: Option<f64>,
}

impl Interval {
    /// # Panics
    ///
    /// Panics if `start > end` or either value is not finite. Use
    /// [`Interval::try_new`] for untrusted input.
    pub fn new(start: f64, end: f64, axis: Axis) -> Self {
        Self::try_new(start, end, axis).expect("invalid interval")
    }

    pub fn try_new(start: f64, end: f64, axis: Axis) -> Result<Self, GeometryError> {
        check_finite(&[start, end])?;
        if start > end {
            return Err(GeometryError::InvertedInterval { start, end });
        }
        Ok(Self {
            start,
            end,
            axis,
            canvas_width: None,
            canvas_height: None,
        })
    }

    /// Attaches page extents. Either may be omitted.
    pub fn with_canvas(
        mut self,
        width: Option<f64>,
        height: Option<f64>,
    ) -> Result<Self, GeometryError> {
        for v in width.iter().chain(height.iter()) {
            check_finite(&[*v])?;
            if *v < 0.0 {
                return Err(GeometryError::NegativeCanvas);
            }
        }
        self.canvas_width = width;
        self.canvas_height = height;
        Ok(self)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn canvas_width(&self) -> Option<f64> {
        self.canvas_width
    }

    pub fn canvas_height(&self) -> Option<f64> {
        self.canvas_height
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    /// Extent of the canvas along the free axis, if known.
    fn free_extent(&self) -> Option<f64> {
        match self.axis {
            Axis::Horizontal => self.canvas_height,
            Axis::Vertical => self.canvas_width,
        }
    }

    fn own_extent(&self) -> Option<f64> {
        match self.axis {
            Axis::Horizontal => self.canvas_width,
            Axis::Vertical => self.canvas_height,
        }
    }

    pub(crate) fn region(&self) -> Region {
        let span = Extent::new(self.start, self.end);
        let free = self
            .free_extent()
            .map_or(Extent::UNBOUNDED, |e| Extent::new(0.0, e));
        match self.axis {
            Axis::Horizontal => Region { x: span, y: free },
            Axis::Vertical => Region { x: free, y: span },
        }
    }

    /// The slab as a rectangle, bounded on the free axis by the attached
    /// canvas or, failing that, by `canvas`.
    pub fn to_rectangle(&self, canvas: Option<CanvasSize>) -> Result<Rectangle, GeometryError> {
        let free = self.free_extent().or(canvas.map(|c| match self.axis {
            Axis::Horizontal => c.height,
            Axis::Vertical => c.width,
        }));
        let free = free.ok_or(GeometryError::MissingCanvas(self.axis))?;
        Ok(match self.axis {
            Axis::Horizontal => Rectangle::new(self.start, 0.0, self.end, free),
            Axis::Vertical => Rectangle::new(0.0, self.start, free, self.end),
        })
    }

    pub fn shift(&self, dx: f64, dy: f64) -> Self {
        let d = match self.axis {
            Axis::Horizontal => dx,
            Axis::Vertical => dy,
        };
        Self {
            start: self.start + d,
            end: self.end + d,
            ..*self
        }
    }

    pub fn pad(&self, padding: Padding, safe_mode: bool) -> Result<Self, GeometryError> {
        let (before, after) = match self.axis {
            Axis::Horizontal => (padding.left, padding.right),
            Axis::Vertical => (padding.top, padding.bottom),
        };
        let mut start = self.start - before;
        let mut end = self.end + after;
        if start > end {
            return Err(GeometryError::PaddingInverts);
        }
        if safe_mode {
            start = start.max(0.0);
            end = end.max(0.0);
            if let Some(limit) = self.own_extent() {
                start = start.min(limit);
                end = end.min(limit);
            }
        }
        Ok(Self {
            start,
            end,
            ..*self
        })
    }

    pub fn scale(&self, fx: f64, fy: f64) -> Result<Self, GeometryError> {
        check_scale(fx, fy)?;
        let f = match self.axis {
            Axis::Horizontal => fx,
            Axis::Vertical => fy,
        };
        Ok(Self {
            start: self.start * f,
            end: self.end * f,
            axis: self.axis,
            canvas_width: self.canvas_width.map(|w| w * fx),
            canvas_height: self.canvas_height.map(|h| h * fy),
        })
    }

    /// Same-axis overlap. Canvas extents combine to the tighter of the two.
    pub(crate) fn overlap(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.axis, other.axis);
        let e = Extent::new(self.start, self.end).intersect(&Extent::new(other.start, other.end));
        Interval {
            start: e.lo,
            end: e.hi,
            axis: self.axis,
            canvas_width: combine(self.canvas_width, other.canvas_width, f64::min),
            canvas_height: combine(self.canvas_height, other.canvas_height, f64::min),
        }
    }

    /// Same-axis enclosing span. Canvas extents combine to the larger.
    pub(crate) fn span(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.axis, other.axis);
        Interval {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
            axis: self.axis,
            canvas_width: combine(self.canvas_width, other.canvas_width, f64::max),
            canvas_height: combine(self.canvas_height, other.canvas_height, f64::max),
        }
    }
}

fn combine(a: Option<f64>, b: Option<f64>, f: fn(f64, f64) -> f64) -> Option<f64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(f(a, b)),
        (a, b) => a.or(b),
    }
}
