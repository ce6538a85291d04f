//! Axis-aligned regions with possibly unbounded extents. Every coordinate type
//! reduces to one of these for containment and set-style operations.

/// A closed 1-D range. Bounds may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Extent {
    pub lo: f64,
    pub hi: f64,
}

impl Extent {
    pub const UNBOUNDED: Extent = Extent {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Overlap of two extents. Disjoint inputs collapse to a zero-length
    /// extent positioned at the larger lower bound.
    pub fn intersect(&self, other: &Extent) -> Extent {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi).max(lo);
        Extent { lo, hi }
    }

    pub fn enclose(&self, other: &Extent) -> Extent {
        Extent {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn contains(&self, other: &Extent) -> bool {
        other.lo >= self.lo && other.hi <= self.hi
    }

    pub fn contains_value(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    /// Midpoint, or `None` when either bound is infinite.
    pub fn center(&self) -> Option<f64> {
        self.is_bounded().then(|| (self.lo + self.hi) / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Region {
    pub x: Extent,
    pub y: Extent,
}

impl Region {
    pub fn intersect(&self, other: &Region) -> Region {
        Region {
            x: self.x.intersect(&other.x),
            y: self.y.intersect(&other.y),
        }
    }

    pub fn enclose(&self, other: &Region) -> Region {
        Region {
            x: self.x.enclose(&other.x),
            y: self.y.enclose(&other.y),
        }
    }

    pub fn contains(&self, other: &Region) -> bool {
        self.x.contains(&other.x) && self.y.contains(&other.y)
    }

    /// Center-point containment. An unbounded axis of `inner` has no center
    /// and only fits an equally unbounded axis of `self`.
    pub fn contains_center_of(&self, inner: &Region) -> bool {
        let axis_ok = |outer: &Extent, inner: &Extent| match inner.center() {
            Some(c) => outer.contains_value(c),
            None => outer.contains(inner),
        };
        axis_ok(&self.x, &inner.x) && axis_ok(&self.y, &inner.y)
    }
}
