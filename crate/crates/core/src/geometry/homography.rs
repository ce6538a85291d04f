use nalgebra::{Matrix3, SMatrix, SVector, Vector3};

use super::{GeometryError, Point};

/// A 3×3 projective transform estimated from four point correspondences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homography {
    matrix: Matrix3<f64>,
}

impl Homography {
    /// Solves for the transform mapping each `from[i]` onto `to[i]`, with the
    /// bottom-right matrix entry fixed to 1.
    pub fn from_correspondences(from: &[Point; 4], to: &[Point; 4]) -> Result<Self, GeometryError> {
        let mut a = SMatrix::<f64, 8, 8>::zeros();
        let mut b = SVector::<f64, 8>::zeros();
        for i in 0..4 {
            let (u, v) = (from[i].x, from[i].y);
            let (x, y) = (to[i].x, to[i].y);
            let r = 2 * i;
            a.row_mut(r)
                .copy_from_slice(&[u, v, 1.0, 0.0, 0.0, 0.0, -u * x, -v * x]);
            a.row_mut(r + 1)
                .copy_from_slice(&[0.0, 0.0, 0.0, u, v, 1.0, -u * y, -v * y]);
            b[r] = x;
            b[r + 1] = y;
        }
        let h = a
            .lu()
            .solve(&b)
            .filter(|h| h.iter().all(|v| v.is_finite()))
            .ok_or(GeometryError::DegenerateHomography)?;
        let matrix = Matrix3::new(h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], 1.0);
        Ok(Self { matrix })
    }

    pub fn apply(&self, p: Point) -> Point {
        let v = self.matrix * Vector3::new(p.x, p.y, 1.0);
        Point::new(v.x / v.z, v.y / v.z)
    }
}
