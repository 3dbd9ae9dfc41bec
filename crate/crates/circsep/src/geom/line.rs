use super::{eps, Point2, Vec2};

/// An oriented line `{p : a·x + b·y + c = 0}` with `a² + b² = 1`.
///
/// The positive halfplane is `H⁺ = {p : a·x + b·y + c ≥ 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line2 {
    /// Builds a normalized line from raw coefficients.
    ///
    /// Returns `None` when `(a, b)` is (numerically) the zero vector.
    pub fn new(a: f64, b: f64, c: f64) -> Option<Line2> {
        let n = (a * a + b * b).sqrt();
        if !n.is_finite() || n < 1e-300 {
            return None;
        }
        Some(Line2 { a: a / n, b: b / n, c: c / n })
    }

    /// The line through `p` and `q`, oriented so that points to the left of
    /// the direction `q - p` are in the positive halfplane.
    pub fn through(p: Point2, q: Point2) -> Option<Line2> {
        let d = q - p;
        // normal = left perpendicular of the direction
        Line2::new(-d.y, d.x, d.y * p.x - d.x * p.y)
    }

    /// Signed distance; positive inside `H⁺`.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.signed_distance(p).abs() <= eps() * (1.0 + p.x.abs() + p.y.abs())
    }

    /// Unit normal pointing into the positive halfplane.
    pub fn normal(&self) -> Vec2 {
        Vec2::new(self.a, self.b)
    }

    /// Unit direction along the line (normal rotated clockwise).
    pub fn direction(&self) -> Vec2 {
        Vec2::new(self.b, -self.a)
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: Point2) -> Point2 {
        p - self.normal() * self.signed_distance(p)
    }

    /// The line with the opposite orientation.
    pub fn flipped(&self) -> Line2 {
        Line2 { a: -self.a, b: -self.b, c: -self.c }
    }

    /// Intersection point of two lines, `None` when (nearly) parallel.
    pub fn intersection(&self, other: &Line2) -> Option<Point2> {
        let det = self.a * other.b - self.b * other.a;
        if det.abs() < 1e-14 {
            return None;
        }
        let x = (self.b * other.c - self.c * other.b) / det;
        let y = (self.c * other.a - self.a * other.c) / det;
        Some(Point2::new(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn through_orientation() {
        let l = Line2::through(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).unwrap();
        assert!(l.signed_distance(Point2::new(0.5, 1.0)) > 0.0);
        assert!(l.signed_distance(Point2::new(0.5, -1.0)) < 0.0);
        assert!(l.contains(Point2::new(7.0, 0.0)));
    }

    #[test]
    fn projection_and_intersection() {
        let l = Line2::new(1.0, 0.0, -1.0).unwrap(); // x = 1, H+ is x >= 1
        assert_eq!(l.project(Point2::new(3.0, 2.0)), Point2::new(1.0, 2.0));
        let m = Line2::new(0.0, 2.0, 0.0).unwrap(); // y = 0
        assert_eq!(l.intersection(&m), Some(Point2::new(1.0, 0.0)));
        assert!(l.intersection(&l.flipped()).is_none());
    }
}
