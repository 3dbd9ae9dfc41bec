use super::{eps, Line2, Point2};
use std::f64::consts::PI;

/// A circle with finite non-negative radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle2 {
    pub center: Point2,
    pub radius: f64,
}

impl Circle2 {
    pub fn new(center: Point2, radius: f64) -> Self {
        debug_assert!(radius.is_finite() && radius >= 0.0, "bad radius {radius}");
        Circle2 { center, radius }
    }

    /// Closed-disk membership with relative tolerance.
    pub fn contains(&self, p: Point2) -> bool {
        self.center.distance(p) <= self.radius * (1.0 + eps()) + eps()
    }

    /// Strict open-disk membership with relative tolerance.
    pub fn contains_interior(&self, p: Point2) -> bool {
        self.center.distance(p) < self.radius * (1.0 - eps()) - eps()
    }

    pub fn on_boundary(&self, p: Point2) -> bool {
        (self.center.distance(p) - self.radius).abs() <= eps() * (1.0 + self.radius)
    }

    pub fn point_at(&self, angle: f64) -> Point2 {
        Point2::new(
            self.center.x + self.radius * angle.cos(),
            self.center.y + self.radius * angle.sin(),
        )
    }
}

/// Error from [`circumcircle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollinearInput;

impl std::fmt::Display for CollinearInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "circumcircle of collinear points")
    }
}

impl std::error::Error for CollinearInput {}

/// The unique circle through three non-collinear points.
///
/// Translates to the local frame before solving, which keeps the center
/// accurate for far-from-origin inputs.
pub fn circumcircle(a: Point2, b: Point2, c: Point2) -> Result<Circle2, CollinearInput> {
    if super::orient(a, b, c) == super::Orientation::Collinear {
        return Err(CollinearInput);
    }
    let bx = b.x - a.x;
    let by = b.y - a.y;
    let cx = c.x - a.x;
    let cy = c.y - a.y;
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let center = Point2::new(a.x + ux, a.y + uy);
    let radius = center.distance(a).max(center.distance(b)).max(center.distance(c));
    Ok(Circle2::new(center, radius))
}

/// A circle that may have degenerated to a line ("circle of infinite radius").
///
/// The degenerate variant remembers which open halfplane plays the role of the
/// disk interior: with `interior_negative` the interior is `{p : a·x+b·y+c < 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneralizedCircle {
    Finite(Circle2),
    Degenerate { line: Line2, interior_negative: bool },
}

impl GeneralizedCircle {
    pub fn radius(&self) -> f64 {
        match self {
            GeneralizedCircle::Finite(c) => c.radius,
            GeneralizedCircle::Degenerate { .. } => f64::INFINITY,
        }
    }

    pub fn as_finite(&self) -> Option<&Circle2> {
        match self {
            GeneralizedCircle::Finite(c) => Some(c),
            GeneralizedCircle::Degenerate { .. } => None,
        }
    }

    /// Closed "disk" membership (halfplane membership in the degenerate case).
    pub fn contains(&self, p: Point2) -> bool {
        match self {
            GeneralizedCircle::Finite(c) => c.contains(p),
            GeneralizedCircle::Degenerate { line, interior_negative } => {
                let d = line.signed_distance(p);
                let tol = eps() * (1.0 + p.x.abs() + p.y.abs());
                if *interior_negative {
                    d <= tol
                } else {
                    d >= -tol
                }
            }
        }
    }
}

/// A circular arc running counterclockwise from `start` to `end`, never
/// subtending more than π (plus tolerance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc2 {
    pub circle: Circle2,
    pub start: Point2,
    pub end: Point2,
}

/// Error from [`Arc2::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcError {
    EndpointOffCircle,
    MajorArc,
}

impl std::fmt::Display for ArcError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArcError::EndpointOffCircle => write!(f, "arc endpoint does not lie on the circle"),
            ArcError::MajorArc => write!(f, "arc subtends more than pi"),
        }
    }
}

impl std::error::Error for ArcError {}

impl Arc2 {
    pub fn new(circle: Circle2, start: Point2, end: Point2) -> Result<Arc2, ArcError> {
        let tol = eps().sqrt() * (1.0 + circle.radius);
        if (circle.center.distance(start) - circle.radius).abs() > tol
            || (circle.center.distance(end) - circle.radius).abs() > tol
        {
            return Err(ArcError::EndpointOffCircle);
        }
        let arc = Arc2 { circle, start, end };
        // Allow exactly-pi arcs (diameter roots, parallel-edge tangencies).
        if arc.sweep() > PI * (1.0 + 1e-9) + 1e-12 {
            return Err(ArcError::MajorArc);
        }
        Ok(arc)
    }

    pub fn start_angle(&self) -> f64 {
        (self.start - self.circle.center).angle()
    }

    pub fn end_angle(&self) -> f64 {
        (self.end - self.circle.center).angle()
    }

    /// Counterclockwise sweep from start to end, in `[0, 2π)`.
    pub fn sweep(&self) -> f64 {
        let mut s = self.end_angle() - self.start_angle();
        if s < 0.0 {
            s += 2.0 * PI;
        }
        s
    }

    pub fn midpoint(&self) -> Point2 {
        self.circle.point_at(self.start_angle() + 0.5 * self.sweep())
    }

    pub fn chord(&self) -> super::Segment2 {
        super::Segment2::new(self.start, self.end)
    }

    /// True when the counterclockwise sweep from start passes through `angle`.
    pub fn covers_angle(&self, angle: f64) -> bool {
        let mut rel = angle - self.start_angle();
        while rel < 0.0 {
            rel += 2.0 * PI;
        }
        while rel >= 2.0 * PI {
            rel -= 2.0 * PI;
        }
        rel <= self.sweep() + 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circumcircle_unit() {
        let c = circumcircle(
            Point2::new(1.0, 0.0),
            Point2::new(-1.0, 0.0),
            Point2::new(0.0, 1.0),
        )
        .unwrap();
        assert!(c.center.distance(Point2::new(0.0, 0.0)) < 1e-12);
        assert!((c.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circumcircle_right_angle_forces_diameter() {
        // Right angle at (1,1): the hypotenuse (0,0)-(2,0) is a diameter.
        let c = circumcircle(
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 1.0),
        )
        .unwrap();
        assert!(c.center.distance(Point2::new(1.0, 0.0)) < 1e-12);
        assert!((c.radius - 1.0).abs() < 1e-12);
        // Equidistance oracle.
        for p in [Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), Point2::new(1.0, 1.0)] {
            assert!((c.center.distance(p) - c.radius).abs() < 1e-12);
        }
    }

    #[test]
    fn circumcircle_rejects_collinear() {
        assert!(circumcircle(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0)
        )
        .is_err());
    }

    #[test]
    fn circumcircle_permutation_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let mut p = || Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let (a, b, c) = (p(), p(), p());
            if super::super::orient(a, b, c) == super::super::Orientation::Collinear {
                continue;
            }
            let c1 = circumcircle(a, b, c).unwrap();
            let c2 = circumcircle(c, a, b).unwrap();
            let c3 = circumcircle(b, c, a).unwrap();
            let scale = 1.0 + c1.radius;
            assert!(c1.center.distance(c2.center) < 1e-9 * scale);
            assert!(c1.center.distance(c3.center) < 1e-9 * scale);
            assert!((c1.radius - c2.radius).abs() < 1e-9 * scale);
            // Equidistance within 1e-9 relative.
            for p in [a, b, c] {
                assert!((c1.center.distance(p) - c1.radius).abs() < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn arc_validation() {
        let circle = Circle2::new(Point2::new(0.0, 0.0), 1.0);
        let semi = Arc2::new(circle, Point2::new(1.0, 0.0), Point2::new(-1.0, 0.0)).unwrap();
        assert!((semi.sweep() - PI).abs() < 1e-12);
        assert!(semi.covers_angle(PI / 2.0));
        assert!(!semi.covers_angle(-PI / 2.0));

        // Major arcs are rejected.
        assert_eq!(
            Arc2::new(circle, Point2::new(1.0, 0.0), Point2::new(0.0, -1.0)),
            Err(ArcError::MajorArc)
        );
        assert!(Arc2::new(circle, Point2::new(2.0, 0.0), Point2::new(0.0, 1.0)).is_err());
    }
}
