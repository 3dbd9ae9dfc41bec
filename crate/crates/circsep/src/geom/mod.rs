//! Exact-leaning 2D primitives shared by every other module.
//!
//! Predicates (orientation, in-circle) are evaluated through adaptive exact
//! arithmetic and can be trusted to branch correctly. Constructions (circle
//! centers, tangency points) are plain `f64` with a relative tolerance of
//! [`eps`], optionally overridden through the `CIRCSEP_EPS` environment
//! variable.

mod circle;
mod line;
mod polygon;
mod predicates;
mod region;

pub use circle::{circumcircle, Arc2, Circle2, GeneralizedCircle};
pub use line::Line2;
pub use polygon::{
    distance_point_polygon_boundary, distance_point_segment, point_in_polygon, ConvexPolygon,
    Location, Polygon, PolygonError,
};
pub use predicates::{incircle, orient, Orientation};
pub use region::{arc_hull_intersects_segment, segment_circle_min_distance, CircularSegment};

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Relative tolerance used by geometric constructions.
///
/// Defaults to `1e-9`; `CIRCSEP_EPS` overrides it for the whole process.
/// Predicates never consult this value.
pub fn eps() -> f64 {
    static EPS: OnceLock<f64> = OnceLock::new();
    *EPS.get_or_init(|| {
        std::env::var("CIRCSEP_EPS")
            .ok()
            .and_then(|v| v.parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v > 0.0)
            .unwrap_or(1e-9)
    })
}

/// A point of the plane. Coordinates are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// A displacement between two points.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Point2 { x, y }
    }

    pub fn distance(&self, other: Point2) -> f64 {
        (*self - other).norm()
    }

    pub fn distance_sq(&self, other: Point2) -> f64 {
        (*self - other).norm_sq()
    }

    pub fn lerp(&self, other: Point2, t: f64) -> Point2 {
        Point2::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    pub fn midpoint(&self, other: Point2) -> Point2 {
        self.lerp(other, 0.5)
    }

    /// Lexicographic (x, then y) comparison, used for deterministic tie rules.
    pub fn lex_le(&self, other: Point2) -> bool {
        (self.x, self.y) <= (other.x, other.y)
    }

    pub fn to_vec(self) -> Vec2 {
        Vec2 { x: self.x, y: self.y }
    }
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(&self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(&self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Counterclockwise perpendicular.
    pub fn perp(&self) -> Vec2 {
        Vec2 { x: -self.y, y: self.x }
    }

    pub fn normalized(&self) -> Vec2 {
        let n = self.norm();
        debug_assert!(n > 0.0, "normalizing zero vector");
        Vec2 { x: self.x / n, y: self.y / n }
    }

    pub fn angle(&self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, v: Vec2) -> Point2 {
        Point2::new(self.x + v.x, self.y + v.y)
    }
}

impl Sub<Vec2> for Point2 {
    type Output = Point2;
    fn sub(self, v: Vec2) -> Point2 {
        Point2::new(self.x - v.x, self.y - v.y)
    }
}

impl Sub for Point2 {
    type Output = Vec2;
    fn sub(self, other: Point2) -> Vec2 {
        Vec2 { x: self.x - other.x, y: self.y - other.y }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, other: Vec2) -> Vec2 {
        Vec2 { x: self.x + other.x, y: self.y + other.y }
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, other: Vec2) -> Vec2 {
        Vec2 { x: self.x - other.x, y: self.y - other.y }
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2 { x: self.x * k, y: self.y * k }
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, k: f64) -> Vec2 {
        Vec2 { x: self.x / k, y: self.y / k }
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -self.x, y: -self.y }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A segment given by its two endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2 {
    pub a: Point2,
    pub b: Point2,
}

impl Segment2 {
    pub fn new(a: Point2, b: Point2) -> Self {
        Segment2 { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn midpoint(&self) -> Point2 {
        self.a.midpoint(self.b)
    }

    /// True if the two closed segments share at least one point.
    pub fn intersects(&self, other: &Segment2) -> bool {
        segments_intersect(self.a, self.b, other.a, other.b, true)
    }

    /// True if the open interiors of the two segments cross, or one passes
    /// through the relative interior of the other.
    pub fn crosses_interior(&self, other: &Segment2) -> bool {
        segments_intersect(self.a, self.b, other.a, other.b, false)
    }
}

/// Segment intersection built on the exact orientation predicate.
///
/// With `closed`, touching endpoints count. Without it, the intersection must
/// involve the relative interior of both segments.
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2, closed: bool) -> bool {
    let d1 = orient(c, d, a) as i32;
    let d2 = orient(c, d, b) as i32;
    let d3 = orient(a, b, c) as i32;
    let d4 = orient(a, b, d) as i32;

    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    if !closed {
        // Proper transversal crossings only; collinear overlap is a boundary
        // contact, not an interior crossing.
        return false;
    }
    let on = |p: Point2, q: Point2, r: Point2| -> bool {
        orient(p, q, r) == Orientation::Collinear
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_algebra() {
        let p = Point2::new(1.0, 2.0);
        let q = Point2::new(4.0, 6.0);
        assert_eq!(p.distance(q), 5.0);
        assert_eq!((q - p).perp(), Vec2::new(-4.0, 3.0));
        assert_eq!(p.midpoint(q), Point2::new(2.5, 4.0));
    }

    #[test]
    fn segment_crossing_modes() {
        let s = Segment2::new(Point2::new(0.0, 0.0), Point2::new(2.0, 0.0));
        let t = Segment2::new(Point2::new(1.0, -1.0), Point2::new(1.0, 1.0));
        assert!(s.intersects(&t));
        assert!(s.crosses_interior(&t));

        // Touching at an endpoint: closed yes, open no.
        let u = Segment2::new(Point2::new(2.0, 0.0), Point2::new(3.0, 1.0));
        assert!(s.intersects(&u));
        assert!(!s.crosses_interior(&u));
    }
}
