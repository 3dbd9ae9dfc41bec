//! Orientation and in-circle predicates.
//!
//! Both are routed through the `robust` crate (Shewchuk's adaptive-precision
//! evaluation): a cheap floating-point filter answers when its error bound
//! allows and escalates to exact extended-precision arithmetic otherwise.

use super::Point2;

/// Sign of the signed area of a vertex triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i8)]
pub enum Orientation {
    Clockwise = -1,
    Collinear = 0,
    CounterClockwise = 1,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        self as i8 as i32
    }
}

fn coord(p: Point2) -> robust::Coord<f64> {
    robust::Coord { x: p.x, y: p.y }
}

/// Exact sign of twice the signed area of triangle `abc`.
///
/// `+1` when `c` lies to the left of the directed line `ab`.
pub fn orient(a: Point2, b: Point2, c: Point2) -> Orientation {
    let det = robust::orient2d(coord(a), coord(b), coord(c));
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// Exact in-circle test against the circle through `a`, `b`, `c` (counterclockwise).
///
/// Returns `+1` when `d` is strictly inside, `-1` outside, `0` on the circle.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> i32 {
    let det = robust::incircle(coord(a), coord(b), coord(c), coord(d));
    if det > 0.0 {
        1
    } else if det < 0.0 {
        -1
    } else {
        0
    }
}
