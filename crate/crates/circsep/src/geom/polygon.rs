use super::{orient, segments_intersect, Orientation, Point2, Segment2};

/// Result of classifying a point against a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Error raised by the polygon constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonError {
    TooFewVertices,
    NonFiniteCoordinate,
    DuplicateVertices,
    NotCounterClockwise,
    SelfIntersecting,
    NotConvex,
}

impl std::fmt::Display for PolygonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolygonError::TooFewVertices => write!(f, "polygon needs at least 3 vertices"),
            PolygonError::NonFiniteCoordinate => write!(f, "non-finite vertex coordinate"),
            PolygonError::DuplicateVertices => write!(f, "consecutive duplicate vertices"),
            PolygonError::NotCounterClockwise => write!(f, "vertices are not counterclockwise"),
            PolygonError::SelfIntersecting => write!(f, "polygon boundary self-intersects"),
            PolygonError::NotConvex => write!(f, "polygon is not strictly convex"),
        }
    }
}

impl std::error::Error for PolygonError {}

/// A closed polygonal cycle, counterclockwise, usually simple.
///
/// `new` checks simplicity with the quadratic pairwise edge test;
/// `new_relaxed` skips that check for deliberately non-simple cycles (they are
/// legal as the excluded polygon of a separability query).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
    simple_checked: bool,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Polygon, PolygonError> {
        let poly = Self::new_relaxed(vertices)?;
        for i in 0..poly.len() {
            let (a1, a2) = (poly.vertex(i), poly.vertex(i + 1));
            for j in i + 1..poly.len() {
                // Skip the shared-endpoint comparisons of adjacent edges.
                if j == i || (j + 1) % poly.len() == i || (i + 1) % poly.len() == j {
                    continue;
                }
                let (b1, b2) = (poly.vertex(j), poly.vertex(j + 1));
                if segments_intersect(a1, a2, b1, b2, true) {
                    return Err(PolygonError::SelfIntersecting);
                }
            }
        }
        Ok(Polygon { simple_checked: true, ..poly })
    }

    /// Constructor without the simplicity test.
    pub fn new_relaxed(vertices: Vec<Point2>) -> Result<Polygon, PolygonError> {
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices);
        }
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(PolygonError::NonFiniteCoordinate);
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(PolygonError::DuplicateVertices);
            }
        }
        if signed_area(&vertices) <= 0.0 {
            return Err(PolygonError::NotCounterClockwise);
        }
        Ok(Polygon { vertices, simple_checked: false })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Vertex by index, wrapping around.
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn edge(&self, i: usize) -> Segment2 {
        Segment2::new(self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment2> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn was_simplicity_checked(&self) -> bool {
        self.simple_checked
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Diameter of the bounding box, the scale for absolute tolerances.
    pub fn scale(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.distance(hi).max(1e-300)
    }
}

fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut area = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        area += p.x * q.y - q.x * p.y;
    }
    0.5 * area
}

/// Classifies `p` against `poly` by crossing parity.
///
/// Boundary detection uses an absolute tolerance of `1e-12` scaled by the
/// polygon's bounding-box diameter. Parity (rather than winding) keeps the
/// classification meaningful for non-simple cycles.
pub fn point_in_polygon(p: Point2, poly: &Polygon) -> Location {
    let tol = 1e-12 * poly.scale();
    let n = poly.len();
    for i in 0..n {
        if distance_point_segment(p, poly.edge(i)) <= tol {
            return Location::Boundary;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = poly.vertex(i);
        let b = poly.vertex(i + 1);
        // Half-open rule on y avoids double counting at vertices.
        if (a.y > p.y) != (b.y > p.y) {
            let t = (p.y - a.y) / (b.y - a.y);
            let x = a.x + t * (b.x - a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Euclidean distance from `p` to the closed segment.
pub fn distance_point_segment(p: Point2, seg: Segment2) -> f64 {
    let d = seg.b - seg.a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return p.distance(seg.a);
    }
    let t = ((p - seg.a).dot(d) / len_sq).clamp(0.0, 1.0);
    p.distance(seg.a + d * t)
}

/// Minimum distance from `p` to the polygon's boundary cycle.
pub fn distance_point_polygon_boundary(p: Point2, poly: &Polygon) -> f64 {
    poly.edges()
        .map(|e| distance_point_segment(p, e))
        .fold(f64::INFINITY, f64::min)
}

/// A strictly convex counterclockwise polygon: every consecutive vertex
/// triple makes a strict left turn.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates strict convexity (collinear vertices are rejected, not removed;
    /// hull constructors already drop them).
    pub fn new(vertices: Vec<Point2>) -> Result<ConvexPolygon, PolygonError> {
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices);
        }
        if vertices.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(PolygonError::NonFiniteCoordinate);
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if orient(a, b, c) != Orientation::CounterClockwise {
                return Err(if signed_area(&vertices) <= 0.0 {
                    PolygonError::NotCounterClockwise
                } else {
                    PolygonError::NotConvex
                });
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn edge(&self, i: usize) -> Segment2 {
        Segment2::new(self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment2> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn to_polygon(&self) -> Polygon {
        Polygon { vertices: self.vertices.clone(), simple_checked: true }
    }

    pub fn scale(&self) -> f64 {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        lo.distance(hi).max(1e-300)
    }

    /// Point classification specialised to convex polygons, O(n).
    pub fn locate_point(&self, p: Point2) -> Location {
        let tol = 1e-12 * self.scale();
        let mut interior = true;
        for i in 0..self.len() {
            if distance_point_segment(p, self.edge(i)) <= tol {
                return Location::Boundary;
            }
            let a = self.vertex(i);
            let b = self.vertex(i + 1);
            if (b - a).cross(p - a) <= 0.0 {
                interior = false;
            }
        }
        if interior {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    /// Whether `p` lies in the closed region.
    pub fn contains(&self, p: Point2) -> bool {
        self.locate_point(p) != Location::Exterior
    }

    /// Index of the vertex extreme in direction `d` (max dot product).
    pub fn extreme_vertex(&self, d: super::Vec2) -> usize {
        // Plain scan; callers on hot paths use their own search structures.
        let mut best = 0;
        let mut best_dot = self.vertices[0].to_vec().dot(d);
        for (i, v) in self.vertices.iter().enumerate().skip(1) {
            let dot = v.to_vec().dot(d);
            if dot > best_dot {
                best_dot = dot;
                best = i;
            }
        }
        best
    }
}
