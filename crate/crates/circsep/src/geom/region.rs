//! Circular-segment regions and the intersection primitives behind the
//! `cuts` predicate of the separability scan.

use super::{
    distance_point_segment, eps, Arc2, Circle2, Line2, Location, Point2, Polygon, Segment2,
};

/// The convex region `disk ∩ {chord.signed_distance ≥ 0}`.
///
/// For an arc of at most π this is the region between the arc and its chord
/// (the convex hull of the arc); with the flipped chord it is the
/// complementary part of the disk.
#[derive(Debug, Clone, Copy)]
pub struct CircularSegment {
    pub circle: Circle2,
    pub chord: Line2,
}

impl CircularSegment {
    /// Region between the arc and its chord.
    pub fn of_arc(arc: &Arc2) -> CircularSegment {
        // The CCW arc start→end (≤ π) bulges right of the directed chord, so
        // flip the through-line to put the region on the positive side.
        let chord = Line2::through(arc.start, arc.end)
            .expect("arc endpoints distinct")
            .flipped();
        CircularSegment { circle: arc.circle, chord }
    }

    /// The rest of the disk: everything on the center side of the chord.
    pub fn complement_of_arc(arc: &Arc2) -> CircularSegment {
        let chord = Line2::through(arc.start, arc.end).expect("arc endpoints distinct");
        CircularSegment { circle: arc.circle, chord }
    }

    /// Penetration depth of `p` into the open region: positive inside.
    fn penetration(&self, p: Point2) -> f64 {
        let into_disk = self.circle.radius - self.circle.center.distance(p);
        let into_half = self.chord.signed_distance(p);
        into_disk.min(into_half)
    }

    fn tol(&self) -> f64 {
        eps() * (1.0 + self.circle.radius)
    }

    /// Strict interior membership, with slack toward "outside".
    pub fn interior_contains(&self, p: Point2) -> bool {
        self.penetration(p) > self.tol()
    }

    /// A point well inside the region (assuming it is non-degenerate).
    pub fn representative_point(&self) -> Point2 {
        let c = self.circle.center;
        if self.chord.signed_distance(c) > 0.0 {
            return c;
        }
        let n = self.chord.normal();
        let foot = self.chord.project(c);
        let top = c + n * self.circle.radius;
        foot.midpoint(top)
    }

    /// Does the open segment interior meet the open region?
    pub fn intersects_segment_interior(&self, seg: Segment2) -> bool {
        self.segment_max_penetration(seg) > self.tol()
    }

    /// Closed variant: touching counts.
    pub fn intersects_segment_closed(&self, seg: Segment2) -> bool {
        self.segment_max_penetration(seg) >= -self.tol()
    }

    /// Maximum penetration of any point of `seg` into the region.
    ///
    /// The penetration along the segment is `min(f, g)` with `f` concave
    /// (depth into the disk) and `g` affine (signed chord distance), so the
    /// maximum sits either at `f`'s peak, at a domain endpoint, or at the
    /// unique `f = g` crossing on the side where `g` grows.
    fn segment_max_penetration(&self, seg: Segment2) -> f64 {
        let c = self.circle.center;
        let r = self.circle.radius;
        let d = seg.b - seg.a;
        let len_sq = d.norm_sq();
        let pen_f = |t: f64| r - c.distance(seg.a.lerp(seg.b, t));
        let g0 = self.chord.signed_distance(seg.a);
        let g1 = self.chord.signed_distance(seg.b);
        let pen_g = |t: f64| g0 + (g1 - g0) * t;

        if len_sq == 0.0 {
            return pen_f(0.0).min(g0);
        }
        let t_f = ((c - seg.a).dot(d) / len_sq).clamp(0.0, 1.0);
        if pen_g(t_f) >= pen_f(t_f) {
            return pen_f(t_f);
        }
        // g binds at f's peak; look toward growing g.
        if g1 == g0 {
            return pen_g(t_f);
        }
        let t_end = if g1 > g0 { 1.0 } else { 0.0 };
        if pen_f(t_end) >= pen_g(t_end) {
            return pen_g(t_end);
        }
        // f - g decreases monotonically from t_f toward t_end; bisect the root.
        let (mut lo, mut hi) = (t_f, t_end);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if pen_f(mid) >= pen_g(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        pen_f(t).min(pen_g(t))
    }

    /// Does the open region meet the interior of a polygonal cycle?
    ///
    /// True when a vertex sits strictly inside the region, an edge passes
    /// through it, or the region is swallowed whole by the figure.
    pub fn intersects_polygon_interior(&self, poly: &Polygon) -> bool {
        for v in poly.vertices() {
            if self.interior_contains(*v) {
                return true;
            }
        }
        for e in poly.edges() {
            if self.intersects_segment_interior(e) {
                return true;
            }
        }
        super::point_in_polygon(self.representative_point(), poly) == Location::Interior
    }

    /// Distance from `p` to the closed region (0 when inside).
    pub fn distance_to_point(&self, p: Point2) -> f64 {
        if self.penetration(p) >= 0.0 {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        // Arc part: radial projection, kept when it lands on the region side.
        let d = p - self.circle.center;
        let dn = d.norm();
        if dn > 0.0 {
            let q = self.circle.center + d * (self.circle.radius / dn);
            if self.chord.signed_distance(q) >= 0.0 {
                best = best.min(p.distance(q));
            }
        } else {
            best = best.min(self.circle.radius.min(self.chord.signed_distance(p).abs()));
        }
        // Chord part: the chord segment is the line clipped to the disk.
        let dc = self.chord.signed_distance(self.circle.center);
        let half_sq = self.circle.radius * self.circle.radius - dc * dc;
        if half_sq >= 0.0 {
            let half = half_sq.sqrt();
            let foot = self.chord.project(self.circle.center);
            let dir = self.chord.direction();
            let chord_seg = Segment2::new(foot + dir * half, foot - dir * half);
            best = best.min(distance_point_segment(p, chord_seg));
        }
        best
    }

    /// Closest point of the segment to the region together with the distance.
    ///
    /// The distance along the segment parameter is convex, so a golden-section
    /// refinement converges; used for tangency-point extraction only.
    pub fn closest_on_segment(&self, seg: Segment2) -> (f64, Point2) {
        let f = |t: f64| self.distance_to_point(seg.a.lerp(seg.b, t));
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..70 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(m1) <= f(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let t = 0.5 * (lo + hi);
        (f(t), seg.a.lerp(seg.b, t))
    }
}

/// Distance from the closed segment to the circle's center, minus the radius.
/// Negative means the segment enters the open disk.
pub fn segment_circle_min_distance(seg: Segment2, circle: &Circle2) -> f64 {
    distance_point_segment(circle.center, seg) - circle.radius
}

/// Does the region between `arc` and its chord meet the given segment?
///
/// `open` demands contact with the relative interior of the region; `closed`
/// counts boundary touches.
pub fn arc_hull_intersects_segment(arc: &Arc2, seg: Segment2, open: bool) -> bool {
    let region = CircularSegment::of_arc(arc);
    if open {
        region.intersects_segment_interior(seg)
    } else {
        region.intersects_segment_closed(seg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upper_semicircle() -> Arc2 {
        Arc2::new(
            Circle2::new(Point2::new(0.0, 0.0), 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(-1.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn segment_through_region() {
        let arc = upper_semicircle();
        let seg = Segment2::new(Point2::new(0.0, 0.5), Point2::new(0.0, 2.0));
        assert!(arc_hull_intersects_segment(&arc, seg, true));
    }

    #[test]
    fn segment_below_chord() {
        let arc = upper_semicircle();
        let seg = Segment2::new(Point2::new(0.0, -2.0), Point2::new(0.0, -1.0));
        assert!(!arc_hull_intersects_segment(&arc, seg, false));
        assert!(!arc_hull_intersects_segment(&arc, seg, true));
    }

    #[test]
    fn boundary_touch_is_open_false_closed_true() {
        let arc = upper_semicircle();
        let seg = Segment2::new(Point2::new(1.0, 0.0), Point2::new(2.0, 0.0));
        assert!(!arc_hull_intersects_segment(&arc, seg, true));
        assert!(arc_hull_intersects_segment(&arc, seg, false));
    }

    #[test]
    fn monte_carlo_agreement() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for case in 0..300 {
            let center = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let r = rng.gen_range(0.3..2.0);
            let circle = Circle2::new(center, r);
            let a0 = rng.gen_range(0.0..std::f64::consts::TAU);
            let sweep = rng.gen_range(0.2..std::f64::consts::PI);
            let arc = Arc2::new(circle, circle.point_at(a0), circle.point_at(a0 + sweep)).unwrap();
            let seg = Segment2::new(
                Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)),
                Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)),
            );
            let region = CircularSegment::of_arc(&arc);
            // Sample the segment densely and measure the deepest penetration.
            let mut max_pen = f64::NEG_INFINITY;
            for i in 0..=10_000 {
                let p = seg.a.lerp(seg.b, i as f64 / 10_000.0);
                let pen = (r - center.distance(p)).min(region.chord.signed_distance(p));
                max_pen = max_pen.max(pen);
            }
            let sampled = max_pen > 1e-6;
            let predicted = region.intersects_segment_interior(seg);
            // Disagreement is only tolerated in the near-tangent band.
            if sampled != predicted {
                assert!(max_pen.abs() < 1e-6, "case {case}: penetration {max_pen}");
            }
        }
    }

    #[test]
    fn distance_to_point_cases() {
        let arc = upper_semicircle();
        let region = CircularSegment::of_arc(&arc);
        assert_eq!(region.distance_to_point(Point2::new(0.0, 0.5)), 0.0);
        assert!((region.distance_to_point(Point2::new(0.0, 2.0)) - 1.0).abs() < 1e-12);
        assert!((region.distance_to_point(Point2::new(0.0, -1.0)) - 1.0).abs() < 1e-12);
        // Near a chord endpoint from below.
        assert!((region.distance_to_point(Point2::new(1.0, -0.5)) - 0.5).abs() < 1e-12);
    }
}
