//! The smallest separating circle of two polygons.
//!
//! The directional half asks for the smallest circle containing one polygon
//! whose open disk avoids the other's interior. It walks the list of the
//! excluded polygon's edges against a path of the arcs forest of the enclosed
//! polygon, then solves the final tangency on a furthest-site Voronoi edge.
//! Running both directions and verifying the candidates yields the smallest
//! separating circle, a separating line when no finite circle exists, or a
//! four-point witness certifying non-separability.

use crate::fsvd::{build_fsarcs, build_fsvd, circle_on_bisector, ArcChildren, FSArcsForest};
use crate::geom::{
    distance_point_polygon_boundary, eps, point_in_polygon, Arc2, Circle2,
    CircularSegment, GeneralizedCircle, Line2, Location, Point2, Polygon, Segment2, Vec2,
};
use crate::hull::convex_hull_simple_polygon;

/// Which polygon ended up inside the separating circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PInside,
    QInside,
}

/// Label of a witness point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonLabel {
    P,
    Q,
}

/// Four alternately labeled points on a common circle, each strictly inside
/// its polygon's interior: no circle can separate the two polygons.
#[derive(Debug, Clone)]
pub struct Witness {
    pub circle: Circle2,
    /// Counterclockwise on the circle, labels alternating.
    pub points: [(Point2, PolygonLabel); 4],
}

/// Outcome of the full two-direction separability decision.
#[derive(Debug, Clone)]
pub enum SeparationResult {
    Separable { circle: GeneralizedCircle, inside: Direction },
    NotSeparable { witness: Witness },
    PolygonsIntersect,
}

/// Outcome of one direction of the scan, as specified by the algorithm
/// itself (no cross-checking of the candidate against the excluded polygon).
#[derive(Debug, Clone)]
pub enum DirectionalResult {
    /// Smallest circle (or line) enclosing the first polygon whose
    /// construction succeeded.
    Enclosing(GeneralizedCircle),
    /// A scanned edge crossed a hull edge of the enclosed polygon.
    HullIntersects,
    /// The complementary arc still cut the excluded polygon: no circle
    /// enclosing the first polygon avoids the second.
    NotSeparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparabilityError {
    /// Enclosed polygon has a degenerate (collinear) hull.
    DegenerateHull,
    /// Non-separability was established but no valid witness could be built
    /// down to the smallest perturbation.
    WitnessConstructionFailed,
}

impl std::fmt::Display for SeparabilityError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeparabilityError::DegenerateHull => write!(f, "polygon hull is degenerate"),
            SeparabilityError::WitnessConstructionFailed => {
                write!(f, "failed to construct a non-separability witness")
            }
        }
    }
}

impl std::error::Error for SeparabilityError {}

/// A figure the `cuts` predicate can test against.
#[derive(Debug, Clone, Copy)]
pub enum Figure<'a> {
    Segment(Segment2),
    Polygon(&'a Polygon),
}

/// Does the region of an arc node meet the open figure?
///
/// For ordinary nodes the region is the convex hull of the arc; a terminal
/// node's region is the hull-edge segment itself.
pub fn cuts(forest: &FSArcsForest, node: usize, figure: Figure<'_>) -> bool {
    let n = forest.node(node);
    let region = CircularSegment::of_arc(&n.arc);
    match figure {
        Figure::Segment(seg) => region.intersects_segment_interior(seg),
        Figure::Polygon(poly) => region.intersects_polygon_interior(poly),
    }
}

fn terminal_cuts_segment(seg: Segment2, e: Segment2) -> bool {
    seg.crosses_interior(&e)
}

/// Evidence captured when step 5 fails: the tangent circle, the two hull
/// vertices it passes through, and the tangency point on the excluded
/// polygon. Everything needed to perturb the circle into a witness.
#[derive(Debug, Clone)]
struct StepFiveState {
    circle: Circle2,
    s_p: Point2,
    s_q: Point2,
    tangency: Point2,
}

#[derive(Debug, Clone)]
enum Outcome {
    Candidate(GeneralizedCircle),
    HullIntersects,
    Blocked(Option<StepFiveState>),
}

/// The smallest circle containing `inner` and disjoint from the open
/// interior of `outer`, when the scan finds one.
///
/// `outer` may be non-simple; `inner` must have a non-degenerate hull.
pub fn smallest_circle_enclosing_excluding(
    inner: &Polygon,
    outer: &Polygon,
) -> Result<DirectionalResult, SeparabilityError> {
    let outcome = directional_scan(inner, outer)?;
    Ok(match outcome {
        Outcome::Candidate(c) => DirectionalResult::Enclosing(c),
        Outcome::HullIntersects => DirectionalResult::HullIntersects,
        Outcome::Blocked(_) => DirectionalResult::NotSeparable,
    })
}

fn directional_scan(inner: &Polygon, outer: &Polygon) -> Result<Outcome, SeparabilityError> {
    let hull =
        convex_hull_simple_polygon(inner).map_err(|_| SeparabilityError::DegenerateHull)?;
    let diagram = build_fsvd(&hull);
    let forest = build_fsarcs(&diagram);
    let scale = inner.scale().max(outer.scale());

    // Step 2: the first root (counterclockwise) that cuts the figure.
    let mut current = None;
    for &root in &forest.roots {
        if cuts(&forest, root, Figure::Polygon(outer)) {
            current = Some(root);
            break;
        }
    }
    let Some(mut a) = current else {
        return Ok(Outcome::Candidate(GeneralizedCircle::Finite(
            diagram.smallest_enclosing.circle,
        )));
    };

    // Step 3: alternate the edge scan with descents of the forest.
    let mut steps = 0usize;
    for e in outer.edges() {
        steps += 1;
        if !cuts(&forest, a, Figure::Segment(e)) {
            continue;
        }
        loop {
            steps += 1;
            match forest.node(a).children {
                ArcChildren::Terminal => {
                    if terminal_cuts_segment(forest.terminal_segment(a), e) {
                        return Ok(Outcome::HullIntersects);
                    }
                    break;
                }
                ArcChildren::Split(l, r) => {
                    if cuts(&forest, l, Figure::Segment(e)) {
                        a = l;
                    } else if cuts(&forest, r, Figure::Segment(e)) {
                        a = r;
                    } else {
                        break;
                    }
                }
            }
        }
    }
    debug_assert!(steps <= outer.len() + 2 * forest.sites.len() + forest.nodes.len());

    // Step 4: grow the circle through the endpoints of A along its
    // furthest-site Voronoi edge until the arc region stops cutting.
    let (i, j) = forest.node(a).sites;
    let sites = &forest.sites;
    let mid = sites[i].midpoint(sites[j]);
    let u = crate::fsvd::bisector_direction(sites, i, j);
    let param = |c: Point2| (c - mid).dot(u);
    let region_cuts_at = |t: f64| -> bool {
        let circle = circle_on_bisector(sites, i, j, t);
        match Arc2::new(circle, sites[i], sites[j]) {
            Ok(arc) => CircularSegment::of_arc(&arc).intersects_polygon_interior(outer),
            Err(_) => false,
        }
    };

    let t_node = param(forest.node(a).arc.circle.center);
    if !region_cuts_at(t_node) {
        // The scan state degenerated to a non-cutting arc; its own carrier is
        // already the tangent circle.
        return Ok(finish_step5(
            circle_on_bisector(sites, i, j, t_node),
            sites[i],
            sites[j],
            outer,
        ));
    }

    let t_limit = forest.child_circle(a).map(|c| param(c.center));
    let (mut lo, mut hi) = match t_limit {
        Some(t_child) if !region_cuts_at(t_child) => (t_node, t_child),
        Some(_) => {
            // The excluded polygon pokes into the hull between the chord and
            // the split site: every circle enclosing the hull keeps cutting.
            return Ok(Outcome::Blocked(None));
        }
        None => {
            // Unbounded edge: probe outward; past the cap the circle is
            // numerically a line through the hull edge.
            let t_max = 1e6 * scale;
            let mut lo = t_node;
            let mut hi = t_node.abs().max(scale);
            loop {
                if hi >= t_max {
                    let line = Line2::through(sites[i], sites[j])
                        .expect("distinct hull vertices")
                        .flipped();
                    // Oriented so the enclosed polygon sits in the closed
                    // negative halfplane.
                    let line = orient_line_negative(line, inner);
                    return Ok(line_outcome(line, outer));
                }
                if region_cuts_at(hi) {
                    lo = hi;
                    hi *= 2.0;
                } else {
                    break;
                }
            }
            (lo, hi)
        }
    };

    // Binary search the boolean transition to the stated parameter tolerance
    // (bounded iterations: the interval may bottom out at one ulp first).
    let tol = 1e-12 * (1.0 + scale);
    for _ in 0..120 {
        if hi - lo <= tol {
            break;
        }
        let mid_t = 0.5 * (lo + hi);
        if mid_t <= lo || mid_t >= hi {
            break;
        }
        if region_cuts_at(mid_t) {
            lo = mid_t;
        } else {
            hi = mid_t;
        }
    }
    Ok(finish_step5(circle_on_bisector(sites, i, j, hi), sites[i], sites[j], outer))
}

fn orient_line_negative(line: Line2, inner: &Polygon) -> Line2 {
    let worst = inner
        .vertices()
        .iter()
        .map(|p| line.signed_distance(*p))
        .fold(f64::NEG_INFINITY, f64::max);
    if worst > 0.0 {
        line.flipped()
    } else {
        line
    }
}

fn line_outcome(line: Line2, outer: &Polygon) -> Outcome {
    // The line separates when the excluded interior stays out of the open
    // negative halfplane.
    let tol = eps() * (1.0 + outer.scale());
    let invades = outer.vertices().iter().any(|p| line.signed_distance(*p) < -tol);
    if invades {
        Outcome::Blocked(None)
    } else {
        Outcome::Candidate(GeneralizedCircle::Degenerate { line, interior_negative: true })
    }
}

/// Step 5: accept the tangent circle unless its complementary region still
/// cuts the excluded polygon.
fn finish_step5(circle: Circle2, s_p: Point2, s_q: Point2, outer: &Polygon) -> Outcome {
    let arc = match Arc2::new(circle, s_p, s_q) {
        Ok(arc) => arc,
        Err(_) => return Outcome::Blocked(None),
    };
    let complement = CircularSegment::complement_of_arc(&arc);
    if complement.intersects_polygon_interior(outer) {
        let tangency = contact_point(&arc, outer);
        Outcome::Blocked(Some(StepFiveState { circle, s_p, s_q, tangency }))
    } else {
        Outcome::Candidate(GeneralizedCircle::Finite(circle))
    }
}

/// Point of the excluded polygon's boundary closest to the arc region — the
/// external tangency point of the step-4 circle.
fn contact_point(arc: &Arc2, outer: &Polygon) -> Point2 {
    let region = CircularSegment::of_arc(arc);
    let mut best = (f64::INFINITY, outer.vertex(0));
    for e in outer.edges() {
        let (d, p) = region.closest_on_segment(e);
        if d < best.0 {
            best = (d, p);
        }
    }
    best.1
}

/// Do the two open polygon interiors intersect?
pub fn interiors_intersect(p: &Polygon, q: &Polygon) -> bool {
    for ep in p.edges() {
        for eq in q.edges() {
            if ep.crosses_interior(&eq) {
                return true;
            }
        }
    }
    p.vertices().iter().any(|v| point_in_polygon(*v, q) == Location::Interior)
        || q.vertices().iter().any(|v| point_in_polygon(*v, p) == Location::Interior)
}

/// Verifies a candidate circle: the closed disk must contain every vertex of
/// `inner`, the open disk no interior point of `outer`.
fn candidate_is_sound(c: &GeneralizedCircle, inner: &Polygon, outer: &Polygon) -> bool {
    match c {
        GeneralizedCircle::Finite(circle) => {
            let tol = eps() * (1.0 + circle.radius);
            if inner
                .vertices()
                .iter()
                .any(|v| circle.center.distance(*v) > circle.radius + tol)
            {
                return false;
            }
            !disk_meets_interior(circle, outer)
        }
        GeneralizedCircle::Degenerate { line, .. } => {
            let tol = eps() * (1.0 + inner.scale().max(outer.scale()));
            inner.vertices().iter().all(|v| line.signed_distance(*v) <= tol)
                && outer.vertices().iter().all(|v| line.signed_distance(*v) >= -tol)
        }
    }
}

fn disk_meets_interior(circle: &Circle2, poly: &Polygon) -> bool {
    let tol = eps() * (1.0 + circle.radius);
    for e in poly.edges() {
        if crate::geom::distance_point_segment(circle.center, e) < circle.radius - tol {
            return true;
        }
    }
    point_in_polygon(circle.center, poly) == Location::Interior
}

/// Decides circular separability of two simple polygons and returns the
/// smallest separating circle, a separating line, a witness, or the fact
/// that the interiors intersect.
pub fn smallest_separating_circle(
    p: &Polygon,
    q: &Polygon,
) -> Result<SeparationResult, SeparabilityError> {
    let d1 = directional_scan(p, q)?;
    let d2 = directional_scan(q, p)?;

    let mut best: Option<(GeneralizedCircle, Direction)> = None;
    let mut consider = |c: GeneralizedCircle, dir: Direction| {
        let (inner, outer) = match dir {
            Direction::PInside => (p, q),
            Direction::QInside => (q, p),
        };
        if !candidate_is_sound(&c, inner, outer) {
            return;
        }
        let better = match &best {
            None => true,
            Some((cur, _)) => c.radius() < cur.radius(),
        };
        if better {
            best = Some((c, dir));
        }
    };
    if let Outcome::Candidate(c) = &d1 {
        consider(c.clone(), Direction::PInside);
    }
    if let Outcome::Candidate(c) = &d2 {
        consider(c.clone(), Direction::QInside);
    }
    if let Some((circle, inside)) = best {
        return Ok(SeparationResult::Separable { circle, inside });
    }

    if interiors_intersect(p, q) {
        return Ok(SeparationResult::PolygonsIntersect);
    }

    // Not separable: build the Lemma-2 witness, preferring a step-5 state.
    if let Outcome::Blocked(Some(state)) = &d1 {
        if let Some(w) = witness_from_state(state, p, q, Direction::PInside) {
            return Ok(SeparationResult::NotSeparable { witness: w });
        }
    }
    if let Outcome::Blocked(Some(state)) = &d2 {
        if let Some(w) = witness_from_state(state, q, p, Direction::QInside) {
            return Ok(SeparationResult::NotSeparable { witness: w });
        }
    }
    if let Some(w) = line_witness(p, q) {
        return Ok(SeparationResult::NotSeparable { witness: w });
    }
    Err(SeparabilityError::WitnessConstructionFailed)
}

/// Checks every witness invariant; exposed so tests and callers can audit
/// results independently.
pub fn witness_is_valid(w: &Witness, p: &Polygon, q: &Polygon) -> bool {
    let r = w.circle.radius;
    let tol = 1e-9 * (1.0 + r);
    // On the circle.
    if w.points.iter().any(|(pt, _)| (w.circle.center.distance(*pt) - r).abs() > tol) {
        return false;
    }
    // Alternating labels.
    for k in 0..4 {
        if w.points[k].1 == w.points[(k + 1) % 4].1 {
            return false;
        }
    }
    // Counterclockwise order on the circle.
    let angles: Vec<f64> = w
        .points
        .iter()
        .map(|(pt, _)| (*pt - w.circle.center).angle())
        .collect();
    let mut sweep_total = 0.0;
    for k in 0..4 {
        let mut d = angles[(k + 1) % 4] - angles[k];
        while d < 0.0 {
            d += std::f64::consts::TAU;
        }
        sweep_total += d;
    }
    if (sweep_total - std::f64::consts::TAU).abs() > 1e-6 {
        return false;
    }
    // Strict interiors.
    w.points.iter().all(|(pt, label)| {
        let poly = match label {
            PolygonLabel::P => p,
            PolygonLabel::Q => q,
        };
        point_in_polygon(*pt, poly) == Location::Interior
    })
}

/// Lemma-2 perturbation: shrink the tangent circle so it swallows the
/// tangency point, releases the two hull vertices, and still reaches an
/// interior point of the excluded polygon on the complementary side.
///
/// `inner` is the polygon the scan enclosed, `outer` the excluded one.
fn witness_from_state(
    state: &StepFiveState,
    inner: &Polygon,
    outer: &Polygon,
    dir: Direction,
) -> Option<Witness> {
    let scale = inner.scale().max(outer.scale());
    let (label_in, label_out) = match dir {
        Direction::PInside => (PolygonLabel::P, PolygonLabel::Q),
        Direction::QInside => (PolygonLabel::Q, PolygonLabel::P),
    };

    let x_on_complement = circle_point_inside(&state.circle, outer, state.s_q, state.s_p)?;
    let dir_p = inward_direction(inner, state.s_p)?;
    let dir_q = inward_direction(inner, state.s_q)?;
    let dir_y = interior_direction_at(outer, state.tangency)?;

    let mut delta = 1e-2 * scale;
    while delta >= 1e-10 * scale {
        let t1 = state.tangency + dir_y * delta;
        let t2 = state.s_p + dir_p * delta;
        let t4 = state.s_q + dir_q * delta;
        if let Ok(circle) = crate::geom::circumcircle(t1, t2, t4) {
            // Put the fourth point exactly on the fitted circle.
            let v = x_on_complement - circle.center;
            if v.norm() > 0.0 {
                let x = circle.center + v * (circle.radius / v.norm());
                let witness = order_witness(circle, [
                    (t1, label_out),
                    (t2, label_in),
                    (x, label_out),
                    (t4, label_in),
                ]);
                let (p, q) = match dir {
                    Direction::PInside => (inner, outer),
                    Direction::QInside => (outer, inner),
                };
                if witness_is_valid(&witness, p, q) {
                    return Some(witness);
                }
            }
        }
        delta *= 0.1;
    }
    None
}

fn order_witness(circle: Circle2, pts: [(Point2, PolygonLabel); 4]) -> Witness {
    let mut pts = pts;
    pts.sort_by(|a, b| {
        let aa = (a.0 - circle.center).angle();
        let ab = (b.0 - circle.center).angle();
        aa.total_cmp(&ab)
    });
    Witness { circle, points: pts }
}

/// A point of `poly`'s interior lying on the circle, restricted to the
/// counterclockwise arc from `from` to `to`.
fn circle_point_inside(
    circle: &Circle2,
    poly: &Polygon,
    from: Point2,
    to: Point2,
) -> Option<Point2> {
    let a0 = (from - circle.center).angle();
    let mut a1 = (to - circle.center).angle();
    while a1 <= a0 {
        a1 += std::f64::consts::TAU;
    }
    // Crossing angles of the circle with the polygon boundary.
    let mut angles = vec![a0, a1];
    for e in poly.edges() {
        for p in segment_circle_intersections(e, circle) {
            let mut ang = (p - circle.center).angle();
            while ang < a0 {
                ang += std::f64::consts::TAU;
            }
            if ang <= a1 {
                angles.push(ang);
            }
        }
    }
    angles.sort_by(f64::total_cmp);
    for w in angles.windows(2) {
        let mid = circle.point_at(0.5 * (w[0] + w[1]));
        if point_in_polygon(mid, poly) == Location::Interior {
            return Some(mid);
        }
    }
    None
}

fn segment_circle_intersections(seg: Segment2, circle: &Circle2) -> Vec<Point2> {
    let d = seg.b - seg.a;
    let f = seg.a - circle.center;
    let a = d.norm_sq();
    if a == 0.0 {
        return Vec::new();
    }
    let b = 2.0 * f.dot(d);
    let c = f.norm_sq() - circle.radius * circle.radius;
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
        .into_iter()
        .filter(|t| (0.0..=1.0).contains(t))
        .map(|t| seg.a.lerp(seg.b, t))
        .collect()
}

/// Inward bisector direction at a vertex of the polygon (the vertex must be
/// convex, which hull vertices are).
fn inward_direction(poly: &Polygon, vertex: Point2) -> Option<Vec2> {
    let n = poly.len();
    let idx = (0..n).find(|&i| poly.vertex(i) == vertex)?;
    let prev = poly.vertex(idx + n - 1);
    let next = poly.vertex(idx + 1);
    let d1 = (prev - vertex).normalized();
    let d2 = (next - vertex).normalized();
    let sum = d1 + d2;
    if sum.norm() > 1e-9 {
        let bis = sum.normalized();
        // For a convex vertex of a ccw polygon the bisector points inward.
        Some(bis)
    } else {
        // Straight spike; use the inward normal of the outgoing edge.
        Some((next - vertex).normalized().perp())
    }
}

/// Direction moving off the boundary point `p` into the polygon's interior.
fn interior_direction_at(poly: &Polygon, p: Point2) -> Option<Vec2> {
    let scale = poly.scale();
    // Vertex tangency first.
    for i in 0..poly.len() {
        if poly.vertex(i).distance(p) <= 1e-9 * scale {
            return inward_direction(poly, poly.vertex(i));
        }
    }
    for i in 0..poly.len() {
        let e = poly.edge(i);
        if crate::geom::distance_point_segment(p, e) <= 1e-9 * scale {
            return Some((e.b - e.a).normalized().perp());
        }
    }
    None
}

/// Witness from four alternating interior points on a line, lifted onto a
/// large circle. Applies when each polygon's interior invades the other's
/// hull.
fn line_witness(p: &Polygon, q: &Polygon) -> Option<Witness> {
    let scale = p.scale().max(q.scale());
    let mut candidates: Vec<Line2> = Vec::new();

    let probe_p = interior_point_in_hull_pocket(p, q);
    let probe_q = interior_point_in_hull_pocket(q, p);
    if let Some((pt, lid)) = &probe_p {
        candidates.push(parallel_line_through(*pt, lid));
    }
    if let Some((pt, lid)) = &probe_q {
        candidates.push(parallel_line_through(*pt, lid));
    }
    if let (Some((pp, _)), Some((pq, _))) = (&probe_p, &probe_q) {
        if let Some(l) = Line2::through(*pp, *pq) {
            candidates.push(l);
        }
    }

    for line in candidates {
        if let Some(points) = four_alternating_on_line(&line, p, q) {
            if let Some(w) = lift_collinear_witness(points, p, q, scale) {
                return Some(w);
            }
        }
    }
    None
}

fn parallel_line_through(p: Point2, lid: &Segment2) -> Line2 {
    let d = lid.b - lid.a;
    Line2::new(-d.y, d.x, d.y * p.x - d.x * p.y).expect("hull edge has positive length")
}

/// A point of `Int(a)` inside a pocket of `b` (inside `CH(b)`, outside `b`),
/// together with the hull edge closing that pocket.
fn interior_point_in_hull_pocket(a: &Polygon, b: &Polygon) -> Option<(Point2, Segment2)> {
    let hull_b = convex_hull_simple_polygon(b).ok()?;
    let scale = a.scale().max(b.scale());
    for he_idx in 0..hull_b.len() {
        let lid = hull_b.edge(he_idx);
        for ea_idx in 0..a.len() {
            let ea = a.edge(ea_idx);
            if !ea.crosses_interior(&lid) {
                continue;
            }
            // Crossing point of the two segments.
            let z = segment_intersection_point(ea, lid)?;
            let dir = (ea.b - ea.a).normalized();
            let inward_hull = inward_hull_normal(&hull_b, he_idx);
            let step = dir * (1e-6 * scale);
            let step = if step.dot(inward_hull) >= 0.0 { step } else { -step };
            for k in 1..=6 {
                let f = 10f64.powi(-(k as i32));
                let z_in = z + step * (f * 1e6);
                let side = dir.perp() * (f * 1e-1 * scale);
                for cand in [z_in + side, z_in - side] {
                    if point_in_polygon(cand, a) == Location::Interior
                        && hull_b.locate_point(cand) == Location::Interior
                        && point_in_polygon(cand, b) == Location::Exterior
                    {
                        return Some((cand, lid));
                    }
                }
            }
        }
    }
    None
}

fn inward_hull_normal(hull: &crate::geom::ConvexPolygon, edge: usize) -> Vec2 {
    let e = hull.edge(edge);
    (e.b - e.a).normalized().perp()
}

fn segment_intersection_point(s: Segment2, t: Segment2) -> Option<Point2> {
    let r = s.b - s.a;
    let d = t.b - t.a;
    let denom = r.cross(d);
    if denom.abs() < 1e-300 {
        return None;
    }
    let u = (t.a - s.a).cross(d) / denom;
    Some(s.a + r * u)
}

/// Midpoints of interior intervals of both polygons along the line, in order,
/// when they alternate P, Q, P, Q (or Q, P, Q, P).
fn four_alternating_on_line(
    line: &Line2,
    p: &Polygon,
    q: &Polygon,
) -> Option<[(Point2, PolygonLabel); 4]> {
    let origin = line.project(Point2::new(0.0, 0.0));
    let dir = line.direction();
    let param = |pt: Point2| (pt - origin).dot(dir);
    let point = |t: f64| origin + dir * t;

    let mut intervals: Vec<(f64, f64, PolygonLabel)> = Vec::new();
    for (poly, label) in [(p, PolygonLabel::P), (q, PolygonLabel::Q)] {
        let mut ts: Vec<f64> = Vec::new();
        for e in poly.edges() {
            let da = line.signed_distance(e.a);
            let db = line.signed_distance(e.b);
            if (da > 0.0) != (db > 0.0) {
                let t = da / (da - db);
                ts.push(param(e.a.lerp(e.b, t)));
            }
        }
        ts.sort_by(f64::total_cmp);
        // Parity pairing: inside between even and odd crossings.
        let mut k = 0;
        while k + 1 < ts.len() {
            intervals.push((ts[k], ts[k + 1], label));
            k += 2;
        }
    }
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Keep only intervals whose midpoint really is interior (guards against
    // grazing crossings through vertices).
    let mids: Vec<(f64, PolygonLabel)> = intervals
        .iter()
        .filter_map(|(a, b, label)| {
            let t = 0.5 * (a + b);
            let poly = match label {
                PolygonLabel::P => p,
                PolygonLabel::Q => q,
            };
            (point_in_polygon(point(t), poly) == Location::Interior).then_some((t, *label))
        })
        .collect();
    // Greedy alternating subsequence of length 4.
    for start in 0..mids.len() {
        let mut picked = vec![mids[start]];
        for &cand in &mids[start + 1..] {
            if cand.1 != picked.last().unwrap().1 {
                picked.push(cand);
                if picked.len() == 4 {
                    let mk = |(t, label): (f64, PolygonLabel)| (point(t), label);
                    return Some([mk(picked[0]), mk(picked[1]), mk(picked[2]), mk(picked[3])]);
                }
            }
        }
    }
    None
}

/// Bends four collinear labeled points onto a circle large enough that each
/// stays strictly interior to its polygon.
fn lift_collinear_witness(
    pts: [(Point2, PolygonLabel); 4],
    p: &Polygon,
    q: &Polygon,
    scale: f64,
) -> Option<Witness> {
    let clearance = pts
        .iter()
        .map(|(pt, label)| {
            let poly = match label {
                PolygonLabel::P => p,
                PolygonLabel::Q => q,
            };
            distance_point_polygon_boundary(*pt, poly)
        })
        .fold(f64::INFINITY, f64::min);
    if clearance <= 0.0 {
        return None;
    }
    let first = pts[0].0;
    let last = pts[3].0;
    let spread = first.distance(last).max(1e-12 * scale);
    let radius = (spread * spread / clearance).max(16.0 * spread);
    let mid = first.midpoint(last);
    let dir = (last - first).normalized();
    let center = mid + dir.perp() * radius;
    let project = |pt: Point2| {
        let v = pt - center;
        center + v * (radius / v.norm())
    };
    let lifted = [
        (project(pts[0].0), pts[0].1),
        (project(pts[1].0), pts[1].1),
        (project(pts[2].0), pts[2].1),
        (project(pts[3].0), pts[3].1),
    ];
    let witness = order_witness(Circle2::new(center, radius), lifted);
    witness_is_valid(&witness, p, q).then_some(witness)
}
