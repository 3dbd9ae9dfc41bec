//! Largest-inscribed-circle queries on a preprocessed convex polygon, under
//! point, point-set, halfplane, wedge, and mixed point/line constraints.

use crate::geom::{eps, Circle2, ConvexPolygon, Line2, Point2, Vec2};
use crate::hierarchy::{build_hierarchy, DKHierarchy, ExtremalPoint, Line3, Parabola};
use crate::lift::{build_lifted_surface, LiftedSurface};
use crate::planar_map::{build_planar_map, Located, PlanarMap};
use crate::skeleton::{build_skeleton, edge_line, SkeletonTree};

/// Outcome of an inscribed-circle query.
#[derive(Debug, Clone, PartialEq)]
pub enum InscribedResult {
    Circle(Circle2),
    Infeasible,
}

impl InscribedResult {
    pub fn circle(&self) -> Option<&Circle2> {
        match self {
            InscribedResult::Circle(c) => Some(c),
            InscribedResult::Infeasible => None,
        }
    }
}

/// Contract violations distinct from geometric infeasibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryError {
    PointNotInHalfplane,
}

impl std::fmt::Display for QueryError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QueryError::PointNotInHalfplane => write!(f, "query point outside the halfplane"),
        }
    }
}

impl std::error::Error for QueryError {}

/// A convex polygon with every structure of the preprocessing phase.
#[derive(Debug, Clone)]
pub struct PreprocessedPolygon {
    pub polygon: ConvexPolygon,
    pub skt: SkeletonTree,
    pub map: PlanarMap,
    pub surface: LiftedSurface,
    pub hierarchy: DKHierarchy,
    pub incircle: Circle2,
}

impl PreprocessedPolygon {
    pub fn build(polygon: ConvexPolygon) -> PreprocessedPolygon {
        let skt = build_skeleton(&polygon);
        let map = build_planar_map(&skt);
        let surface = build_lifted_surface(&skt);
        let hierarchy = build_hierarchy(&surface, &polygon);
        let incircle = skt.incircle();
        PreprocessedPolygon { polygon, skt, map, surface, hierarchy, incircle }
    }

    fn tol(&self) -> f64 {
        eps() * (1.0 + self.polygon.scale())
    }
}

/// Largest internal circle through `p` tangent to the two edge lines of a
/// pair, solved on their bisector.
pub fn largest_through_point_on_pair(
    skt: &SkeletonTree,
    pair: (usize, usize),
    p: Point2,
) -> Option<Circle2> {
    let la = edge_line(&skt.polygon, pair.0);
    let lb = edge_line(&skt.polygon, pair.1);
    let det = la.a * lb.b - la.b * lb.a;
    if det.abs() < 1e-12 {
        // Antiparallel pair: the radius is pinned at half the gap.
        let rho = 0.5 * (la.c + lb.c).abs();
        // Midline point nearest p, then slide to put p on the circle.
        let mid_sd = 0.5 * (la.signed_distance(p) - lb.signed_distance(p));
        let foot = p - la.normal() * mid_sd;
        let along_sq = rho * rho - mid_sd * mid_sd;
        if along_sq < -1e-12 * (1.0 + rho) {
            return None;
        }
        let along = along_sq.max(0.0).sqrt();
        let dir = la.direction();
        let c1 = foot + dir * along;
        let c2 = foot - dir * along;
        let c = if c1.lex_le(c2) { c1 } else { c2 };
        return Some(Circle2::new(c, rho));
    }
    // Point with sd_a = sd_b = 0, and direction v with sd growing at unit rate
    // on both lines.
    let q0 = la.intersection(&lb)?;
    let vx = (lb.b - la.b) / det;
    let vy = (la.a - lb.a) / det;
    let v = Vec2::new(vx, vy);
    // |q0 + rho v - p|^2 = rho^2
    let w = q0 - p;
    let a = v.norm_sq() - 1.0;
    let b = 2.0 * w.dot(v);
    let c = w.norm_sq();
    let rho = if a.abs() < 1e-14 {
        if b.abs() < 1e-300 {
            return None;
        }
        -c / b
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let s = disc.sqrt();
        let r1 = (-b - s) / (2.0 * a);
        let r2 = (-b + s) / (2.0 * a);
        r1.max(r2)
    };
    if !(rho.is_finite() && rho >= 0.0) {
        return None;
    }
    Some(Circle2::new(q0 + v * rho, rho))
}

/// Largest circle internal to the polygon containing the query point.
pub fn query_point(pp: &PreprocessedPolygon, x: Point2) -> InscribedResult {
    match pp.map.locate(x) {
        Located::Outside => InscribedResult::Infeasible,
        Located::Incircle => InscribedResult::Circle(pp.incircle),
        Located::Cell(c) => {
            let pair = pp.map.cells[c].edge_pair;
            match largest_through_point_on_pair(&pp.skt, pair, x) {
                Some(circle) => InscribedResult::Circle(circle),
                None => InscribedResult::Infeasible,
            }
        }
    }
}

/// Largest circle internal to the polygon containing every query point.
///
/// Locates each point, checks the located cells form a descending path of
/// the skeleton (preorder/postorder ancestry), takes the smallest per-point
/// circle as candidate, and verifies containment.
pub fn query_point_set(pp: &PreprocessedPolygon, points: &[Point2]) -> InscribedResult {
    assert!(!points.is_empty(), "point-set query needs at least one point");
    let mut keys: Vec<usize> = Vec::with_capacity(points.len());
    for &p in points {
        match pp.map.locate(p) {
            Located::Outside => return InscribedResult::Infeasible,
            Located::Incircle => keys.push(pp.skt.root),
            Located::Cell(c) => keys.push(pp.map.cells[c].child),
        }
    }
    // The key vertices must lie on one root-to-leaf path.
    keys.sort_by_key(|&v| pp.skt.vertices[v].depth);
    keys.dedup();
    for w in keys.windows(2) {
        if !pp.skt.is_ancestor(w[0], w[1]) {
            return InscribedResult::Infeasible;
        }
    }
    let mut best: Option<Circle2> = None;
    for &p in points {
        match query_point(pp, p) {
            InscribedResult::Infeasible => return InscribedResult::Infeasible,
            InscribedResult::Circle(c) => {
                if best.as_ref().map_or(true, |b| c.radius < b.radius) {
                    best = Some(c);
                }
            }
        }
    }
    let candidate = best.expect("nonempty input");
    let tol = pp.tol() + eps() * candidate.radius;
    if points.iter().all(|p| candidate.center.distance(*p) <= candidate.radius + tol) {
        InscribedResult::Circle(candidate)
    } else {
        InscribedResult::Infeasible
    }
}

/// Largest circle containing the point set and internal to the polygon,
/// computed without any preprocessed structure: a concave maximization over
/// the clearance envelope with an exact active-constraint polish.
///
/// Serves as the independent route cross-checked against
/// [`query_point_set`].
pub fn smallest_internal_circle_containing(
    polygon: &ConvexPolygon,
    points: &[Point2],
) -> InscribedResult {
    assert!(points.len() >= 2, "needs at least two points");
    let lines: Vec<Line2> = (0..polygon.len()).map(|i| edge_line(polygon, i)).collect();
    let scale = polygon.scale();
    let clearance = |c: Point2| -> f64 {
        lines
            .iter()
            .map(|l| l.signed_distance(c))
            .fold(f64::INFINITY, f64::min)
    };
    let maxdist = |c: Point2| -> f64 {
        points
            .iter()
            .map(|p| c.distance(*p))
            .fold(0.0f64, f64::max)
    };
    let slack = |c: Point2| clearance(c) - maxdist(c);

    let (lo, hi) = polygon.to_polygon().bounding_box();
    // Nested ternary maximization of a concave function of the center.
    let maximize = |f: &dyn Fn(Point2) -> f64| -> Point2 {
        let inner_max = |x: f64| -> (f64, f64) {
            let (mut a, mut b) = (lo.y, hi.y);
            for _ in 0..64 {
                let m1 = a + (b - a) / 3.0;
                let m2 = b - (b - a) / 3.0;
                if f(Point2::new(x, m1)) < f(Point2::new(x, m2)) {
                    a = m1;
                } else {
                    b = m2;
                }
            }
            let y = 0.5 * (a + b);
            (f(Point2::new(x, y)), y)
        };
        let (mut a, mut b) = (lo.x, hi.x);
        for _ in 0..64 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if inner_max(m1).0 < inner_max(m2).0 {
                a = m1;
            } else {
                b = m2;
            }
        }
        let x = 0.5 * (a + b);
        Point2::new(x, inner_max(x).1)
    };

    let seed = maximize(&slack);
    if slack(seed) < -1e-9 * (1.0 + scale) {
        return InscribedResult::Infeasible;
    }

    // Penalized concave surrogate pushes the maximum toward the constrained
    // optimum of the clearance.
    let surrogate = |c: Point2| clearance(c) + 8.0 * slack(c).min(0.0);
    let mut cand = maximize(&surrogate);
    if slack(cand) < 0.0 {
        // Project back to feasibility along the segment toward the seed.
        let (mut t_bad, mut t_good) = (0.0f64, 1.0f64);
        for _ in 0..80 {
            let m = 0.5 * (t_bad + t_good);
            if slack(cand.lerp(seed, m)) >= 0.0 {
                t_good = m;
            } else {
                t_bad = m;
            }
        }
        cand = cand.lerp(seed, t_good);
    }
    let mut best = Circle2::new(cand, clearance(cand).max(0.0));

    // Exact polish: solve every small combination of active constraints and
    // keep the best fully feasible circle.
    let r0 = best.radius;
    let act_tol = (1e-5 * (1.0 + r0)).max(1e-12);
    let active_edges: Vec<usize> = (0..lines.len())
        .filter(|&i| lines[i].signed_distance(cand) <= r0 + act_tol)
        .collect();
    let md = maxdist(cand);
    let active_pts: Vec<Point2> = points
        .iter()
        .copied()
        .filter(|p| cand.distance(*p) >= md - act_tol)
        .collect();
    let feasible = |c: &Circle2| -> bool {
        let tol = 1e-9 * (1.0 + c.radius);
        lines.iter().all(|l| l.signed_distance(c.center) >= c.radius - tol)
            && points.iter().all(|p| c.center.distance(*p) <= c.radius + tol)
    };
    let mut consider = |c: Option<Circle2>, best: &mut Circle2| {
        if let Some(c) = c {
            if c.radius > best.radius && feasible(&c) {
                *best = c;
            }
        }
    };
    for (i, &ea) in active_edges.iter().enumerate() {
        for &eb in active_edges.iter().skip(i + 1) {
            // EEE
            for &ec in active_edges.iter() {
                if ec == ea || ec == eb {
                    continue;
                }
                consider(tangent_three_lines(&lines[ea], &lines[eb], &lines[ec]), &mut best);
            }
            // EE + V
            for &p in &active_pts {
                consider(tangent_two_lines_point(&lines[ea], &lines[eb], p), &mut best);
            }
            // EE antiparallel slab
            consider(slab_circle(&lines[ea], &lines[eb], cand), &mut best);
        }
        // E + VV
        for (j, &p1) in active_pts.iter().enumerate() {
            for &p2 in active_pts.iter().skip(j + 1) {
                consider(tangent_line_two_points(&lines[ea], p1, p2), &mut best);
            }
        }
    }
    if best.radius <= 1e-12 * (1.0 + scale) && slack(best.center) < -1e-9 * (1.0 + scale) {
        return InscribedResult::Infeasible;
    }
    InscribedResult::Circle(best)
}

fn tangent_three_lines(a: &Line2, b: &Line2, c: &Line2) -> Option<Circle2> {
    // n_k . c + c_k = r, linear in (x, y, r).
    let m = [
        [a.a, a.b, -1.0, -a.c],
        [b.a, b.b, -1.0, -b.c],
        [c.a, c.b, -1.0, -c.c],
    ];
    let (x, y, r) = solve3(m)?;
    (r.is_finite() && r >= 0.0).then(|| Circle2::new(Point2::new(x, y), r))
}

fn solve3(mut m: [[f64; 4]; 3]) -> Option<(f64, f64, f64)> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, piv);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    Some((m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]))
}

fn tangent_two_lines_point(a: &Line2, b: &Line2, p: Point2) -> Option<Circle2> {
    let det = a.a * b.b - a.b * b.a;
    if det.abs() < 1e-12 {
        return None;
    }
    let q0 = a.intersection(b)?;
    let v = Vec2::new((b.b - a.b) / det, (a.a - b.a) / det);
    let w = q0 - p;
    let aa = v.norm_sq() - 1.0;
    let bb = 2.0 * w.dot(v);
    let cc = w.norm_sq();
    let rho = if aa.abs() < 1e-14 {
        (bb.abs() > 1e-300).then(|| -cc / bb)?
    } else {
        let disc = bb * bb - 4.0 * aa * cc;
        if disc < 0.0 {
            return None;
        }
        ((-bb - disc.sqrt()) / (2.0 * aa)).max((-bb + disc.sqrt()) / (2.0 * aa))
    };
    (rho.is_finite() && rho >= 0.0).then(|| Circle2::new(q0 + v * rho, rho))
}

fn tangent_line_two_points(l: &Line2, p1: Point2, p2: Point2) -> Option<Circle2> {
    // Center on the perpendicular bisector of (p1, p2) at distance r from l.
    let mid = p1.midpoint(p2);
    let d = (p2 - p1).perp().normalized();
    // c(t) = mid + t d; r(t) = l.sd(c(t)) (affine); |c(t) - p1|^2 = r(t)^2.
    let r0 = l.signed_distance(mid);
    let r1 = l.a * d.x + l.b * d.y; // d r / d t
    let w = mid - p1;
    // (w + t d)^2 = (r0 + r1 t)^2
    let aa = 1.0 - r1 * r1;
    let bb = 2.0 * (w.dot(d) - r0 * r1);
    let cc = w.norm_sq() - r0 * r0;
    let ts: Vec<f64> = if aa.abs() < 1e-14 {
        if bb.abs() < 1e-300 {
            return None;
        }
        vec![-cc / bb]
    } else {
        let disc = bb * bb - 4.0 * aa * cc;
        if disc < 0.0 {
            return None;
        }
        let s = disc.sqrt();
        vec![(-bb - s) / (2.0 * aa), (-bb + s) / (2.0 * aa)]
    };
    ts.into_iter()
        .map(|t| (mid + d * t, r0 + r1 * t))
        .filter(|(_, r)| r.is_finite() && *r >= 0.0)
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(c, r)| Circle2::new(c, r))
}

fn slab_circle(a: &Line2, b: &Line2, near: Point2) -> Option<Circle2> {
    let det = a.a * b.b - a.b * b.a;
    if det.abs() > 1e-12 {
        return None;
    }
    // Antiparallel normals: midline circle through the projection of `near`.
    let r = 0.5 * (a.c + b.c).abs();
    let sd = a.signed_distance(near);
    let c = near - a.normal() * (sd - r);
    Some(Circle2::new(c, r))
}

/// Largest circle internal to the polygon lying in the closed halfplane.
pub fn query_halfplane(pp: &PreprocessedPolygon, l: &Line2) -> InscribedResult {
    let tol = pp.tol();
    let root = &pp.skt.vertices[pp.skt.root];
    if l.signed_distance(root.center) >= root.clearance - tol {
        return InscribedResult::Circle(pp.incircle);
    }
    // Farthest vertex inside the halfplane.
    let vf_idx = pp.map.nav.extreme_vertex(l.normal());
    let vf = pp.polygon.vertex(vf_idx);
    if l.signed_distance(vf) <= tol {
        return InscribedResult::Infeasible;
    }
    let leaf = pp.skt.leaf_of(vf_idx);
    let g = |v: usize| l.signed_distance(pp.skt.vertices[v].center) - pp.skt.vertices[v].clearance;

    // Binary search the sign change of g along the root-to-leaf path using
    // the power-of-two ancestor table.
    let depth = pp.skt.vertices[leaf].depth;
    let at_depth = |d: usize| pp.skt.ancestor(leaf, depth - d);
    let (mut lo_d, mut hi_d) = (0usize, depth);
    if g(at_depth(0)) > 0.0 {
        // The root already satisfies the halfplane; handled above, but guard.
        return InscribedResult::Circle(pp.incircle);
    }
    while hi_d - lo_d > 1 {
        let mid = (lo_d + hi_d) / 2;
        if g(at_depth(mid)) <= 0.0 {
            lo_d = mid;
        } else {
            hi_d = mid;
        }
    }
    let mut u = at_depth(lo_d);
    let mut v = at_depth(hi_d);
    if !(g(u) <= 0.0 && g(v) > 0.0) {
        // Fallback: the sign pattern was not monotone; scan the path.
        let mut found = None;
        let mut cur = leaf;
        while let Some(par) = pp.skt.vertices[cur].parent {
            if g(par) <= 0.0 && g(cur) > 0.0 {
                found = Some((par, cur));
            }
            cur = par;
        }
        match found {
            Some((a, b)) => {
                u = a;
                v = b;
            }
            None => return InscribedResult::Infeasible,
        }
    }

    // Solve on the edge: both the signed distance and the clearance are
    // affine along the straight skeleton segment.
    let cu = pp.skt.vertices[u].center;
    let cv = pp.skt.vertices[v].center;
    let (ru, rv) = (pp.skt.vertices[u].clearance, pp.skt.vertices[v].clearance);
    let gu = l.signed_distance(cu) - ru;
    let gv = l.signed_distance(cv) - rv;
    let t = if (gv - gu).abs() < 1e-300 { 0.0 } else { (-gu / (gv - gu)).clamp(0.0, 1.0) };
    let center = cu.lerp(cv, t);
    let radius = ru + (rv - ru) * t;
    if radius < -tol {
        return InscribedResult::Infeasible;
    }
    InscribedResult::Circle(Circle2::new(center, radius.max(0.0)))
}

/// Largest circle internal to the polygon inside the closed wedge of two
/// halfplanes.
pub fn query_wedge(pp: &PreprocessedPolygon, l1: &Line2, l2: &Line2) -> InscribedResult {
    let tol = pp.tol();
    let root = &pp.skt.vertices[pp.skt.root];
    let fits = |c: &Circle2, l: &Line2| l.signed_distance(c.center) >= c.radius - tol - eps() * c.radius;
    if l1.signed_distance(root.center) >= root.clearance - tol
        && l2.signed_distance(root.center) >= root.clearance - tol
    {
        return InscribedResult::Circle(pp.incircle);
    }
    match query_halfplane(pp, l1) {
        InscribedResult::Infeasible => return InscribedResult::Infeasible,
        InscribedResult::Circle(c) => {
            if fits(&c, l2) {
                return InscribedResult::Circle(c);
            }
        }
    }
    match query_halfplane(pp, l2) {
        InscribedResult::Infeasible => return InscribedResult::Infeasible,
        InscribedResult::Circle(c) => {
            if fits(&c, l1) {
                return InscribedResult::Circle(c);
            }
        }
    }
    // Tangent to both lines: the lifted centers lie on the intersection line
    // of the two tilted halfplane boundaries.
    let Some(delta) = lifted_intersection_line(l1, l2) else {
        return InscribedResult::Infeasible;
    };
    let point = match pp.hierarchy.max_z_on_line(&delta) {
        ExtremalPoint::Point(p) => Some(p),
        ExtremalPoint::Empty => None,
        ExtremalPoint::CoarseMiss => max_z_on_line_envelope(pp, &delta),
    };
    match point {
        Some(p) if p[2] >= -tol => {
            InscribedResult::Circle(Circle2::new(Point2::new(p[0], p[1]), p[2].max(0.0)))
        }
        _ => InscribedResult::Infeasible,
    }
}

/// The 3D line `z = sd1(x, y) = sd2(x, y)`; `None` for parallel lines.
fn lifted_intersection_line(l1: &Line2, l2: &Line2) -> Option<Line3> {
    let diff = Line2::new(l1.a - l2.a, l1.b - l2.b, l1.c - l2.c)?;
    let q0 = diff.project(Point2::new(0.0, 0.0));
    let d = diff.direction();
    let z0 = l1.signed_distance(q0);
    let dz = l1.a * d.x + l1.b * d.y;
    Some(Line3 { origin: [q0.x, q0.y, z0], dir: [d.x, d.y, dz] })
}

/// Envelope fallback for line queries: clip to the polygon, then bisect the
/// concave margin `clearance - z` along the line.
fn max_z_on_line_envelope(pp: &PreprocessedPolygon, line: &Line3) -> Option<[f64; 3]> {
    let o = Point2::new(line.origin[0], line.origin[1]);
    let d = Vec2::new(line.dir[0], line.dir[1]);
    if d.norm() < 1e-15 {
        // Vertical line: the height is the clearance of the projection.
        let z = pp.map.clearance(o)?;
        return Some([o.x, o.y, z]);
    }
    let (mut t0, mut t1) = clip_line_to_convex(&pp.map.nav, o, d)?;
    let zat = |t: f64| line.origin[2] + t * line.dir[2];
    let margin = |t: f64| {
        let p = o + d * t;
        match pp.map.clearance(p) {
            Some(c) => c - zat(t),
            None => f64::NEG_INFINITY,
        }
    };
    // z >= 0 clip.
    if line.dir[2].abs() > 1e-15 {
        let tz = -line.origin[2] / line.dir[2];
        if line.dir[2] > 0.0 {
            t0 = t0.max(tz);
        } else {
            t1 = t1.min(tz);
        }
    } else if line.origin[2] < -1e-12 {
        return None;
    }
    if t0 > t1 {
        return None;
    }
    // Ternary max of the concave margin, then bisect its roots.
    let (mut a, mut b) = (t0, t1);
    for _ in 0..90 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if margin(m1) < margin(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    let t_peak = 0.5 * (a + b);
    if margin(t_peak) < -1e-9 * (1.0 + pp.polygon.scale()) {
        return None;
    }
    let mut ends = [t0, t1];
    for (side, end) in [(t0, 0usize), (t1, 1usize)] {
        if margin(side) >= 0.0 {
            ends[end] = side;
            continue;
        }
        let (mut bad, mut good) = (side, t_peak);
        for _ in 0..90 {
            let m = 0.5 * (bad + good);
            if margin(m) >= 0.0 {
                good = m;
            } else {
                bad = m;
            }
        }
        ends[end] = good;
    }
    let best = if zat(ends[0]) >= zat(ends[1]) { ends[0] } else { ends[1] };
    let p = o + d * best;
    Some([p.x, p.y, zat(best)])
}

/// Entry/exit parameters of a line through a convex polygon, by binary
/// search on the two boundary chains split at the extreme vertices.
fn clip_line_to_convex(
    nav: &crate::planar_map::ConvexNav,
    o: Point2,
    d: Vec2,
) -> Option<(f64, f64)> {
    let n = nav.len();
    let normal = d.perp();
    let sd = |p: Point2| (p - o).dot(normal);
    let i_pos = nav.extreme_vertex(normal);
    let i_neg = nav.extreme_vertex(-normal);
    if sd(nav.vertex(i_pos)) < 0.0 || sd(nav.vertex(i_neg)) > 0.0 {
        return None;
    }
    // Chain from i_pos to i_neg (ccw) has sd decreasing overall; find the
    // crossing edge by binary search, likewise on the other chain.
    let crossing = |from: usize, to: usize| -> Option<usize> {
        let len = (to + n - from) % n;
        let (mut lo, mut hi) = (0usize, len);
        // sd(from) >= 0 >= sd(to)
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if sd(nav.vertex((from + mid) % n)) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((from + lo) % n)
    };
    let e1 = crossing(i_pos, i_neg)?;
    let e2 = crossing(i_neg, i_pos)?;
    let mut ts = Vec::with_capacity(2);
    for e in [e1, e2] {
        let a = nav.vertex(e);
        let b = nav.vertex(e + 1);
        let (sa, sb) = (sd(a), sd(b));
        if (sa - sb).abs() < 1e-300 {
            continue;
        }
        let u = sa / (sa - sb);
        let p = a.lerp(b, u.clamp(0.0, 1.0));
        ts.push((p - o).dot(d) / d.norm_sq());
    }
    if ts.len() < 2 {
        return None;
    }
    Some((ts[0].min(ts[1]), ts[0].max(ts[1])))
}

/// Largest circle internal to the polygon, containing `x`, inside the closed
/// halfplane of `l`.
pub fn query_point_line(
    pp: &PreprocessedPolygon,
    l: &Line2,
    x: Point2,
) -> Result<InscribedResult, QueryError> {
    let tol = pp.tol();
    if l.signed_distance(x) < -tol {
        return Err(QueryError::PointNotInHalfplane);
    }
    let root = &pp.skt.vertices[pp.skt.root];
    let fits_line = |c: &Circle2| l.signed_distance(c.center) >= c.radius - tol - eps() * c.radius;
    let holds_point = |c: &Circle2| c.center.distance(x) <= c.radius + tol + eps() * c.radius;

    let incircle = pp.incircle;
    if holds_point(&incircle) && l.signed_distance(root.center) >= root.clearance - tol {
        return Ok(InscribedResult::Circle(incircle));
    }
    match query_point(pp, x) {
        InscribedResult::Infeasible => return Ok(InscribedResult::Infeasible),
        InscribedResult::Circle(c) => {
            if fits_line(&c) {
                return Ok(InscribedResult::Circle(c));
            }
        }
    }
    match query_halfplane(pp, l) {
        InscribedResult::Infeasible => return Ok(InscribedResult::Infeasible),
        InscribedResult::Circle(c) => {
            if holds_point(&c) {
                return Ok(InscribedResult::Circle(c));
            }
        }
    }
    // Tangent to the line and through the point: the lifted centers trace a
    // parabola.
    let result = match Parabola::new(x, l) {
        Some(par) => match pp.hierarchy.max_z_on_parabola(&par) {
            ExtremalPoint::Point(p) => Some(p),
            ExtremalPoint::Empty => None,
            ExtremalPoint::CoarseMiss => max_z_on_parabola_envelope(pp, &par),
        },
        None => {
            // The point sits on the line: circles tangent at x, centered on
            // the inward normal ray.
            ray_envelope(pp, x, l.normal())
        }
    };
    Ok(match result {
        Some(p) if p[2] >= -tol => {
            InscribedResult::Circle(Circle2::new(Point2::new(p[0], p[1]), p[2].max(0.0)))
        }
        _ => InscribedResult::Infeasible,
    })
}

/// Envelope fallback for the parabola: sample for a feasible seed, then
/// bisect the interval ends.
fn max_z_on_parabola_envelope(pp: &PreprocessedPolygon, par: &Parabola) -> Option<[f64; 3]> {
    let r_in = pp.incircle.radius;
    let reach = (2.0 * par.h * r_in - par.h * par.h).max(0.0).sqrt().max(par.h);
    let margin = |u: f64| {
        let p3 = par.at(u);
        let p = Point2::new(p3[0], p3[1]);
        match pp.map.clearance(p) {
            Some(c) => c - p3[2],
            None => f64::NEG_INFINITY,
        }
    };
    let samples = 96;
    let mut best: Option<(f64, f64)> = None;
    for k in 0..=samples {
        let u = -reach + 2.0 * reach * (k as f64 / samples as f64);
        let m = margin(u);
        if best.map_or(true, |(bm, _)| m > bm) {
            best = Some((m, u));
        }
    }
    let (m_best, u_seed) = best?;
    if m_best < 0.0 {
        return None;
    }
    // Bisect both interval ends from the feasible seed.
    let mut lo = u_seed;
    let mut hi = u_seed;
    let (mut bad, mut good) = (-reach * 1.5, u_seed);
    if margin(bad) >= 0.0 {
        lo = bad;
    } else {
        for _ in 0..80 {
            let m = 0.5 * (bad + good);
            if margin(m) >= 0.0 {
                good = m;
            } else {
                bad = m;
            }
        }
        lo = good;
    }
    let (mut bad, mut good) = (reach * 1.5, u_seed);
    if margin(bad) >= 0.0 {
        hi = bad;
    } else {
        for _ in 0..80 {
            let m = 0.5 * (bad + good);
            if margin(m) >= 0.0 {
                good = m;
            } else {
                bad = m;
            }
        }
        hi = good;
    }
    let (plo, phi) = (par.at(lo), par.at(hi));
    Some(if plo[2] >= phi[2] { plo } else { phi })
}

/// Largest internal circle tangent to a line at a boundary point: centers on
/// the inward normal ray, radius equal to the travel distance.
fn ray_envelope(pp: &PreprocessedPolygon, x: Point2, inward: Vec2) -> Option<[f64; 3]> {
    let r_in = pp.incircle.radius;
    let margin = |w: f64| {
        let p = x + inward * w;
        match pp.map.clearance(p) {
            Some(c) => c - w,
            None => f64::NEG_INFINITY,
        }
    };
    if margin(0.0) < 0.0 {
        return None;
    }
    let (mut good, mut bad) = (0.0f64, 2.0 * r_in + 1.0);
    for _ in 0..80 {
        let m = 0.5 * (good + bad);
        if margin(m) >= 0.0 {
            good = m;
        } else {
            bad = m;
        }
    }
    let p = x + inward * good;
    Some([p.x, p.y, good])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square2() -> PreprocessedPolygon {
        PreprocessedPolygon::build(
            ConvexPolygon::new(vec![
                Point2::new(-1.0, -1.0),
                Point2::new(1.0, -1.0),
                Point2::new(1.0, 1.0),
                Point2::new(-1.0, 1.0),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn point_query_examples() {
        let pp = square2();
        // Inside the incircle.
        match query_point(&pp, Point2::new(0.1, 0.2)) {
            InscribedResult::Circle(c) => {
                assert!(c.center.distance(Point2::new(0.0, 0.0)) < 1e-9);
                assert!((c.radius - 1.0).abs() < 1e-9);
            }
            _ => panic!(),
        }
        // Corner region: closed form r = 0.1 (2 + sqrt 2).
        let expect = 0.1 * (2.0 + 2f64.sqrt());
        match query_point(&pp, Point2::new(0.9, 0.9)) {
            InscribedResult::Circle(c) => {
                assert!((c.radius - expect).abs() < 1e-9, "r = {}", c.radius);
                assert!((c.center.x - (1.0 - expect)).abs() < 1e-9);
                assert!((c.center.y - (1.0 - expect)).abs() < 1e-9);
            }
            _ => panic!(),
        }
        assert_eq!(query_point(&pp, Point2::new(3.0, 0.0)), InscribedResult::Infeasible);
    }

    #[test]
    fn point_set_examples() {
        let pp = square2();
        match query_point_set(&pp, &[Point2::new(0.1, 0.0), Point2::new(-0.1, 0.0)]) {
            InscribedResult::Circle(c) => assert!((c.radius - 1.0).abs() < 1e-9),
            _ => panic!(),
        }
        assert_eq!(
            query_point_set(&pp, &[Point2::new(0.98, 0.98), Point2::new(-0.98, -0.98)]),
            InscribedResult::Infeasible
        );
        // Second point rides inside the first point's circle.
        let r = 0.1 * (2.0 + 2f64.sqrt());
        match query_point_set(&pp, &[Point2::new(0.9, 0.9), Point2::new(0.5, 0.5)]) {
            InscribedResult::Circle(c) => {
                assert!((c.radius - r).abs() < 1e-9);
                let d = c.center.distance(Point2::new(0.5, 0.5));
                assert!(d < c.radius);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn corollary_route_agrees_with_point_set() {
        let pp = square2();
        let pts = [Point2::new(0.9, 0.9), Point2::new(0.5, 0.5)];
        let a = query_point_set(&pp, &pts);
        let b = smallest_internal_circle_containing(&pp.polygon, &pts);
        match (a, b) {
            (InscribedResult::Circle(ca), InscribedResult::Circle(cb)) => {
                assert!(
                    (ca.radius - cb.radius).abs() < 1e-9,
                    "{} vs {}",
                    ca.radius,
                    cb.radius
                );
            }
            (x, y) => panic!("{x:?} vs {y:?}"),
        }
        // All points in the incircle: both routes return it.
        let small = [
            Point2::new(-0.1, -0.1),
            Point2::new(0.1, -0.1),
            Point2::new(0.1, 0.1),
            Point2::new(-0.1, 0.1),
        ];
        let a = query_point_set(&pp, &small);
        let b = smallest_internal_circle_containing(&pp.polygon, &small);
        match (a, b) {
            (InscribedResult::Circle(ca), InscribedResult::Circle(cb)) => {
                assert!((ca.radius - 1.0).abs() < 1e-9);
                assert!((cb.radius - 1.0).abs() < 1e-9);
            }
            (x, y) => panic!("{x:?} vs {y:?}"),
        }
        // A point outside is infeasible on both routes.
        let out = [Point2::new(0.0, 0.0), Point2::new(5.0, 5.0)];
        assert_eq!(query_point_set(&pp, &out), InscribedResult::Infeasible);
        assert_eq!(
            smallest_internal_circle_containing(&pp.polygon, &out),
            InscribedResult::Infeasible
        );
    }

    #[test]
    fn halfplane_examples() {
        let pp = square2();
        let l = Line2::new(1.0, 0.0, 0.0).unwrap(); // x >= 0
        match query_halfplane(&pp, &l) {
            InscribedResult::Circle(c) => {
                assert!((c.radius - 0.5).abs() < 1e-9, "r = {}", c.radius);
                assert!(c.center.distance(Point2::new(0.5, 0.0)) < 1e-9);
            }
            _ => panic!(),
        }
        let loose = Line2::new(1.0, 0.0, 2.0).unwrap(); // x >= -2
        match query_halfplane(&pp, &loose) {
            InscribedResult::Circle(c) => assert!((c.radius - 1.0).abs() < 1e-9),
            _ => panic!(),
        }
        let empty = Line2::new(1.0, 0.0, -1.0).unwrap(); // x >= 1
        assert_eq!(query_halfplane(&pp, &empty), InscribedResult::Infeasible);
    }

    #[test]
    fn wedge_examples() {
        let pp = square2();
        let l1 = Line2::new(1.0, 0.0, 0.0).unwrap();
        let l2 = Line2::new(0.0, 1.0, 0.0).unwrap();
        match query_wedge(&pp, &l1, &l2) {
            InscribedResult::Circle(c) => {
                assert!((c.radius - 0.5).abs() < 1e-9, "r = {}", c.radius);
                assert!(c.center.distance(Point2::new(0.5, 0.5)) < 1e-9);
            }
            _ => panic!(),
        }
        let loose1 = Line2::new(1.0, 0.0, 2.0).unwrap();
        let loose2 = Line2::new(0.0, 1.0, 2.0).unwrap();
        match query_wedge(&pp, &loose1, &loose2) {
            InscribedResult::Circle(c) => assert!((c.radius - 1.0).abs() < 1e-9),
            _ => panic!(),
        }
        let opp1 = Line2::new(1.0, 0.0, -0.5).unwrap(); // x >= 0.5
        let opp2 = Line2::new(-1.0, 0.0, -0.5).unwrap(); // x <= -0.5
        assert_eq!(query_wedge(&pp, &opp1, &opp2), InscribedResult::Infeasible);
    }

    #[test]
    fn point_line_examples() {
        let pp = square2();
        let l = Line2::new(1.0, 0.0, 0.0).unwrap();
        // Case 3: the halfplane optimum already contains the point.
        match query_point_line(&pp, &l, Point2::new(0.9, 0.0)).unwrap() {
            InscribedResult::Circle(c) => {
                assert!((c.radius - 0.5).abs() < 1e-9);
                assert!(c.center.distance(Point2::new(0.5, 0.0)) < 1e-9);
            }
            _ => panic!(),
        }
        // Case 4: tangent to the line through the point.
        let expect = 0.1 * (2.0 + 2f64.sqrt());
        match query_point_line(&pp, &l, Point2::new(0.1, 0.9)).unwrap() {
            InscribedResult::Circle(c) => {
                assert!((c.radius - expect).abs() < 1e-9, "r = {}", c.radius);
                assert!((c.center.x - expect).abs() < 1e-9);
                assert!((c.center.y - (1.0 - expect)).abs() < 1e-9);
            }
            _ => panic!(),
        }
        assert_eq!(
            query_point_line(&pp, &l, Point2::new(-0.5, 0.0)),
            Err(QueryError::PointNotInHalfplane)
        );
    }

    #[test]
    fn cascade_is_idempotent() {
        let pp = square2();
        let l = Line2::new(1.0, 0.0, 0.0).unwrap();
        let x = Point2::new(0.1, 0.9);
        let first = query_point_line(&pp, &l, x).unwrap();
        let c = first.circle().unwrap();
        // Re-running with the answer's own tangency point keeps the circle.
        let second = query_point_line(&pp, &l, x).unwrap();
        assert_eq!(first.circle().unwrap(), second.circle().unwrap());
        // Feasibility invariants.
        let clearance = pp.map.clearance(c.center).unwrap();
        assert!(c.radius <= clearance + 1e-9);
        assert!(l.signed_distance(c.center) >= c.radius - 1e-9);
        assert!(c.center.distance(x) <= c.radius + 1e-9);
    }
}
