//! The cell decomposition of a convex polygon induced by the arcs of its
//! skeleton circles, with slab-based point location.
//!
//! Cells: the open incircle disk, plus one cell per skeleton edge (parent,
//! child), bounded by the child-facing arc of the parent circle, the arcs of
//! the child circle, and portions of the two polygon edges whose bisector
//! carries the skeleton edge. A query point's cell names the two edge
//! portions its largest internal circle is tangent to.
//!
//! Two slab decompositions are kept: one over the circle arcs (cell
//! location), one over the straight skeleton segments (nearest-edge /
//! clearance queries). Both answer in O(log n).

use crate::geom::{distance_point_segment, ConvexPolygon, Line2, Point2, Segment2, Vec2};
use crate::skeleton::{edge_line, shared_pair, SkeletonTree};

/// Where a point fell in the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Located {
    Outside,
    Incircle,
    /// Index into [`PlanarMap::cells`].
    Cell(usize),
}

/// A wedge cell of the decomposition, keyed by the deeper skeleton vertex.
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub parent: usize,
    pub child: usize,
    /// The polygon edges the cell's tangent circles touch.
    pub edge_pair: (usize, usize),
    /// Depth of the child vertex (tie rule: smaller depth wins).
    pub depth: usize,
}

#[derive(Debug, Clone, Copy)]
enum Curve {
    Seg { a: Point2, b: Point2 },
    /// x-monotone arc half: upper or lower part of a circle.
    Arc { cx: f64, cy: f64, r: f64, upper: bool },
}

impl Curve {
    fn y_at(&self, x: f64) -> f64 {
        match *self {
            Curve::Seg { a, b } => {
                if (b.x - a.x).abs() < 1e-300 {
                    0.5 * (a.y + b.y)
                } else {
                    a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)
                }
            }
            Curve::Arc { cx, cy, r, upper } => {
                let dx = (x - cx).clamp(-r, r);
                let h = (r * r - dx * dx).max(0.0).sqrt();
                if upper {
                    cy + h
                } else {
                    cy - h
                }
            }
        }
    }

    fn x_range(&self) -> (f64, f64) {
        match *self {
            Curve::Seg { a, b } => (a.x.min(b.x), a.x.max(b.x)),
            Curve::Arc { .. } => unreachable!("arc pieces carry explicit ranges"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    curve: Curve,
    x0: f64,
    x1: f64,
    /// Cell indices per side; -1 outside, -2 incircle, else cell index.
    above: i32,
    below: i32,
}

const OUTSIDE: i32 = -1;
const INCIRCLE: i32 = -2;

#[derive(Debug, Clone)]
struct Slabs {
    xs: Vec<f64>,
    per_slab: Vec<Vec<u32>>,
    pieces: Vec<Piece>,
}

impl Slabs {
    fn build(pieces: Vec<Piece>) -> Slabs {
        let mut xs: Vec<f64> = pieces
            .iter()
            .flat_map(|p| [p.x0, p.x1])
            .filter(|v| v.is_finite())
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| *a == *b);
        let mut per_slab: Vec<Vec<u32>> = vec![Vec::new(); xs.len().saturating_sub(1)];
        for (idx, p) in pieces.iter().enumerate() {
            if p.x1 <= p.x0 {
                continue;
            }
            let lo = xs.partition_point(|&v| v < p.x0);
            for (s, slot) in per_slab.iter_mut().enumerate().skip(lo.saturating_sub(1)) {
                if xs[s] >= p.x1 {
                    break;
                }
                let mid = 0.5 * (xs[s] + xs[s + 1]);
                if mid > p.x0 && mid < p.x1 {
                    slot.push(idx as u32);
                }
            }
        }
        for (s, slot) in per_slab.iter_mut().enumerate() {
            let mid = 0.5 * (xs[s] + xs[s + 1]);
            slot.sort_by(|&a, &b| {
                pieces[a as usize]
                    .curve
                    .y_at(mid)
                    .total_cmp(&pieces[b as usize].curve.y_at(mid))
            });
        }
        Slabs { xs, per_slab, pieces }
    }

    /// The nearest pieces strictly below and above `p` in its slab.
    fn bracket(&self, p: Point2) -> (Option<u32>, Option<u32>) {
        if self.xs.len() < 2 || p.x < self.xs[0] || p.x > *self.xs.last().unwrap() {
            return (None, None);
        }
        let mut s = self.xs.partition_point(|&v| v <= p.x);
        s = s.saturating_sub(1).min(self.per_slab.len().saturating_sub(1));
        let slab = &self.per_slab[s];
        let k = slab.partition_point(|&i| self.pieces[i as usize].curve.y_at(p.x) <= p.y);
        let below = k.checked_sub(1).map(|i| slab[i]);
        let above = slab.get(k).copied();
        (below, above)
    }
}

/// Navigation helpers for a convex polygon: O(log n) membership and extreme
/// vertex searches built on the monotone edge-direction angles.
#[derive(Debug, Clone)]
pub struct ConvexNav {
    vertices: Vec<Point2>,
    /// Unwrapped (monotone increasing) edge direction angles.
    angles: Vec<f64>,
}

impl ConvexNav {
    pub fn new(poly: &ConvexPolygon) -> ConvexNav {
        let vertices = poly.vertices().to_vec();
        let n = vertices.len();
        let mut angles = Vec::with_capacity(n);
        let mut prev = (vertices[1] - vertices[0]).angle();
        angles.push(prev);
        for i in 1..n {
            let d = vertices[(i + 1) % n] - vertices[i];
            let mut a = d.angle();
            while a < prev {
                a += std::f64::consts::TAU;
            }
            angles.push(a);
            prev = a;
        }
        ConvexNav { vertices, angles }
    }

    /// Index of a vertex extreme in direction `d`.
    pub fn extreme_vertex(&self, d: Vec2) -> usize {
        let n = self.vertices.len();
        // The extreme vertex heads the first edge whose direction has turned
        // past the perpendicular of d.
        let mut target = d.angle() + std::f64::consts::FRAC_PI_2;
        while target < self.angles[0] {
            target += std::f64::consts::TAU;
        }
        while target >= self.angles[0] + std::f64::consts::TAU {
            target -= std::f64::consts::TAU;
        }
        let mut k = self.angles.partition_point(|&a| a < target) % n;
        // Settle ties by local hill climbing.
        for _ in 0..4 {
            let up = (k + 1) % n;
            let down = (k + n - 1) % n;
            if self.vertices[up].to_vec().dot(d) > self.vertices[k].to_vec().dot(d) {
                k = up;
            } else if self.vertices[down].to_vec().dot(d) > self.vertices[k].to_vec().dot(d) {
                k = down;
            } else {
                break;
            }
        }
        k
    }

    /// Closed membership test by fan binary search.
    pub fn contains(&self, p: Point2) -> bool {
        let n = self.vertices.len();
        let v0 = self.vertices[0];
        let cross = |a: Point2, b: Point2, c: Point2| (b - a).cross(c - a);
        if cross(v0, self.vertices[1], p) < 0.0 || cross(v0, self.vertices[n - 1], p) > 0.0 {
            return false;
        }
        let (mut lo, mut hi) = (1usize, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if cross(v0, self.vertices[mid], p) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        cross(self.vertices[lo], self.vertices[hi], p) >= 0.0
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The arc-induced planar map of a convex polygon.
#[derive(Debug, Clone)]
pub struct PlanarMap {
    pub cells: Vec<Cell>,
    /// Cell index keyed by the child skeleton vertex.
    pub cell_of_child: Vec<Option<usize>>,
    pub nav: ConvexNav,
    root_center: Point2,
    root_clearance: f64,
    map_slabs: Slabs,
    strip_slabs: Slabs,
    scale: f64,
}

/// Builds the map (both slab structures) from a skeleton tree.
pub fn build_planar_map(skt: &SkeletonTree) -> PlanarMap {
    let poly = &skt.polygon;
    let scale = poly.scale();
    let lines: Vec<Line2> = (0..poly.len()).map(|i| edge_line(poly, i)).collect();

    let mut cells: Vec<Cell> = Vec::new();
    let mut cell_of_child: Vec<Option<usize>> = vec![None; skt.vertices.len()];
    for e in skt.edges() {
        cell_of_child[e.child] = Some(cells.len());
        cells.push(Cell {
            parent: e.parent,
            child: e.child,
            edge_pair: e.edge_pair,
            depth: skt.vertices[e.child].depth,
        });
    }

    let mut map_pieces: Vec<Piece> = Vec::new();
    let mut strip_pieces: Vec<Piece> = Vec::new();

    for (ci, cell) in cells.iter().enumerate() {
        let u = &skt.vertices[cell.parent];
        let v = &skt.vertices[cell.child];
        let (ea, eb) = cell.edge_pair;
        let inner_side = match skt.vertices[cell.parent].parent {
            None => INCIRCLE,
            Some(_) => cell_of_child[cell.parent].expect("parent cell exists") as i32,
        };

        // Child-facing arc of the parent circle: the arc between the pair's
        // tangency feet that passes no other tangent foot of the parent.
        let foot_a = lines[ea].project(u.center);
        let foot_b = lines[eb].project(u.center);
        let other_feet: Vec<Point2> = u
            .tangent_edges
            .iter()
            .filter(|&&e| e != ea && e != eb)
            .map(|&e| lines[e].project(u.center))
            .collect();
        if u.clearance > 1e-12 * scale {
            push_arc_pieces(
                &mut map_pieces,
                u.center,
                u.clearance,
                foot_a,
                foot_b,
                &other_feet,
                ci as i32,
                inner_side,
                scale,
            );
        }

        // Edge portions owned by this cell.
        for &e in [ea, eb].iter() {
            let pa = lines[e].project(u.center);
            let pb = lines[e].project(v.center);
            push_edge_piece(&mut map_pieces, pa, pb, lines[e].normal(), ci as i32);
        }

        // Strip boundary: the straight skeleton segment separates the strips
        // of the two polygon edges of the pair.
        push_strip_segment(
            &mut strip_pieces,
            u.center,
            v.center,
            ea as i32,
            eb as i32,
            &lines,
        );
        // Strips are bounded below/above by the polygon edges themselves.
        for &e in [ea, eb].iter() {
            let pa = lines[e].project(u.center);
            let pb = lines[e].project(v.center);
            push_edge_piece(&mut strip_pieces, pa, pb, lines[e].normal(), e as i32);
        }
    }

    let root = &skt.vertices[skt.root];
    PlanarMap {
        cells,
        cell_of_child,
        nav: ConvexNav::new(poly),
        root_center: root.center,
        root_clearance: root.clearance,
        map_slabs: Slabs::build(map_pieces),
        strip_slabs: Slabs::build(strip_pieces),
        scale,
    }
}

/// Splits the child-facing arc between the two tangency feet into x-monotone
/// pieces and records the side attribution.
#[allow(clippy::too_many_arguments)]
fn push_arc_pieces(
    out: &mut Vec<Piece>,
    center: Point2,
    r: f64,
    foot_a: Point2,
    foot_b: Point2,
    other_feet: &[Point2],
    outer_cell: i32,
    inner_cell: i32,
    scale: f64,
) {
    let a0 = (foot_a - center).angle();
    let a1 = (foot_b - center).angle();
    // Two candidate arcs between the feet; the cell's is the one between
    // consecutive tangent points, i.e. the one clear of every other foot.
    let clear = |start: f64, mut end: f64| -> Option<(f64, f64)> {
        while end < start {
            end += std::f64::consts::TAU;
        }
        let margin = 1e-9;
        let ok = other_feet.iter().all(|f| {
            let mut a = (*f - center).angle();
            while a < start {
                a += std::f64::consts::TAU;
            }
            a >= end - margin || a <= start + margin
        });
        ok.then_some((start, end))
    };
    let (start, end) = match (clear(a0, a1), clear(a1, a0)) {
        (Some(se), None) => se,
        (None, Some(se)) => se,
        // Ambiguous or impossible: keep the shorter arc.
        (Some(se1), Some(se2)) => {
            if se1.1 - se1.0 <= se2.1 - se2.0 {
                se1
            } else {
                se2
            }
        }
        (None, None) => return,
    };
    if (end - start) * r < 1e-12 * scale {
        return;
    }
    // Split at angle 0 and pi crossings so every piece is x-monotone.
    let mut cuts = vec![start, end];
    let mut k = (start / std::f64::consts::PI).ceil();
    while k * std::f64::consts::PI < end {
        let c = k * std::f64::consts::PI;
        if c > start {
            cuts.push(c);
        }
        k += 1.0;
    }
    cuts.sort_by(f64::total_cmp);
    for w in cuts.windows(2) {
        let (s, e) = (w[0], w[1]);
        if e - s < 1e-15 {
            continue;
        }
        let m = 0.5 * (s + e);
        let upper = m.sin() > 0.0;
        let p_s = Point2::new(center.x + r * s.cos(), center.y + r * s.sin());
        let p_e = Point2::new(center.x + r * e.cos(), center.y + r * e.sin());
        let (x0, x1) = (p_s.x.min(p_e.x), p_s.x.max(p_e.x));
        if x1 - x0 < 1e-15 * (1.0 + scale) {
            continue;
        }
        // Above an upper arc is outside the disk (the outer cell side);
        // above a lower arc is inside (the inner side).
        let (above, below) = if upper {
            (outer_cell, inner_cell)
        } else {
            (inner_cell, outer_cell)
        };
        out.push(Piece {
            curve: Curve::Arc { cx: center.x, cy: center.y, r, upper },
            x0,
            x1,
            above,
            below,
        });
    }
}

fn push_edge_piece(out: &mut Vec<Piece>, a: Point2, b: Point2, inward: Vec2, cell: i32) {
    if (a.x - b.x).abs() < 1e-300 {
        return; // vertical edges live on slab boundaries
    }
    let (above, below) = if inward.y > 0.0 { (cell, OUTSIDE) } else { (OUTSIDE, cell) };
    let seg = Curve::Seg { a, b };
    let (x0, x1) = seg.x_range();
    out.push(Piece { curve: seg, x0, x1, above, below });
}

fn push_strip_segment(
    out: &mut Vec<Piece>,
    a: Point2,
    b: Point2,
    ea: i32,
    eb: i32,
    lines: &[Line2],
) {
    if (a.x - b.x).abs() < 1e-300 {
        return;
    }
    let seg = Curve::Seg { a, b };
    let (x0, x1) = seg.x_range();
    // Which polygon edge is nearer just above the segment midpoint?
    let mid = a.midpoint(b);
    let da = lines[ea as usize].signed_distance(mid);
    let db = lines[eb as usize].signed_distance(mid);
    debug_assert!((da - db).abs() <= 1e-6 * (1.0 + da.abs()), "bisector property");
    let probe = Point2::new(mid.x, mid.y + 1e-7 * (1.0 + da.abs()));
    let (above, below) =
        if lines[ea as usize].signed_distance(probe) < lines[eb as usize].signed_distance(probe) {
            (ea, eb)
        } else {
            (eb, ea)
        };
    out.push(Piece { curve: seg, x0, x1, above, below });
}

impl PlanarMap {
    pub fn incircle(&self) -> crate::geom::Circle2 {
        crate::geom::Circle2::new(self.root_center, self.root_clearance)
    }

    /// Locates `p` in the map. Boundary ties resolve toward the cell of
    /// smaller skeleton depth (the incircle counts as depth zero).
    pub fn locate(&self, p: Point2) -> Located {
        if !self.nav.contains(p) {
            return Located::Outside;
        }
        let tol = 1e-12 * self.scale;
        let d_root = p.distance(self.root_center);
        if d_root <= self.root_clearance + tol {
            return Located::Incircle;
        }
        let (below, above) = self.map_slabs.bracket(p);
        let mut candidates: Vec<i32> = Vec::with_capacity(2);
        if let Some(b) = below {
            let piece = &self.map_slabs.pieces[b as usize];
            candidates.push(piece.above);
            if (piece.curve.y_at(p.x) - p.y).abs() <= tol {
                candidates.push(piece.below);
            }
        }
        if let Some(a) = above {
            let piece = &self.map_slabs.pieces[a as usize];
            if (piece.curve.y_at(p.x) - p.y).abs() <= tol {
                candidates.push(piece.below);
                candidates.push(piece.above);
            }
        }
        let mut best: Option<Located> = None;
        let mut best_depth = usize::MAX;
        for c in candidates {
            let (loc, depth) = match c {
                OUTSIDE => continue,
                INCIRCLE => (Located::Incircle, 0),
                idx => (Located::Cell(idx as usize), self.cells[idx as usize].depth),
            };
            if depth < best_depth {
                best_depth = depth;
                best = Some(loc);
            }
        }
        best.unwrap_or(Located::Outside)
    }

    /// Index of the polygon edge nearest to an interior point, O(log n).
    pub fn nearest_edge(&self, p: Point2) -> Option<usize> {
        if !self.nav.contains(p) {
            return None;
        }
        let (below, above) = self.strip_slabs.bracket(p);
        let mut best: Option<(f64, usize)> = None;
        let poly = &self.nav;
        let mut consider = |e: i32| {
            if e < 0 {
                return;
            }
            let e = e as usize;
            let seg = Segment2::new(poly.vertex(e), poly.vertex(e + 1));
            let d = distance_point_segment(p, seg);
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, e));
            }
        };
        if let Some(b) = below {
            let piece = &self.strip_slabs.pieces[b as usize];
            consider(piece.above);
            consider(piece.below);
        }
        if let Some(a) = above {
            let piece = &self.strip_slabs.pieces[a as usize];
            consider(piece.above);
            consider(piece.below);
        }
        best.map(|(_, e)| e)
    }

    /// Clearance (distance to the boundary) of an interior point, O(log n).
    pub fn clearance(&self, p: Point2) -> Option<f64> {
        let e = self.nearest_edge(p)?;
        let seg = Segment2::new(self.nav.vertex(e), self.nav.vertex(e + 1));
        Some(distance_point_segment(p, seg))
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::build_skeleton;

    fn convex(pts: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    fn square2() -> ConvexPolygon {
        convex(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
    }

    #[test]
    fn square_map_has_five_cells() {
        let map = build_planar_map(&build_skeleton(&square2()));
        assert_eq!(map.cell_count(), 5);
    }

    #[test]
    fn triangle_map_has_four_cells() {
        let tri = convex(&[(0.0, 0.0), (2.0, 0.0), (1.0, 3f64.sqrt())]);
        let map = build_planar_map(&build_skeleton(&tri));
        assert_eq!(map.cell_count(), 4);
    }

    #[test]
    fn regular_ngon_has_n_plus_one_cells() {
        for n in [5usize, 8, 12, 17] {
            let pts: Vec<(f64, f64)> = (0..n)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / n as f64;
                    (t.cos(), t.sin())
                })
                .collect();
            let map = build_planar_map(&build_skeleton(&convex(&pts)));
            assert_eq!(map.cell_count(), n + 1, "n = {n}");
        }
    }

    #[test]
    fn square_locate_examples() {
        let map = build_planar_map(&build_skeleton(&square2()));
        assert_eq!(map.locate(Point2::new(0.1, 0.2)), Located::Incircle);
        match map.locate(Point2::new(0.9, 0.9)) {
            Located::Cell(c) => {
                let cell = map.cells[c];
                // Tangent to the right and top edges (indices 1 and 2).
                assert_eq!(cell.edge_pair, (1, 2));
            }
            other => panic!("expected corner cell, got {other:?}"),
        }
        assert_eq!(map.locate(Point2::new(5.0, 5.0)), Located::Outside);
    }

    #[test]
    fn nearest_edge_and_clearance() {
        let map = build_planar_map(&build_skeleton(&square2()));
        assert_eq!(map.nearest_edge(Point2::new(0.0, -0.9)), Some(0));
        assert_eq!(map.nearest_edge(Point2::new(0.9, 0.0)), Some(1));
        assert!((map.clearance(Point2::new(0.5, 0.0)).unwrap() - 0.5).abs() < 1e-12);
        assert!((map.clearance(Point2::new(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!(map.clearance(Point2::new(3.0, 0.0)).is_none());
    }

    #[test]
    fn random_polygons_locate_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for case in 0..40 {
            let n = rng.gen_range(5..=64);
            let mut pts: Vec<Point2> = Vec::new();
            for i in 0..n {
                let t = std::f64::consts::TAU * i as f64 / n as f64
                    + rng.gen_range(0.0..0.5 / n as f64);
                let r = rng.gen_range(0.7..1.0);
                pts.push(Point2::new(r * t.cos(), r * t.sin()));
            }
            let Ok(hull) = crate::hull::convex_hull_points(&pts) else { continue };
            let skt = build_skeleton(&hull);
            let map = build_planar_map(&skt);
            let poly = hull.to_polygon();
            let mut tested = 0;
            while tested < 300 {
                let p = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if hull.locate_point(p) != crate::geom::Location::Interior {
                    continue;
                }
                tested += 1;
                // Reference clearance.
                let truth = crate::geom::distance_point_polygon_boundary(p, &poly);
                let fast = map.clearance(p).unwrap_or(f64::NAN);
                assert!(
                    (truth - fast).abs() <= 1e-9 * (1.0 + truth),
                    "case {case}: clearance mismatch {truth} vs {fast}"
                );
                // The nearest-edge structure's answer realizes the clearance.
                let ne = map.nearest_edge(p).unwrap();
                let dn = distance_point_segment(p, poly.edge(ne));
                assert!(
                    (dn - truth).abs() <= 1e-9 * (1.0 + truth),
                    "case {case}: nearest edge does not realize clearance"
                );
                // The located map cell sandwiches the point between parent
                // and child tangency circles: the largest internal circle
                // through p, tangent to the cell's pair, is at least as big
                // as the child's and at most the parent's.
                match map.locate(p) {
                    Located::Incircle => {
                        assert!(
                            p.distance(map.incircle().center)
                                <= map.incircle().radius + 1e-9,
                            "case {case}"
                        );
                    }
                    Located::Cell(c) => {
                        let cell = map.cells[c];
                        let rp = skt.vertices[cell.parent].clearance;
                        let rc = skt.vertices[cell.child].clearance;
                        let d_parent = p.distance(skt.vertices[cell.parent].center);
                        assert!(
                            d_parent >= rp * (1.0 - 1e-9) - 1e-9,
                            "case {case}: cell point inside the parent circle"
                        );
                        // Tangent-circle solve on the cell's pair must land
                        // between the two clearances.
                        let sol = crate::queries::largest_through_point_on_pair(
                            &skt, cell.edge_pair, p,
                        );
                        let r = sol.expect("tangency solve on located cell").radius;
                        assert!(
                            r >= rc - 1e-9 && r <= rp * (1.0 + 1e-9) + 1e-9,
                            "case {case}: through-circle radius {r} outside [{rc}, {rp}]"
                        );
                    }
                    Located::Outside => panic!("interior point located outside"),
                }
            }
        }
    }

    #[test]
    fn extreme_vertex_binary_search_agrees_with_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let n = rng.gen_range(4..=128);
            let pts: Vec<Point2> = (0..n)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / n as f64;
                    let r = rng.gen_range(0.8..1.0);
                    Point2::new(r * t.cos(), r * t.sin())
                })
                .collect();
            let Ok(hull) = crate::hull::convex_hull_points(&pts) else { continue };
            let nav = ConvexNav::new(&hull);
            for _ in 0..64 {
                let d = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if d.norm() < 1e-3 {
                    continue;
                }
                let fast = nav.extreme_vertex(d);
                let slow = hull.extreme_vertex(d);
                let df = hull.vertex(fast).to_vec().dot(d);
                let ds = hull.vertex(slow).to_vec().dot(d);
                assert!(df >= ds - 1e-9 * (1.0 + ds.abs()));
            }
        }
    }

    #[test]
    fn contains_binary_search_agrees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        let hull = square2();
        let nav = ConvexNav::new(&hull);
        for _ in 0..2000 {
            let p = Point2::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let expected = hull.locate_point(p) != crate::geom::Location::Exterior;
            // Allow disagreement only within a hair of the boundary.
            if nav.contains(p) != expected {
                let d = crate::geom::distance_point_polygon_boundary(p, &hull.to_polygon());
                assert!(d < 1e-9, "disagreement far from boundary");
            }
        }
    }
}
