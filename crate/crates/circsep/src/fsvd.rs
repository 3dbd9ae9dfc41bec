//! Furthest-site Voronoi diagram of a convex polygon's vertices and the
//! forest of arcs of FS-Voronoi circles that drives the separability scan.
//!
//! The diagram is built through its dual, the farthest-point Delaunay
//! triangulation: hull vertices are removed in random order from the cyclic
//! chain and re-inserted backwards, legalizing with the reversed in-circle
//! test. Every triangle of that triangulation has a circumcircle enclosing
//! all sites; triangle circumcenters are the diagram vertices.

use crate::geom::{circumcircle, eps, incircle, Arc2, Circle2, Point2, Segment2, Vec2};
use crate::hull::EnclosingCircle;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use std::collections::HashMap;

/// A vertex of the furthest-site Voronoi diagram: the center of a circle
/// through three sites enclosing every site.
#[derive(Debug, Clone)]
pub struct FsVertex {
    pub circle: Circle2,
    pub sites: [usize; 3],
}

/// An edge of the diagram: the locus of centers of circles through two sites
/// enclosing every site, delimited by its smallest and largest such circles.
#[derive(Debug, Clone)]
pub struct FsEdge {
    pub sites: (usize, usize),
    /// Smallest enclosing circle through the pair.
    pub c_minus: Circle2,
    /// Largest one; `None` for hull edges, where it degenerates to the line
    /// through the two sites.
    pub c_plus: Option<Circle2>,
    /// Set when the pair is the diameter support of the smallest enclosing
    /// circle, the one case where `c_minus` is interior to the edge.
    pub diameter_support: bool,
}

/// Furthest-site Voronoi diagram of the vertex set of a convex polygon.
#[derive(Debug, Clone)]
pub struct FSVDiagram {
    pub sites: Vec<Point2>,
    pub vertices: Vec<FsVertex>,
    pub edges: Vec<FsEdge>,
    /// Per-site cell description: indices of incident diagram vertices.
    /// Every cell is unbounded and non-empty (all sites are hull vertices).
    pub cells: Vec<Vec<usize>>,
    pub smallest_enclosing: EnclosingCircle,
    tris: Vec<[usize; 3]>,
    /// Directed edge (a, b) -> triangle that contains it counterclockwise.
    directed: HashMap<(usize, usize), usize>,
}

/// Node of the arcs forest. The arc spans counterclockwise from site `i` to
/// site `j` on its carrier circle; descending the tree grows the carrier.
#[derive(Debug, Clone)]
pub struct ArcNode {
    pub sites: (usize, usize),
    pub arc: Arc2,
    pub children: ArcChildren,
}

/// Children of an arc node: either a split through an intermediate site on
/// the next larger circle, or a terminal that stands for the hull edge itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcChildren {
    Terminal,
    Split(usize, usize),
}

/// Forest of the arcs of FS-Voronoi circles; roots are the arcs of the
/// smallest enclosing circle.
#[derive(Debug, Clone)]
pub struct FSArcsForest {
    pub sites: Vec<Point2>,
    pub nodes: Vec<ArcNode>,
    pub roots: Vec<usize>,
}

impl FSArcsForest {
    pub fn node(&self, i: usize) -> &ArcNode {
        &self.nodes[i]
    }

    pub fn site(&self, i: usize) -> Point2 {
        self.sites[i]
    }

    /// Hull-edge segment a terminal child stands for.
    pub fn terminal_segment(&self, node: usize) -> Segment2 {
        let (i, j) = self.nodes[node].sites;
        Segment2::new(self.sites[i], self.sites[j])
    }

    /// Carrier circle of the children of `node`, `None` for terminals.
    pub fn child_circle(&self, node: usize) -> Option<Circle2> {
        match self.nodes[node].children {
            ArcChildren::Terminal => None,
            ArcChildren::Split(a, _) => Some(self.nodes[a].arc.circle),
        }
    }
}

struct Tri {
    v: [usize; 3],
    // neighbor across the edge opposite v[k]
    n: [Option<usize>; 3],
}

/// Builds the diagram for the vertices of `hull` (counterclockwise, strictly
/// convex). The randomized insertion order is seeded deterministically.
pub fn build_fsvd(hull: &crate::geom::ConvexPolygon) -> FSVDiagram {
    let sites: Vec<Point2> = hull.vertices().to_vec();
    let m = sites.len();
    assert!(m >= 3, "diagram needs at least three sites");

    // Backwards removal from the cyclic chain.
    let mut order: Vec<usize> = (0..m).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xFDE17 ^ m as u64);
    order.shuffle(&mut rng);
    let mut next: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let mut prev: Vec<usize> = (0..m).map(|i| (i + m - 1) % m).collect();
    let mut reinsert: Vec<(usize, usize, usize)> = Vec::with_capacity(m - 3);
    for t in (3..m).rev() {
        let v = order[t];
        reinsert.push((v, prev[v], next[v]));
        next[prev[v]] = next[v];
        prev[next[v]] = prev[v];
    }

    // Base triangle out of the three survivors, in hull (ccw) order.
    let mut base: Vec<usize> = order[..3].to_vec();
    base.sort_unstable();
    let mut tris: Vec<Tri> = vec![Tri { v: [base[0], base[1], base[2]], n: [None; 3] }];
    let mut front: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for k in 0..3 {
        let a = tris[0].v[(k + 1) % 3];
        let b = tris[0].v[(k + 2) % 3];
        front.insert((a, b), (0, k));
    }

    // Reinsert backwards; each vertex lands between its recorded neighbors.
    for &(v, a, b) in reinsert.iter().rev() {
        let (t_old, slot_old) = front.remove(&(a, b)).expect("front edge present");
        let t_new = tris.len();
        tris.push(Tri { v: [a, v, b], n: [None, Some(t_old), None] });
        tris[t_old].n[slot_old] = Some(t_new);
        front.insert((a, v), (t_new, 2));
        front.insert((v, b), (t_new, 0));
        legalize(&mut tris, &sites, t_new, 1, &mut front);
    }

    let live: Vec<[usize; 3]> = tris.iter().map(|t| t.v).collect();
    let mut directed = HashMap::with_capacity(live.len() * 3);
    for (idx, t) in live.iter().enumerate() {
        for k in 0..3 {
            directed.insert((t[k], t[(k + 1) % 3]), idx);
        }
    }

    let vertices: Vec<FsVertex> = live
        .iter()
        .map(|t| FsVertex {
            circle: circumcircle(sites[t[0]], sites[t[1]], sites[t[2]])
                .expect("triangulation triangle is non-degenerate"),
            sites: *t,
        })
        .collect();

    let smallest_enclosing = diagram_sec(&sites, &vertices, &directed);

    // Edges, one per undirected triangulation edge.
    let mut edges: Vec<FsEdge> = Vec::new();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    for t in &live {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            if seen.insert(key, ()).is_some() {
                continue;
            }
            let fwd = directed.get(&(a, b)).copied();
            let rev = directed.get(&(b, a)).copied();
            let mut circles: Vec<Circle2> = fwd
                .into_iter()
                .chain(rev)
                .map(|i| vertices[i].circle)
                .collect();
            circles.sort_by(|x, y| x.radius.total_cmp(&y.radius));
            let mid = sites[a].midpoint(sites[b]);
            let r_d = 0.5 * sites[a].distance(sites[b]);
            let diametral = Circle2::new(mid, r_d);
            let diameter_support = circles.len() == 2
                && encloses_all(&diametral, &sites)
                && r_d < circles[0].radius;
            let (c_minus, c_plus) = if diameter_support {
                (diametral, Some(circles[1]))
            } else if circles.len() == 2 {
                (circles[0], Some(circles[1]))
            } else {
                (circles[0], None)
            };
            edges.push(FsEdge { sites: (a, b), c_minus, c_plus, diameter_support });
        }
    }

    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (idx, t) in live.iter().enumerate() {
        for &s in t {
            cells[s].push(idx);
        }
    }

    FSVDiagram { sites, vertices, edges, cells, smallest_enclosing, tris: live, directed }
}

fn encloses_all(c: &Circle2, sites: &[Point2]) -> bool {
    let tol = eps() * (1.0 + c.radius);
    sites.iter().all(|s| c.center.distance(*s) <= c.radius + tol)
}

/// Flip-based legalization with the farthest-point criterion: an edge is
/// illegal when the opposite vertex falls strictly outside the circumcircle.
fn legalize(
    tris: &mut Vec<Tri>,
    sites: &[Point2],
    t: usize,
    slot: usize,
    front: &mut HashMap<(usize, usize), (usize, usize)>,
) {
    let Some(u) = tris[t].n[slot] else { return };
    let [ta, tb, tc] = tris[t].v;
    // Shared edge of t, directed as it appears in t: (a, b); apex of t is v_op.
    let a = tris[t].v[(slot + 1) % 3];
    let b = tris[t].v[(slot + 2) % 3];
    let v_op = tris[t].v[slot];
    let u_slot = (0..3)
        .find(|&k| tris[u].v[(k + 1) % 3] == b && tris[u].v[(k + 2) % 3] == a)
        .expect("mirror edge");
    let w = tris[u].v[u_slot];
    // Farthest-point Delaunay keeps w inside or on the circumcircle.
    if incircle(sites[ta], sites[tb], sites[tc], sites[w]) >= 0 {
        return;
    }
    // Flip (a, b) to (v_op, w). Quad boundary counterclockwise:
    // v_op -> a -> w -> b. New triangles (v_op, a, w) and (v_op, w, b).
    let n_va = neighbor_across(tris, t, v_op, a);
    let n_bv = neighbor_across(tris, t, b, v_op);
    let n_wb = neighbor_across(tris, u, w, b);
    let n_aw = neighbor_across(tris, u, a, w);

    tris[t].v = [v_op, a, w];
    tris[t].n = [n_aw, Some(u), n_va]; // opp v_op: (a,w); opp a: (w,v_op); opp w: (v_op,a)
    tris[u].v = [v_op, w, b];
    tris[u].n = [n_wb, n_bv, Some(t)]; // opp v_op: (w,b); opp w: (b,v_op); opp b: (v_op,w)
    fix_neighbor(tris, n_aw, a, w, t);
    fix_neighbor(tris, n_va, v_op, a, t);
    fix_neighbor(tris, n_wb, w, b, u);
    fix_neighbor(tris, n_bv, b, v_op, u);
    fix_front(front, tris, t);
    fix_front(front, tris, u);

    // Re-check the far edges of the quad.
    legalize(tris, sites, t, 0, front);
    legalize(tris, sites, u, 0, front);
}

fn neighbor_across(tris: &[Tri], t: usize, x: usize, y: usize) -> Option<usize> {
    // neighbor across directed edge (x, y) of triangle t
    (0..3)
        .find(|&k| tris[t].v[(k + 1) % 3] == x && tris[t].v[(k + 2) % 3] == y)
        .and_then(|k| tris[t].n[k])
}

fn fix_neighbor(tris: &mut [Tri], n: Option<usize>, x: usize, y: usize, new_t: usize) {
    // in neighbor n, the shared edge (x, y) appears reversed as (y, x)
    if let Some(n) = n {
        for k in 0..3 {
            if tris[n].v[(k + 1) % 3] == y && tris[n].v[(k + 2) % 3] == x {
                tris[n].n[k] = Some(new_t);
            }
        }
    }
}

fn fix_front(
    front: &mut HashMap<(usize, usize), (usize, usize)>,
    tris: &[Tri],
    t: usize,
) {
    for k in 0..3 {
        let key = (tris[t].v[(k + 1) % 3], tris[t].v[(k + 2) % 3]);
        if let Some(entry) = front.get_mut(&key) {
            *entry = (t, k);
        }
    }
}

/// Smallest enclosing circle read off the diagram: the best of the triangle
/// circumcircles and the diametral circles of edges whose span admits one.
fn diagram_sec(
    sites: &[Point2],
    vertices: &[FsVertex],
    directed: &HashMap<(usize, usize), usize>,
) -> EnclosingCircle {
    let mut best: Option<EnclosingCircle> = None;
    let mut consider = |cand: EnclosingCircle| {
        if best.as_ref().map_or(true, |b| cand.circle.radius < b.circle.radius) {
            best = Some(cand);
        }
    };
    for v in vertices {
        consider(EnclosingCircle {
            circle: v.circle,
            support: v.sites.iter().map(|&s| sites[s]).collect(),
        });
    }
    let mut seen = std::collections::HashSet::new();
    for (&(a, b), _) in directed.iter() {
        if !seen.insert((a.min(b), a.max(b))) {
            continue;
        }
        let mid = sites[a].midpoint(sites[b]);
        let c = Circle2::new(mid, 0.5 * sites[a].distance(sites[b]));
        if encloses_all(&c, sites) {
            consider(EnclosingCircle { circle: c, support: vec![sites[a], sites[b]] });
        }
    }
    best.expect("diagram has at least one vertex")
}

/// Builds the arcs forest from the diagram.
///
/// Roots are the arcs of the smallest enclosing circle between consecutive
/// sites lying on it; when the support is a diameter pair the two
/// semicircular arcs become the two roots.
pub fn build_fsarcs(diag: &FSVDiagram) -> FSArcsForest {
    let sec = &diag.smallest_enclosing.circle;
    let tol = eps().sqrt() * (1.0 + sec.radius);
    let mut on_circle: Vec<usize> = (0..diag.sites.len())
        .filter(|&i| (sec.center.distance(diag.sites[i]) - sec.radius).abs() <= tol)
        .collect();
    // Counterclockwise around the center; start point ordering fixes ties.
    on_circle.sort_by(|&i, &j| {
        let ai = (diag.sites[i] - sec.center).angle();
        let aj = (diag.sites[j] - sec.center).angle();
        ai.total_cmp(&aj)
    });
    assert!(on_circle.len() >= 2, "enclosing circle must touch two sites");

    let mut forest = FSArcsForest {
        sites: diag.sites.clone(),
        nodes: Vec::new(),
        roots: Vec::new(),
    };
    let k = on_circle.len();
    for idx in 0..k {
        let a = on_circle[idx];
        let b = on_circle[(idx + 1) % k];
        if k == 1 || a == b {
            break;
        }
        let root = build_arc_node(diag, &mut forest, a, b, *sec);
        forest.roots.push(root);
    }
    forest
}

fn build_arc_node(
    diag: &FSVDiagram,
    forest: &mut FSArcsForest,
    a: usize,
    b: usize,
    carrier: Circle2,
) -> usize {
    let arc = Arc2::new(carrier, diag.sites[a], diag.sites[b])
        .expect("forest arcs stay within a half circle");
    let children = if (a + 1) % diag.sites.len() == b {
        ArcChildren::Terminal
    } else {
        // Triangle on the chain side of the chord: it holds directed (b, a).
        let t = *diag
            .directed
            .get(&(b, a))
            .expect("chain-side triangle exists for non-terminal arcs");
        let tri = diag.tris[t];
        let k = tri
            .iter()
            .copied()
            .find(|&s| s != a && s != b)
            .expect("triangle has a third site");
        let c_plus = diag.vertices[t].circle;
        let left = build_arc_node(diag, forest, a, k, c_plus);
        let right = build_arc_node(diag, forest, k, b, c_plus);
        ArcChildren::Split(left, right)
    };
    forest.nodes.push(ArcNode { sites: (a, b), arc, children });
    forest.nodes.len() - 1
}

/// Unit vector along the bisector of sites (a, b), oriented away from the
/// chain-side arc: carrier centers move along it as the circles grow.
pub fn bisector_direction(sites: &[Point2], a: usize, b: usize) -> Vec2 {
    // Left perpendicular of the directed chord a -> b.
    (sites[b] - sites[a]).perp().normalized()
}

/// Smallest circle through the pair enclosing every site, evaluated along the
/// bisector; this is the carrier parameterization of the step-4 tangency
/// search.
pub fn circle_on_bisector(sites: &[Point2], a: usize, b: usize, t: f64) -> Circle2 {
    let mid = sites[a].midpoint(sites[b]);
    let u = bisector_direction(sites, a, b);
    let center = mid + u * t;
    Circle2::new(center, center.distance(sites[a]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ConvexPolygon;
    use crate::hull::{convex_hull_points, smallest_enclosing_circle};

    fn square() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point2::new(-1.0, -1.0),
            Point2::new(1.0, -1.0),
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn fsvd_square() {
        let d = build_fsvd(&square());
        // Single diagram vertex class at the origin with radius sqrt(2).
        for v in &d.vertices {
            assert!(v.circle.center.distance(Point2::new(0.0, 0.0)) < 1e-12);
            assert!((v.circle.radius - 2f64.sqrt()).abs() < 1e-12);
        }
        // Every vertex circle encloses all sites.
        for v in &d.vertices {
            assert!(encloses_all(&v.circle, &d.sites));
        }
        // All four cells non-empty.
        assert!(d.cells.iter().all(|c| !c.is_empty()));
    }

    #[test]
    fn fsvd_equilateral_triangle() {
        let tri = ConvexPolygon::new(vec![
            Point2::new(1.0, 0.0),
            Point2::new(-0.5, 0.75f64.sqrt()),
            Point2::new(-0.5, -(0.75f64.sqrt())),
        ])
        .unwrap();
        let d = build_fsvd(&tri);
        assert_eq!(d.vertices.len(), 1);
        assert!(d.vertices[0].circle.center.distance(Point2::new(0.0, 0.0)) < 1e-12);
        assert_eq!(d.edges.len(), 3);
        // All edges unbounded (hull edges).
        assert!(d.edges.iter().all(|e| e.c_plus.is_none()));
    }

    #[test]
    fn fsarcs_square_roots() {
        let d = build_fsvd(&square());
        let f = build_fsarcs(&d);
        assert_eq!(f.roots.len(), 4);
        for &r in &f.roots {
            let node = f.node(r);
            assert!((node.arc.sweep() - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
            assert_eq!(node.children, ArcChildren::Terminal);
        }
    }

    #[test]
    fn fsarcs_obtuse_triangle_diameter_roots() {
        let tri = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(1.0, 0.5),
        ])
        .unwrap();
        let d = build_fsvd(&tri);
        assert!((d.smallest_enclosing.circle.radius - 2.0).abs() < 1e-12);
        assert_eq!(d.smallest_enclosing.support.len(), 2);
        let f = build_fsarcs(&d);
        assert_eq!(f.roots.len(), 2);
        // One root is terminal (the hull edge (0,0)-(4,0)); the other splits
        // through (1, 0.5).
        let kinds: Vec<_> = f.roots.iter().map(|&r| f.node(r).children).collect();
        assert!(kinds.contains(&ArcChildren::Terminal));
        let split = f
            .roots
            .iter()
            .map(|&r| f.node(r))
            .find(|n| n.children != ArcChildren::Terminal)
            .unwrap();
        match split.children {
            ArcChildren::Split(l, r) => {
                assert_eq!(f.node(l).sites.1, f.node(r).sites.0);
                assert_eq!(f.site(f.node(l).sites.1), Point2::new(1.0, 0.5));
                // Children carry a strictly larger circle.
                assert!(f.node(l).arc.circle.radius > split.arc.circle.radius);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fsarcs_equilateral_triangle() {
        let tri = ConvexPolygon::new(vec![
            Point2::new(1.0, 0.0),
            Point2::new(-0.5, 0.75f64.sqrt()),
            Point2::new(-0.5, -(0.75f64.sqrt())),
        ])
        .unwrap();
        let f = build_fsarcs(&build_fsvd(&tri));
        assert_eq!(f.roots.len(), 3);
        for &r in &f.roots {
            assert_eq!(f.node(r).children, ArcChildren::Terminal);
        }
    }

    fn random_hull(seed: u64, n: usize) -> ConvexPolygon {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let pts: Vec<Point2> = (0..n.max(8))
                .map(|_| {
                    let a = rng.gen_range(0.0..std::f64::consts::TAU);
                    let r = rng.gen_range(0.5..1.0);
                    Point2::new(r * a.cos(), r * a.sin())
                })
                .collect();
            if let Ok(hull) = convex_hull_points(&pts) {
                if hull.len() >= 4 {
                    return hull;
                }
            }
        }
    }

    #[test]
    fn forest_invariants_on_random_hulls() {
        for seed in 0..60 {
            let hull = random_hull(seed, 8 + (seed as usize % 40));
            let d = build_fsvd(&hull);
            // Diagram vertices enclose all sites.
            for v in &d.vertices {
                assert!(encloses_all(&v.circle, &d.sites), "seed {seed}");
            }
            let f = build_fsarcs(&d);
            // Node count bound (terminals are flags, not nodes).
            assert!(f.nodes.len() <= 2 * d.sites.len(), "seed {seed}");
            // Radius monotonicity along every root-to-leaf path, non-terminal
            // node circles enclose all sites, arcs stay within a half turn.
            fn walk(f: &FSArcsForest, sites: &[Point2], i: usize, parent_r: f64) {
                let n = f.node(i);
                assert!(n.arc.sweep() <= std::f64::consts::PI * (1.0 + 1e-9));
                assert!(
                    n.arc.circle.radius >= parent_r * (1.0 - 1e-12),
                    "radius decreased along a path"
                );
                let c = &n.arc.circle;
                let tol = 1e-9 * (1.0 + c.radius);
                assert!(sites.iter().all(|s| c.center.distance(*s) <= c.radius + tol));
                if let ArcChildren::Split(a, b) = n.children {
                    assert!(f.node(a).arc.circle.radius >= c.radius * (1.0 - 1e-12));
                    walk(f, sites, a, c.radius);
                    walk(f, sites, b, c.radius);
                }
            }
            for &r in &f.roots {
                walk(&f, &d.sites, r, 0.0);
            }
            // Diagram SEC agrees with the direct computation.
            let direct = smallest_enclosing_circle(&d.sites);
            assert!(
                (d.smallest_enclosing.circle.radius - direct.circle.radius).abs()
                    < 1e-9 * (1.0 + direct.circle.radius),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn every_terminal_is_a_hull_edge() {
        let hull = random_hull(99, 24);
        let d = build_fsvd(&hull);
        let f = build_fsarcs(&d);
        for n in &f.nodes {
            if n.children == ArcChildren::Terminal {
                assert_eq!((n.sites.0 + 1) % f.sites.len(), n.sites.1);
            }
        }
    }
}
