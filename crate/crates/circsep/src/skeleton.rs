//! Medial-axis skeleton tree of a convex polygon.
//!
//! Built by shrinking the polygon wavefront: adjacent bisector traces meet at
//! circle centers tangent to three edges, processed in order of increasing
//! clearance through a priority queue. The tree is rooted at the incircle
//! center; along every root-to-leaf path the clearance strictly decreases.

use crate::geom::{ConvexPolygon, Line2, Point2, Segment2, Vec2};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// A vertex of the skeleton tree.
#[derive(Debug, Clone)]
pub struct SkVertex {
    pub center: Point2,
    /// Radius of the largest internal circle centered here.
    pub clearance: f64,
    /// Indices of the polygon edges this vertex's circle is tangent to
    /// (for leaves: the two incident edges, at distance zero).
    pub tangent_edges: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub depth: usize,
    pub preorder: usize,
    pub postorder: usize,
}

/// Skeleton tree `SkT(P)` with ancestor jump table.
#[derive(Debug, Clone)]
pub struct SkeletonTree {
    pub polygon: ConvexPolygon,
    pub vertices: Vec<SkVertex>,
    pub root: usize,
    /// `up[i][v]` is the `2^i`-th ancestor of `v` (clamped at the root).
    up: Vec<Vec<usize>>,
    /// Skeleton vertex id of each polygon vertex's leaf.
    leaf_ids: Vec<usize>,
}

/// A skeleton edge together with the pair of polygon edges whose bisector
/// carries it. Edge (parent, child) in tree orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkEdge {
    pub parent: usize,
    pub child: usize,
    pub edge_pair: (usize, usize),
}

// Wavefront trace between two polygon edges: starts at a skeleton vertex and
// moves along the bisector as the clearance grows.
#[derive(Debug, Clone, Copy)]
struct Trace {
    left_edge: usize,
    right_edge: usize,
    origin_vertex: usize,
    alive: bool,
    prev: usize,
    next: usize,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    radius: f64,
    left_trace: usize,
    right_trace: usize,
    center: Point2,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.radius == other.radius
    }
}
impl Eq for Event {}
impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on radius
        other.radius.total_cmp(&self.radius)
    }
}

/// Inward edge line of polygon edge `i`: positive side is the interior,
/// signed distance equals the distance to the edge's supporting line.
pub fn edge_line(poly: &ConvexPolygon, i: usize) -> Line2 {
    let e = poly.edge(i);
    Line2::through(e.a, e.b).expect("polygon edges have positive length")
}

/// Center and radius of the circle tangent to three edge lines, solved as a
/// 3x3 linear system `n_k . c + b_k = r`.
fn tangent_three(l0: &Line2, l1: &Line2, l2: &Line2) -> Option<(Point2, f64)> {
    // Unknowns (x, y, r).
    let m = [
        [l0.a, l0.b, -1.0, -l0.c],
        [l1.a, l1.b, -1.0, -l1.c],
        [l2.a, l2.b, -1.0, -l2.c],
    ];
    solve3(m).map(|(x, y, r)| (Point2::new(x, y), r))
}

fn solve3(mut m: [[f64; 4]; 3]) -> Option<(f64, f64, f64)> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, piv);
        for row in 0..3 {
            if row == col {
                continue;
            }
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    Some((m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]))
}

/// Builds the skeleton tree of a strictly convex polygon.
pub fn build_skeleton(poly: &ConvexPolygon) -> SkeletonTree {
    let n = poly.len();
    let lines: Vec<Line2> = (0..n).map(|i| edge_line(poly, i)).collect();
    let scale = poly.scale();

    // Leaves: polygon vertices. Vertex i sits between edges (i-1, i).
    let mut vertices: Vec<SkVertex> = (0..n)
        .map(|i| SkVertex {
            center: poly.vertex(i),
            clearance: 0.0,
            tangent_edges: vec![(i + n - 1) % n, i],
            parent: None,
            children: Vec::new(),
            depth: 0,
            preorder: 0,
            postorder: 0,
        })
        .collect();

    let mut traces: Vec<Trace> = (0..n)
        .map(|i| Trace {
            left_edge: (i + n - 1) % n,
            right_edge: i,
            origin_vertex: i,
            alive: true,
            prev: (i + n - 1) % n,
            next: (i + 1) % n,
        })
        .collect();
    let mut active = n;

    let mut heap: BinaryHeap<Event> = BinaryHeap::new();
    let push_event = |heap: &mut BinaryHeap<Event>, traces: &[Trace], li: usize, ri: usize| {
        // Collapse of the edge shared by the two traces.
        let l = &traces[li];
        let r = &traces[ri];
        debug_assert_eq!(l.right_edge, r.left_edge);
        if let Some((c, rad)) = tangent_three(
            &lines[l.left_edge],
            &lines[l.right_edge],
            &lines[r.right_edge],
        ) {
            if rad.is_finite() && rad >= 0.0 {
                heap.push(Event { radius: rad, left_trace: li, right_trace: ri, center: c });
            }
        }
    };
    for i in 0..n {
        push_event(&mut heap, &traces, i, (i + 1) % n);
    }

    #[allow(unused_assignments)]
    let mut last_vertex = 0usize;
    while active > 3 {
        let Some(ev) = heap.pop() else { break };
        if !traces[ev.left_trace].alive
            || !traces[ev.right_trace].alive
            || traces[ev.left_trace].next != ev.right_trace
        {
            continue;
        }
        last_vertex = merge_traces(&mut vertices, &mut traces, &ev);
        active -= 1;
        let t_new = traces.len() - 1;
        push_event(&mut heap, &traces, traces[t_new].prev, t_new);
        push_event(&mut heap, &traces, t_new, traces[t_new].next);
    }

    debug_assert_eq!(active, 3, "wavefront always ends with three edges");
    {
        // The remaining three traces meet at one final center.
        let mut alive_ids: Vec<usize> = (0..traces.len()).filter(|&i| traces[i].alive).collect();
        alive_ids.sort_by_key(|&i| traces[i].origin_vertex);
        let t0 = alive_ids[0];
        let (c, rad) = tangent_three(
            &lines[traces[t0].left_edge],
            &lines[traces[t0].right_edge],
            &lines[traces[traces[t0].next].right_edge],
        )
        .expect("three wavefront edges meet");
        let mut tangent: Vec<usize> = alive_ids
            .iter()
            .flat_map(|&i| [traces[i].left_edge, traces[i].right_edge])
            .collect();
        tangent.sort_unstable();
        tangent.dedup();
        let root = vertices.len();
        vertices.push(SkVertex {
            center: c,
            clearance: rad,
            tangent_edges: tangent,
            parent: None,
            children: alive_ids.iter().map(|&i| traces[i].origin_vertex).collect(),
            depth: 0,
            preorder: 0,
            postorder: 0,
        });
        for &i in &alive_ids {
            vertices[traces[i].origin_vertex].parent = Some(root);
        }
        last_vertex = root;
    }

    let mut root = last_vertex;
    contract_zero_edges(&mut vertices, root, scale);
    root = reroot_at_max_clearance(&mut vertices, root, scale);
    let root = renumber(&mut vertices, root);
    let up = build_ancestor_table(&vertices, root);
    SkeletonTree { polygon: poly.clone(), vertices, root, up }
}

/// When several vertices tie for the maximal clearance (the incircle is
/// tangent along a degenerate segment, as in a rectangle), the root is the
/// tied vertex with the lexicographically smallest center.
fn reroot_at_max_clearance(vertices: &mut [SkVertex], root: usize, scale: f64) -> usize {
    let tol = 1e-9 * scale;
    let max_c = vertices[root].clearance;
    let mut best = root;
    for v in topo_order(vertices, root) {
        if vertices[v].clearance >= max_c - tol
            && vertices[v].center.lex_le(vertices[best].center)
            && v != best
        {
            best = v;
        }
    }
    if best == root {
        return root;
    }
    // Reverse the parent chain from the new root up to the old one.
    let mut path = vec![best];
    let mut cur = best;
    while let Some(p) = vertices[cur].parent {
        path.push(p);
        cur = p;
    }
    for w in path.windows(2) {
        let (child, parent) = (w[0], w[1]);
        vertices[parent].children.retain(|&c| c != child);
        vertices[child].children.push(parent);
        vertices[parent].parent = Some(child);
    }
    vertices[best].parent = None;
    best
}

fn merge_traces(vertices: &mut Vec<SkVertex>, traces: &mut Vec<Trace>, ev: &Event) -> usize {
    let li = ev.left_trace;
    let ri = ev.right_trace;
    let (e_left, e_mid, e_right) = (
        traces[li].left_edge,
        traces[li].right_edge,
        traces[ri].right_edge,
    );
    let id = vertices.len();
    let (ol, or) = (traces[li].origin_vertex, traces[ri].origin_vertex);
    vertices.push(SkVertex {
        center: ev.center,
        clearance: ev.radius,
        tangent_edges: vec![e_left, e_mid, e_right],
        parent: None,
        children: vec![ol, or],
        depth: 0,
        preorder: 0,
        postorder: 0,
    });
    vertices[ol].parent = Some(id);
    vertices[or].parent = Some(id);

    traces[li].alive = false;
    traces[ri].alive = false;
    let prev = traces[li].prev;
    let next = traces[ri].next;
    let t_new = traces.len();
    traces.push(Trace {
        left_edge: e_left,
        right_edge: e_right,
        origin_vertex: id,
        alive: true,
        prev,
        next,
    });
    traces[prev].next = t_new;
    traces[next].prev = t_new;
    id
}

/// Merges chains of coincident event points (regular polygons produce many
/// events at the same center) so the tree has no zero-length edges.
fn contract_zero_edges(vertices: &mut [SkVertex], root: usize, scale: f64) {
    let tol = 1e-9 * scale;
    // Union children of any child coincident with its parent.
    let order = topo_order(vertices, root);
    for &v in order.iter().rev() {
        let kids: Vec<usize> = vertices[v].children.clone();
        let mut merged: Vec<usize> = Vec::new();
        let mut absorbed = false;
        for k in kids {
            if vertices[k].center.distance(vertices[v].center) <= tol
                && !vertices[k].children.is_empty()
            {
                absorbed = true;
                let grand = vertices[k].children.clone();
                let extra = vertices[k].tangent_edges.clone();
                for g in &grand {
                    vertices[*g].parent = Some(v);
                }
                merged.extend(grand);
                vertices[k].children.clear();
                vertices[k].parent = None; // detached
                let tang = &mut vertices[v].tangent_edges;
                tang.extend(extra);
                tang.sort_unstable();
                tang.dedup();
            } else {
                merged.push(k);
            }
        }
        vertices[v].children = merged;
        let _ = absorbed;
    }
}

fn topo_order(vertices: &[SkVertex], root: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(vertices.len());
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(vertices[v].children.iter().copied());
    }
    order
}

/// Drops detached vertices, renumbers, fills depth/preorder/postorder.
fn renumber(vertices: &mut Vec<SkVertex>, root: usize) -> usize {
    let reachable = topo_order(vertices, root);
    let mut map = vec![usize::MAX; vertices.len()];
    for (new, &old) in reachable.iter().enumerate() {
        map[old] = new;
    }
    let mut out: Vec<SkVertex> = Vec::with_capacity(reachable.len());
    for &old in &reachable {
        let mut v = vertices[old].clone();
        v.parent = v.parent.map(|p| map[p]);
        v.children = v.children.iter().map(|&c| map[c]).collect();
        out.push(v);
    }
    *vertices = out;
    let root = map[root];

    // Iterative DFS for depth and pre/post numbering.
    let mut pre = 0usize;
    let mut post = 0usize;
    let mut stack: Vec<(usize, usize, bool)> = vec![(root, 0, false)];
    while let Some((v, depth, expanded)) = stack.pop() {
        if expanded {
            vertices[v].postorder = post;
            post += 1;
            continue;
        }
        vertices[v].depth = depth;
        vertices[v].preorder = pre;
        pre += 1;
        stack.push((v, depth, true));
        let kids = vertices[v].children.clone();
        for k in kids {
            stack.push((k, depth + 1, false));
        }
    }
    root
}

fn build_ancestor_table(vertices: &[SkVertex], root: usize) -> Vec<Vec<usize>> {
    let n = vertices.len();
    let max_depth = vertices.iter().map(|v| v.depth).max().unwrap_or(0);
    let levels = (usize::BITS - max_depth.max(1).leading_zeros()) as usize;
    let mut up = Vec::with_capacity(levels.max(1));
    let mut base = vec![root; n];
    for (i, v) in vertices.iter().enumerate() {
        base[i] = v.parent.unwrap_or(root);
    }
    up.push(base);
    for i in 1..levels.max(1) {
        let prev = &up[i - 1];
        let next: Vec<usize> = (0..n).map(|v| prev[prev[v]]).collect();
        up.push(next);
    }
    up
}

impl SkeletonTree {
    /// The incircle: largest circle inscribed in the polygon.
    pub fn incircle(&self) -> crate::geom::Circle2 {
        let r = &self.vertices[self.root];
        crate::geom::Circle2::new(r.center, r.clearance)
    }

    /// `2^i`-th ancestor of `v`, clamped at the root.
    pub fn ancestor_pow2(&self, v: usize, i: usize) -> usize {
        if i >= self.up.len() {
            return self.root;
        }
        self.up[i][v]
    }

    /// Ancestor at arbitrary distance via jump decomposition.
    pub fn ancestor(&self, mut v: usize, mut dist: usize) -> usize {
        let mut i = 0;
        while dist > 0 {
            if dist & 1 == 1 {
                v = self.ancestor_pow2(v, i);
            }
            dist >>= 1;
            i += 1;
        }
        v
    }

    /// Is `a` an ancestor of (or equal to) `d`? O(1) via interval test.
    pub fn is_ancestor(&self, a: usize, d: usize) -> bool {
        let va = &self.vertices[a];
        let vd = &self.vertices[d];
        va.preorder <= vd.preorder && vd.postorder <= va.postorder
    }

    /// Tree edges in (parent, child) orientation with their bisector pair.
    pub fn edges(&self) -> Vec<SkEdge> {
        let mut out = Vec::with_capacity(self.vertices.len().saturating_sub(1));
        for (child, v) in self.vertices.iter().enumerate() {
            let Some(parent) = v.parent else { continue };
            let pair = shared_pair(&self.vertices[parent], v);
            out.push(SkEdge { parent, child, edge_pair: pair });
        }
        out
    }

    /// Clearance of a point inside the polygon: distance to the boundary.
    pub fn clearance_at(&self, p: Point2) -> Option<f64> {
        if self.polygon.locate_point(p) == crate::geom::Location::Exterior {
            return None;
        }
        let d = self
            .polygon
            .edges()
            .map(|e| crate::geom::distance_point_segment(p, e))
            .fold(f64::INFINITY, f64::min);
        Some(d)
    }

    /// Skeleton vertex nearest to achieving the path between two tangency
    /// pairs; mostly a test helper.
    pub fn vertex_segment(&self, e: &SkEdge) -> Segment2 {
        Segment2::new(self.vertices[e.parent].center, self.vertices[e.child].center)
    }
}

/// The two polygon edges shared between a parent and child skeleton vertex:
/// the child's skeleton edge runs along their bisector.
pub fn shared_pair(parent: &SkVertex, child: &SkVertex) -> (usize, usize) {
    let mut shared: Vec<usize> = parent
        .tangent_edges
        .iter()
        .copied()
        .filter(|e| child.tangent_edges.contains(e))
        .collect();
    shared.sort_unstable();
    debug_assert!(shared.len() >= 2, "skeleton edge must share two polygon edges");
    (shared[0], shared[1])
}

/// Is the circle internal to the polygon (radius within clearance at its
/// center, up to tolerance)?
pub fn circle_is_internal(skt: &SkeletonTree, circle: &crate::geom::Circle2) -> bool {
    match skt.clearance_at(circle.center) {
        Some(c) => circle.radius <= c + crate::geom::eps() * (1.0 + circle.radius),
        None => false,
    }
}

/// Direction of the child's bisector at the parent, used by the planar map.
pub fn bisector_dir(skt: &SkeletonTree, parent: usize, child: usize) -> Vec2 {
    (skt.vertices[child].center - skt.vertices[parent].center).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn convex(pts: &[(f64, f64)]) -> ConvexPolygon {
        ConvexPolygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    fn square2() -> ConvexPolygon {
        convex(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
    }

    #[test]
    fn square_skeleton() {
        let skt = build_skeleton(&square2());
        let root = &skt.vertices[skt.root];
        assert!(root.center.distance(Point2::new(0.0, 0.0)) < 1e-9);
        assert!((root.clearance - 1.0).abs() < 1e-9);
        assert_eq!(root.children.len(), 4);
        // Leaves are the four corners at clearance zero.
        for &c in &root.children {
            let leaf = &skt.vertices[c];
            assert!(leaf.children.is_empty());
            assert_eq!(leaf.clearance, 0.0);
        }
        assert_eq!(skt.vertices.len(), 5);
    }

    #[test]
    fn rectangle_degenerate_spine() {
        let rect = convex(&[(-2.0, -1.0), (2.0, -1.0), (2.0, 1.0), (-2.0, 1.0)]);
        let skt = build_skeleton(&rect);
        let root = &skt.vertices[skt.root];
        assert!((root.clearance - 1.0).abs() < 1e-9);
        assert!(root.center.distance(Point2::new(-1.0, 0.0)) < 1e-9, "root {:?}", root.center);
        // The other spine endpoint carries the same clearance.
        let spine_other = skt
            .vertices
            .iter()
            .position(|v| v.center.distance(Point2::new(1.0, 0.0)) < 1e-9)
            .expect("other spine endpoint");
        assert!((skt.vertices[spine_other].clearance - 1.0).abs() < 1e-9);
        // 4 leaves + 2 spine vertices.
        assert_eq!(skt.vertices.len(), 6);
    }

    #[test]
    fn equilateral_triangle_root_is_incenter() {
        let h = 3f64.sqrt();
        let tri = convex(&[(0.0, 0.0), (2.0, 0.0), (1.0, h)]);
        let skt = build_skeleton(&tri);
        let root = &skt.vertices[skt.root];
        let inradius = h / 3.0;
        assert!((root.clearance - inradius).abs() < 1e-9);
        assert!(root.center.distance(Point2::new(1.0, inradius)) < 1e-9);
        assert_eq!(root.children.len(), 3);
    }

    #[test]
    fn clearance_decreases_toward_leaves() {
        let poly = convex(&[
            (0.0, 0.0),
            (4.0, 0.0),
            (5.0, 2.0),
            (3.5, 4.0),
            (1.0, 3.5),
            (-0.5, 1.5),
        ]);
        let skt = build_skeleton(&poly);
        for e in skt.edges() {
            assert!(
                skt.vertices[e.parent].clearance >= skt.vertices[e.child].clearance - 1e-9,
                "clearance must not grow downward"
            );
        }
        // Leaves are exactly the polygon vertices.
        let leaves: Vec<&SkVertex> =
            skt.vertices.iter().filter(|v| v.children.is_empty()).collect();
        assert_eq!(leaves.len(), poly.len());
        for leaf in leaves {
            assert!(poly.vertices().iter().any(|p| p.distance(leaf.center) < 1e-9));
        }
    }

    #[test]
    fn ancestor_table_matches_parent_squaring() {
        let poly = convex(&[
            (0.0, 0.0),
            (3.0, -0.5),
            (5.0, 1.0),
            (5.5, 3.0),
            (4.0, 4.5),
            (1.5, 4.8),
            (-0.5, 3.0),
            (-1.0, 1.0),
        ]);
        let skt = build_skeleton(&poly);
        for v in 0..skt.vertices.len() {
            for i in 0..6 {
                let mut w = v;
                for _ in 0..(1usize << i) {
                    w = skt.vertices[w].parent.unwrap_or(skt.root);
                }
                assert_eq!(skt.ancestor_pow2(v, i), w, "v={v} i={i}");
                assert_eq!(skt.ancestor(v, 1 << i), w);
            }
        }
        // Interval ancestry agrees with parent chasing.
        for v in 0..skt.vertices.len() {
            let mut anc = v;
            loop {
                assert!(skt.is_ancestor(anc, v));
                match skt.vertices[anc].parent {
                    Some(p) => anc = p,
                    None => break,
                }
            }
        }
    }

    #[test]
    fn concavity_of_clearance() {
        use rand::{Rng, SeedableRng};
        let poly = convex(&[
            (0.0, 0.0),
            (4.0, 0.2),
            (5.0, 2.0),
            (3.0, 4.0),
            (0.5, 3.0),
        ]);
        let skt = build_skeleton(&poly);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut pts: Vec<Point2> = Vec::new();
        while pts.len() < 200 {
            let p = Point2::new(rng.gen_range(0.0..5.0), rng.gen_range(0.0..4.0));
            if poly.locate_point(p) == crate::geom::Location::Interior {
                pts.push(p);
            }
        }
        for (k, pair) in pts.chunks(2).enumerate() {
            let [a, b] = [pair[0], pair[1]];
            let lam = 0.1 + 0.8 * ((k % 9) as f64 / 9.0);
            let mid = a.lerp(b, lam);
            let ca = skt.clearance_at(a).unwrap();
            let cb = skt.clearance_at(b).unwrap();
            let cm = skt.clearance_at(mid).unwrap();
            assert!(cm >= (1.0 - lam) * ca + lam * cb - 1e-9);
        }
    }
}
