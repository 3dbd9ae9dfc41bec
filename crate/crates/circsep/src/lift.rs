//! The polyhedral surface over a convex polygon whose height is the
//! clearance function: the lower envelope of one 45-degree plane per edge.
//!
//! The map `(x, y, r) <-> circle centered (x, y) of radius r` turns internal
//! circles into points under the surface, circles tangent to an edge into
//! points on that edge's face, and the skeleton into the projection of the
//! surface's edge graph.

use crate::geom::Point2;
use crate::skeleton::{edge_line, SkeletonTree};

/// A plane in halfspace form: inside is `n · x <= d`, `n` unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane3 {
    pub n: [f64; 3],
    pub d: f64,
}

impl Plane3 {
    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.n[0] * p[0] + self.n[1] * p[1] + self.n[2] * p[2] - self.d
    }
}

/// One roof face: the 45-degree plane of a polygon edge, bounded by the edge
/// at height zero and a chain of lifted skeleton vertices.
#[derive(Debug, Clone)]
pub struct Face {
    /// Index of the polygon edge the face stands on.
    pub edge: usize,
    pub plane: Plane3,
    /// Vertex cycle, counterclockwise seen from outside (above).
    pub cycle: Vec<usize>,
}

/// The lifted surface: vertices are skeleton vertices with their clearance as
/// height (leaves coincide with the polygon vertices at height zero).
#[derive(Debug, Clone)]
pub struct LiftedSurface {
    /// One 3D point per skeleton vertex, same indexing as the tree.
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Face>,
    /// Surface edges, mirroring the skeleton's (parent, child) pairs.
    pub edges: Vec<(usize, usize)>,
}

/// Lifts a circle to its representative point.
pub fn lift_circle(c: &crate::geom::Circle2) -> [f64; 3] {
    [c.center.x, c.center.y, c.radius]
}

/// Builds the surface from a skeleton tree.
pub fn build_lifted_surface(skt: &SkeletonTree) -> LiftedSurface {
    let poly = &skt.polygon;
    let n = poly.len();
    let vertices: Vec<[f64; 3]> = skt
        .vertices
        .iter()
        .map(|v| [v.center.x, v.center.y, v.clearance])
        .collect();
    let edges: Vec<(usize, usize)> = skt
        .edges()
        .iter()
        .map(|e| (e.parent, e.child))
        .collect();

    let mut faces = Vec::with_capacity(n);
    for e in 0..n {
        let line = edge_line(poly, e);
        // z = a x + b y + c  <=>  (-a, -b, 1) . p <= c holds inside the body.
        let s = 2f64.sqrt();
        let plane = Plane3 { n: [-line.a / s, -line.b / s, 1.0 / s], d: line.c / s };

        // Skeleton vertices tangent to this edge, ordered along it.
        let dir = line.direction();
        let origin = poly.vertex(e);
        let mut touching: Vec<usize> = skt
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.tangent_edges.contains(&e))
            .map(|(i, _)| i)
            .collect();
        touching.sort_by(|&i, &j| {
            let pi = (skt.vertices[i].center - origin).dot(dir);
            let pj = (skt.vertices[j].center - origin).dot(dir);
            pi.total_cmp(&pj)
        });
        debug_assert!(touching.len() >= 2, "edge face needs its two leaf corners");
        // Bottom run from the first leaf to the last, then back along the
        // roof chain.
        let mut cycle = vec![touching[0], touching[touching.len() - 1]];
        for &v in touching[1..touching.len() - 1].iter().rev() {
            cycle.push(v);
        }
        faces.push(Face { edge: e, plane, cycle });
    }

    LiftedSurface { vertices, faces, edges }
}

/// Height of the surface over a point: the clearance, by definition.
pub fn surface_height(skt: &SkeletonTree, p: Point2) -> Option<f64> {
    skt.clearance_at(p)
}
