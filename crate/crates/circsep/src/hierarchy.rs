//! Hierarchical representation of the convex body under the lifted surface,
//! supporting logarithmic extremal line and parabola queries.
//!
//! Levels are built by repeatedly removing an independent set of low-degree
//! vertices and re-hulling each hole. Queries walk from the coarsest level
//! back to the finest, extending the feasible parameter interval only through
//! the caps of re-inserted vertices, so each level costs constant work.

use crate::geom::Point2;
use crate::lift::{LiftedSurface, Plane3};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy)]
struct Tri {
    v: [u32; 3],
    plane: Plane3,
}

/// One polyhedron of the hierarchy (triangulated faces over global vertex
/// ids).
#[derive(Debug, Clone)]
pub struct Level {
    tris: Vec<Tri>,
    active: Vec<u32>,
}

impl Level {
    pub fn face_count(&self) -> usize {
        self.tris.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.active.len()
    }

    pub fn vertex_ids(&self) -> &[u32] {
        &self.active
    }

    pub fn face_plane(&self, i: usize) -> Plane3 {
        self.tris[i].plane
    }
}

#[derive(Debug, Clone)]
struct RemovedRec {
    /// Faces of the finer level that formed the removed vertex's star.
    star: Vec<u32>,
}

#[derive(Debug, Clone)]
struct Transition {
    /// For each coarser-level face: the finer-level face it was copied from,
    /// or `u32::MAX` when it is a hole fill.
    copied_from: Vec<u32>,
    /// Fill face -> removed-vertex record.
    fill_of: HashMap<u32, u32>,
    removed: Vec<RemovedRec>,
}

/// The hierarchy: level 0 is the full body, the last level a constant-size
/// core. Every vertex of a coarser level is a vertex of the finer one and
/// every coarser polyhedron is contained in the finer.
#[derive(Debug, Clone)]
pub struct DKHierarchy {
    pub verts: Vec<[f64; 3]>,
    pub levels: Vec<Level>,
    transitions: Vec<Transition>,
    interior: [f64; 3],
    scale: f64,
}

/// Outcome of a hierarchy query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtremalPoint {
    Point([f64; 3]),
    Empty,
    /// The coarse core missed the curve; the caller decides how to resolve
    /// (the query layer falls back to the clearance envelope).
    CoarseMiss,
}

/// Builds the hierarchy for the body `0 <= z <= clearance(x, y)`.
pub fn build_hierarchy(surface: &LiftedSurface, polygon: &crate::geom::ConvexPolygon) -> DKHierarchy {
    let verts = surface.vertices.clone();
    let n = polygon.len();
    let scale = polygon.scale();

    let mut tris: Vec<Tri> = Vec::new();
    // Bottom face: zigzag triangulation of the polygon at z = 0.
    let bottom_plane = Plane3 { n: [0.0, 0.0, -1.0], d: 0.0 };
    for t in zigzag(&(0..n as u32).collect::<Vec<_>>()) {
        // Reverse for outward (downward) orientation.
        tris.push(Tri { v: [t[0], t[2], t[1]], plane: bottom_plane });
    }
    // Roof faces.
    for f in &surface.faces {
        let cycle: Vec<u32> = f.cycle.iter().map(|&i| i as u32).collect();
        for t in zigzag(&cycle) {
            tris.push(Tri { v: t, plane: f.plane });
        }
    }

    let active: Vec<u32> = (0..verts.len() as u32).collect();
    let incircle_root = surface
        .vertices
        .iter()
        .enumerate()
        .max_by(|a, b| a.1[2].total_cmp(&b.1[2]))
        .map(|(i, _)| i)
        .unwrap();
    let apex = verts[incircle_root];
    let interior = [apex[0], apex[1], 0.5 * apex[2]];

    let mut levels = vec![Level { tris, active }];
    let mut transitions = Vec::new();
    loop {
        let current = levels.last().unwrap();
        if current.active.len() <= 6 {
            break;
        }
        match coarsen(&verts, current, interior, scale) {
            Some((level, transition)) => {
                transitions.push(transition);
                levels.push(level);
            }
            None => break,
        }
    }

    DKHierarchy { verts, levels, transitions, interior, scale }
}

/// Zigzag triangulation of a convex cycle; keeps vertex degrees bounded.
fn zigzag(cycle: &[u32]) -> Vec<[u32; 3]> {
    let k = cycle.len();
    let mut out = Vec::with_capacity(k.saturating_sub(2));
    let (mut lo, mut hi) = (0usize, k - 1);
    let mut from_low = true;
    while hi - lo >= 2 {
        if from_low {
            out.push([cycle[lo], cycle[lo + 1], cycle[hi]]);
            lo += 1;
        } else {
            out.push([cycle[hi - 1], cycle[hi], cycle[lo]]);
            hi -= 1;
        }
        from_low = !from_low;
    }
    out
}

const DEGREE_LIMIT: usize = 8;

fn coarsen(
    verts: &[[f64; 3]],
    level: &Level,
    interior: [f64; 3],
    scale: f64,
) -> Option<(Level, Transition)> {
    // Adjacency: vertex -> incident tris; vertex -> neighbor set size.
    let mut star: HashMap<u32, Vec<u32>> = HashMap::new();
    for (ti, t) in level.tris.iter().enumerate() {
        for &v in &t.v {
            star.entry(v).or_default().push(ti as u32);
        }
    }
    let neighbors = |v: u32| -> Vec<u32> {
        let mut ns: Vec<u32> = star[&v]
            .iter()
            .flat_map(|&ti| level.tris[ti as usize].v)
            .filter(|&w| w != v)
            .collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    };

    // Greedy independent set among low-degree vertices.
    let mut blocked: HashMap<u32, bool> = HashMap::new();
    let mut selected: Vec<(u32, Vec<u32>)> = Vec::new();
    for &v in &level.active {
        if *blocked.get(&v).unwrap_or(&false) {
            continue;
        }
        let ns = neighbors(v);
        if ns.len() > DEGREE_LIMIT {
            continue;
        }
        // Removing the apex of a near-flat polytope would collapse it.
        if ns.len() + 1 == level.active.len() {
            continue;
        }
        blocked.insert(v, true);
        for &w in &ns {
            blocked.insert(w, true);
        }
        selected.push((v, ns));
    }
    if selected.is_empty() {
        return None;
    }

    let mut dead_tri = vec![false; level.tris.len()];
    let mut new_tris: Vec<Tri> = Vec::new();
    let mut fills: Vec<(u32, Vec<Tri>)> = Vec::new(); // removed idx -> fill tris
    let mut removed: Vec<RemovedRec> = Vec::new();

    for (v, ns) in &selected {
        let st = &star[v];
        for &ti in st {
            dead_tri[ti as usize] = true;
        }
        removed.push(RemovedRec { star: st.clone() });
        let patch = fill_hole(verts, *v, ns, interior, scale);
        fills.push(((removed.len() - 1) as u32, patch));
    }

    let mut copied_from: Vec<u32> = Vec::new();
    let mut tris: Vec<Tri> = Vec::new();
    for (ti, t) in level.tris.iter().enumerate() {
        if !dead_tri[ti] {
            copied_from.push(ti as u32);
            tris.push(*t);
        }
    }
    let mut fill_of: HashMap<u32, u32> = HashMap::new();
    for (rec_idx, patch) in fills {
        for t in patch {
            fill_of.insert(tris.len() as u32, rec_idx);
            copied_from.push(u32::MAX);
            tris.push(t);
        }
    }

    let removed_set: std::collections::HashSet<u32> =
        selected.iter().map(|(v, _)| *v).collect();
    let active: Vec<u32> = level
        .active
        .iter()
        .copied()
        .filter(|v| !removed_set.contains(v))
        .collect();
    new_tris.clear();

    Some((Level { tris, active }, Transition { copied_from, fill_of, removed }))
}

/// Convex-hull patch closing the hole left by `v`: the faces of the link's
/// mini hull that face the removed vertex.
fn fill_hole(verts: &[[f64; 3]], v: u32, link: &[u32], interior: [f64; 3], scale: f64) -> Vec<Tri> {
    let pts: Vec<[f64; 3]> = link.iter().map(|&i| verts[i as usize]).collect();
    let vp = verts[v as usize];
    let tol = 1e-9 * (1.0 + scale);
    let k = pts.len();
    let mut patch: Vec<Tri> = Vec::new();
    let mut used_planes: Vec<Plane3> = Vec::new();

    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let Some(mut plane) = plane_through(pts[i], pts[j], pts[l]) else { continue };
                // Orient outward: the interior point goes inside.
                if plane.eval(interior) > 0.0 {
                    plane = Plane3 { n: [-plane.n[0], -plane.n[1], -plane.n[2]], d: -plane.d };
                }
                // Facet of the link hull: every link point inside.
                if pts.iter().any(|p| plane.eval(*p) > tol) {
                    continue;
                }
                // Patch side: the removed vertex must lie strictly outside.
                if plane.eval(vp) <= tol {
                    continue;
                }
                if used_planes
                    .iter()
                    .any(|q| (q.eval(pts[i])).abs() < tol && same_plane(q, &plane, tol))
                {
                    continue;
                }
                used_planes.push(plane);
                // All link points on this plane, as a fan around the first.
                let mut on: Vec<u32> = (0..k)
                    .filter(|&m| plane.eval(pts[m]).abs() <= tol)
                    .map(|m| m as u32)
                    .collect();
                sort_cycle_on_plane(&pts, &mut on, &plane);
                for w in 1..on.len() - 1 {
                    let (a, b, c) = (on[0], on[w], on[w + 1]);
                    patch.push(Tri {
                        v: [link[a as usize], link[b as usize], link[c as usize]],
                        plane,
                    });
                }
            }
        }
    }
    debug_assert!(!patch.is_empty(), "hole fill produced no faces");
    patch
}

fn plane_through(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Option<Plane3> {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let n = [
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    ];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if len < 1e-18 {
        return None;
    }
    let n = [n[0] / len, n[1] / len, n[2] / len];
    Some(Plane3 { n, d: n[0] * a[0] + n[1] * a[1] + n[2] * a[2] })
}

fn same_plane(a: &Plane3, b: &Plane3, tol: f64) -> bool {
    (a.n[0] - b.n[0]).abs() < 1e-7
        && (a.n[1] - b.n[1]).abs() < 1e-7
        && (a.n[2] - b.n[2]).abs() < 1e-7
        && (a.d - b.d).abs() < tol * 8.0
}

fn sort_cycle_on_plane(pts: &[[f64; 3]], idx: &mut [u32], plane: &Plane3) {
    // Angular sort around the centroid in the plane's own frame.
    let c = idx.iter().fold([0.0; 3], |acc, &i| {
        let p = pts[i as usize];
        [acc[0] + p[0], acc[1] + p[1], acc[2] + p[2]]
    });
    let k = idx.len() as f64;
    let c = [c[0] / k, c[1] / k, c[2] / k];
    let n = plane.n;
    // Any in-plane axis.
    let ax = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = cross3(n, ax);
    let u = norm3(u);
    let w = cross3(n, u);
    idx.sort_by(|&i, &j| {
        let ang = |m: u32| {
            let p = pts[m as usize];
            let d = [p[0] - c[0], p[1] - c[1], p[2] - c[2]];
            (dot3(d, w)).atan2(dot3(d, u))
        };
        ang(i).total_cmp(&ang(j))
    });
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> [f64; 3] {
    let l = dot3(a, a).sqrt();
    [a[0] / l, a[1] / l, a[2] / l]
}

/// A line in 3D, parameterized `origin + t * dir`.
#[derive(Debug, Clone, Copy)]
pub struct Line3 {
    pub origin: [f64; 3],
    pub dir: [f64; 3],
}

impl Line3 {
    pub fn at(&self, t: f64) -> [f64; 3] {
        [
            self.origin[0] + t * self.dir[0],
            self.origin[1] + t * self.dir[1],
            self.origin[2] + t * self.dir[2],
        ]
    }
}

#[derive(Debug, Clone, Copy)]
struct ClippedInterval {
    lo: f64,
    hi: f64,
    sup_lo: Option<u32>,
    sup_hi: Option<u32>,
}

impl DKHierarchy {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Point of the line inside the body with maximal z (ties resolve to the
    /// lexicographically smallest point).
    pub fn max_z_on_line(&self, line: &Line3) -> ExtremalPoint {
        let tol = 1e-12 * (1.0 + self.scale);
        let coarse = self.levels.len() - 1;
        let Some(mut iv) = clip_line_all(&self.levels[coarse], line, tol) else {
            return if self.levels.len() == 1 {
                ExtremalPoint::Empty
            } else {
                ExtremalPoint::CoarseMiss
            };
        };
        for k in (0..self.transitions.len()).rev() {
            iv = self.refine_line(k, iv, line, tol);
        }
        let (plo, phi) = (line.at(iv.lo), line.at(iv.hi));
        let best = if (plo[2] - phi[2]).abs() <= tol {
            if plo <= phi {
                plo
            } else {
                phi
            }
        } else if plo[2] > phi[2] {
            plo
        } else {
            phi
        };
        ExtremalPoint::Point(best)
    }

    /// Extends an interval from level `k + 1` down to level `k`, crossing
    /// only the caps of vertices re-inserted by this transition.
    fn refine_line(&self, k: usize, iv: ClippedInterval, line: &Line3, tol: f64) -> ClippedInterval {
        let tr = &self.transitions[k];
        let fine = &self.levels[k];
        let mut out = iv;

        for upper in [false, true] {
            let (t_cur, sup) = if upper { (out.hi, out.sup_hi) } else { (out.lo, out.sup_lo) };
            let Some(sup) = sup else { continue };
            // Map the supporting face into the finer level.
            if tr.copied_from[sup as usize] != u32::MAX {
                let mapped = tr.copied_from[sup as usize];
                if upper {
                    out.sup_hi = Some(mapped);
                } else {
                    out.sup_lo = Some(mapped);
                }
                continue;
            }
            // Fill face: extend through the cap of its removed vertex.
            let rec = &tr.removed[tr.fill_of[&sup] as usize];
            let mut best_t = if upper { f64::INFINITY } else { f64::NEG_INFINITY };
            let mut best_face = None;
            for &fi in &rec.star {
                let plane = fine.tris[fi as usize].plane;
                let denom = dot3(plane.n, line.dir);
                let num = plane.d - dot3(plane.n, line.origin);
                if denom.abs() < 1e-15 {
                    continue;
                }
                let t_cross = num / denom;
                if upper && denom > 0.0 && t_cross >= t_cur - tol && t_cross < best_t {
                    best_t = t_cross;
                    best_face = Some(fi);
                } else if !upper && denom < 0.0 && t_cross <= t_cur + tol && t_cross > best_t {
                    best_t = t_cross;
                    best_face = Some(fi);
                }
            }
            if let Some(f) = best_face {
                if upper {
                    out.hi = best_t.max(out.hi);
                    out.sup_hi = Some(f);
                } else {
                    out.lo = best_t.min(out.lo);
                    out.sup_lo = Some(f);
                }
            }
        }
        out
    }

    /// Exhaustive clip against the finest level; the reference the hierarchy
    /// is tested against.
    pub fn max_z_on_line_exhaustive(&self, line: &Line3) -> ExtremalPoint {
        let tol = 1e-12 * (1.0 + self.scale);
        match clip_line_all(&self.levels[0], line, tol) {
            Some(iv) => {
                let (plo, phi) = (line.at(iv.lo), line.at(iv.hi));
                ExtremalPoint::Point(if plo[2] >= phi[2] { plo } else { phi })
            }
            None => ExtremalPoint::Empty,
        }
    }

    /// Point of a lifted tangency parabola inside the body with maximal z.
    ///
    /// The parabola is the set of circles through `focus` tangent to the
    /// directrix line, lifted: parameterized by arclength `u` along the
    /// directrix with height `w(u) = (u^2 + h^2) / 2h`.
    pub fn max_z_on_parabola(&self, par: &Parabola) -> ExtremalPoint {
        let tol = 1e-12 * (1.0 + self.scale);
        let coarse = self.levels.len() - 1;
        let Some(mut iv) = clip_parabola_all(&self.levels[coarse], par, tol) else {
            return if self.levels.len() == 1 {
                ExtremalPoint::Empty
            } else {
                ExtremalPoint::CoarseMiss
            };
        };
        for k in (0..self.transitions.len()).rev() {
            iv = self.refine_parabola(k, iv, par, tol);
        }
        let (plo, phi) = (par.at(iv.lo), par.at(iv.hi));
        // z = w(u) is convex in u: the max sits at an interval endpoint.
        let best = if (plo[2] - phi[2]).abs() <= tol {
            if plo <= phi {
                plo
            } else {
                phi
            }
        } else if plo[2] > phi[2] {
            plo
        } else {
            phi
        };
        ExtremalPoint::Point(best)
    }

    fn refine_parabola(
        &self,
        k: usize,
        iv: ClippedInterval,
        par: &Parabola,
        tol: f64,
    ) -> ClippedInterval {
        let tr = &self.transitions[k];
        let fine = &self.levels[k];
        let mut out = iv;
        for upper in [false, true] {
            let (u_cur, sup) = if upper { (out.hi, out.sup_hi) } else { (out.lo, out.sup_lo) };
            let Some(sup) = sup else { continue };
            if tr.copied_from[sup as usize] != u32::MAX {
                let mapped = tr.copied_from[sup as usize];
                if upper {
                    out.sup_hi = Some(mapped);
                } else {
                    out.sup_lo = Some(mapped);
                }
                continue;
            }
            let rec = &tr.removed[tr.fill_of[&sup] as usize];
            let mut best_u = if upper { f64::INFINITY } else { f64::NEG_INFINITY };
            let mut best_face = None;
            for &fi in &rec.star {
                let plane = fine.tris[fi as usize].plane;
                if let Some(u_cross) = par.first_violation(&plane, u_cur, upper, tol) {
                    if upper && u_cross < best_u {
                        best_u = u_cross;
                        best_face = Some(fi);
                    } else if !upper && u_cross > best_u {
                        best_u = u_cross;
                        best_face = Some(fi);
                    }
                }
            }
            if let Some(f) = best_face {
                if upper {
                    out.hi = best_u.max(out.hi);
                    out.sup_hi = Some(f);
                } else {
                    out.lo = best_u.min(out.lo);
                    out.sup_lo = Some(f);
                }
            }
        }
        out
    }

    /// Exhaustive parabola clip against the finest level.
    pub fn max_z_on_parabola_exhaustive(&self, par: &Parabola) -> ExtremalPoint {
        let tol = 1e-12 * (1.0 + self.scale);
        match clip_parabola_all(&self.levels[0], par, tol) {
            Some(iv) => {
                let (plo, phi) = (par.at(iv.lo), par.at(iv.hi));
                ExtremalPoint::Point(if plo[2] >= phi[2] { plo } else { phi })
            }
            None => ExtremalPoint::Empty,
        }
    }

    /// Interior reference point (used by tests).
    pub fn interior_point(&self) -> [f64; 3] {
        self.interior
    }
}

fn clip_line_all(level: &Level, line: &Line3, tol: f64) -> Option<ClippedInterval> {
    let mut iv = ClippedInterval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        sup_lo: None,
        sup_hi: None,
    };
    for (fi, t) in level.tris.iter().enumerate() {
        let denom = dot3(t.plane.n, line.dir);
        let num = t.plane.d - dot3(t.plane.n, line.origin);
        if denom.abs() < 1e-15 {
            if num < -tol {
                return None;
            }
            continue;
        }
        let t_cross = num / denom;
        if denom > 0.0 {
            if t_cross < iv.hi {
                iv.hi = t_cross;
                iv.sup_hi = Some(fi as u32);
            }
        } else if t_cross > iv.lo {
            iv.lo = t_cross;
            iv.sup_lo = Some(fi as u32);
        }
    }
    (iv.lo <= iv.hi + tol).then_some(iv)
}

/// Lifted tangency parabola: circles through a focus tangent to a directrix.
#[derive(Debug, Clone, Copy)]
pub struct Parabola {
    /// Projection of the focus onto the directrix.
    pub foot: [f64; 2],
    /// Unit direction along the directrix.
    pub tangent: [f64; 2],
    /// Unit normal from the directrix toward the focus.
    pub normal: [f64; 2],
    /// Distance from focus to directrix (positive).
    pub h: f64,
}

impl Parabola {
    /// From a focus point and directrix line; `None` when the focus sits on
    /// the line (the parabola degenerates to a ray).
    pub fn new(focus: Point2, directrix: &crate::geom::Line2) -> Option<Parabola> {
        let d = directrix.signed_distance(focus);
        if d.abs() < 1e-300 {
            return None;
        }
        let foot = directrix.project(focus);
        let normal = if d > 0.0 {
            directrix.normal()
        } else {
            -directrix.normal()
        };
        Some(Parabola {
            foot: [foot.x, foot.y],
            tangent: [directrix.direction().x, directrix.direction().y],
            normal: [normal.x, normal.y],
            h: d.abs(),
        })
    }

    pub fn height(&self, u: f64) -> f64 {
        (u * u + self.h * self.h) / (2.0 * self.h)
    }

    pub fn at(&self, u: f64) -> [f64; 3] {
        let w = self.height(u);
        [
            self.foot[0] + u * self.tangent[0] + w * self.normal[0],
            self.foot[1] + u * self.tangent[1] + w * self.normal[1],
            w,
        ]
    }

    /// Quadratic coefficients of `plane.eval(at(u))` as `A u^2 + B u + C`.
    fn quad(&self, plane: &Plane3) -> (f64, f64, f64) {
        let nxy_t = plane.n[0] * self.tangent[0] + plane.n[1] * self.tangent[1];
        let nxy_m = plane.n[0] * self.normal[0] + plane.n[1] * self.normal[1] + plane.n[2];
        let base = plane.n[0] * self.foot[0] + plane.n[1] * self.foot[1] - plane.d;
        // eval = nxy_t * u + nxy_m * w(u) + base, w(u) = (u^2 + h^2) / 2h
        let a = nxy_m / (2.0 * self.h);
        let b = nxy_t;
        let c = base + nxy_m * self.h / 2.0;
        (a, b, c)
    }

    /// Feasible `u`-interval for one halfspace, `None` when empty.
    fn clip(&self, plane: &Plane3, tol: f64) -> Option<(f64, f64)> {
        let (a, b, c) = self.quad(plane);
        if a.abs() < 1e-14 {
            if b.abs() < 1e-14 {
                return if c <= tol {
                    Some((f64::NEG_INFINITY, f64::INFINITY))
                } else {
                    None
                };
            }
            let r = -c / b;
            return Some(if b > 0.0 {
                (f64::NEG_INFINITY, r)
            } else {
                (r, f64::INFINITY)
            });
        }
        let disc = b * b - 4.0 * a * c;
        if a > 0.0 {
            if disc < -1e-12 {
                return None;
            }
            let s = disc.max(0.0).sqrt();
            Some(((-b - s) / (2.0 * a), (-b + s) / (2.0 * a)))
        } else {
            // Concave constraint (the floor plane): feasible outside the
            // roots; vacuous for tangency parabolas, which never go below
            // the floor.
            Some((f64::NEG_INFINITY, f64::INFINITY))
        }
    }

    /// First `u` beyond `from` (in the given direction) where the constraint
    /// becomes violated, if any.
    fn first_violation(&self, plane: &Plane3, from: f64, upward: bool, tol: f64) -> Option<f64> {
        let (lo, hi) = self.clip(plane, tol)?;
        if upward {
            (hi.is_finite() && hi >= from - tol).then_some(hi)
        } else {
            (lo.is_finite() && lo <= from + tol).then_some(lo)
        }
    }
}

fn clip_parabola_all(level: &Level, par: &Parabola, tol: f64) -> Option<ClippedInterval> {
    let mut iv = ClippedInterval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        sup_lo: None,
        sup_hi: None,
    };
    for (fi, t) in level.tris.iter().enumerate() {
        match par.clip(&t.plane, tol) {
            None => return None,
            Some((lo, hi)) => {
                if lo > iv.lo {
                    iv.lo = lo;
                    iv.sup_lo = Some(fi as u32);
                }
                if hi < iv.hi {
                    iv.hi = hi;
                    iv.sup_hi = Some(fi as u32);
                }
            }
        }
    }
    (iv.lo <= iv.hi + tol && iv.lo.is_finite() && iv.hi.is_finite()).then_some(iv)
}
