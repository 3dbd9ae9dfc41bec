use circsep::geom::*;
use circsep::planar_map::*;
use circsep::skeleton::build_skeleton;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
    for case in 0..40 {
        let n = rng.gen_range(5..=64);
        let mut pts: Vec<Point2> = Vec::new();
        for i in 0..n {
            let t = std::f64::consts::TAU * i as f64 / n as f64 + rng.gen_range(0.0..0.5 / n as f64);
            let r = rng.gen_range(0.7..1.0);
            pts.push(Point2::new(r * t.cos(), r * t.sin()));
        }
        let Ok(hull) = circsep::hull::convex_hull_points(&pts) else { continue };
        let skt = build_skeleton(&hull);
        let map = build_planar_map(&skt);
        let poly = hull.to_polygon();
        let mut tested = 0;
        while tested < 300 {
            let p = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if hull.locate_point(p) != Location::Interior { continue; }
            tested += 1;
            let truth = distance_point_polygon_boundary(p, &poly);
            match map.locate(p) {
                Located::Cell(c) => {
                    let (ea, eb) = map.cells[c].edge_pair;
                    let da = distance_point_segment(p, poly.edge(ea));
                    let db = distance_point_segment(p, poly.edge(eb));
                    if da.min(db) > truth + 1e-9 * (1.0 + truth) {
                        eprintln!("case {case} n={} p=({}, {})", hull.len(), p.x, p.y);
                        eprintln!("located cell {c}: parent={} child={} pair=({ea},{eb}) da={da} db={db} truth={truth}", map.cells[c].parent, map.cells[c].child);
                        // which edge is truly nearest
                        let mut best = (f64::INFINITY, 0);
                        for i in 0..poly.len() {
                            let d = distance_point_segment(p, poly.edge(i));
                            if d < best.0 { best = (d, i); }
                        }
                        eprintln!("true nearest edge {} at {}", best.1, best.0);
                        eprintln!("root clearance {} dist-to-root {}", skt.vertices[skt.root].clearance, p.distance(skt.vertices[skt.root].center));
                        // print skeleton structure
                        for (i, v) in skt.vertices.iter().enumerate() {
                            eprintln!("  sk[{i}] c=({:.4},{:.4}) r={:.4} parent={:?} tang={:?}", v.center.x, v.center.y, v.clearance, v.parent, v.tangent_edges);
                        }
                        std::process::exit(1);
                    }
                }
                Located::Outside => { eprintln!("interior located outside"); std::process::exit(1); }
                _ => {}
            }
        }
    }
    eprintln!("all ok");
}
