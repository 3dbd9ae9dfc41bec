use circsep::geom::{orient, Orientation, Point2, Polygon};
use circsep::hull::{convex_hull_points, convex_hull_simple_polygon};
use rand::{Rng, SeedableRng};

fn gift_wrap(points: &[Point2]) -> Vec<Point2> {
    let start = *points
        .iter()
        .min_by(|p, q| (p.x, p.y).partial_cmp(&(q.x, q.y)).unwrap())
        .unwrap();
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut next = points[0];
        for &cand in points.iter() {
            if cand == cur {
                continue;
            }
            if next == cur {
                next = cand;
                continue;
            }
            match orient(cur, next, cand) {
                Orientation::Clockwise => next = cand,
                Orientation::Collinear => {
                    if cur.distance(cand) > cur.distance(next) {
                        next = cand;
                    }
                }
                Orientation::CounterClockwise => {}
            }
        }
        if next == start {
            break;
        }
        hull.push(next);
        cur = next;
        assert!(hull.len() <= points.len(), "gift wrap runaway");
    }
    hull
}

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    for case in 0..1000 {
        let n = rng.gen_range(4..=64);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        if angles.len() < 4 {
            continue;
        }
        let verts: Vec<Point2> = angles
            .iter()
            .map(|&t| {
                let r = rng.gen_range(0.25..1.0);
                Point2::new(r * t.cos(), r * t.sin())
            })
            .collect();
        let poly = Polygon::new_relaxed(verts.clone()).unwrap();
        let hull = convex_hull_simple_polygon(&poly).unwrap();
        let wrapped = gift_wrap(&verts);
        let mc = convex_hull_points(&verts).unwrap();
        let ok = hull.len() == wrapped.len()
            && wrapped.iter().all(|v| hull.vertices().contains(v));
        if !ok {
            eprintln!("case {case}: n={} melkman={} wrap={} chain={}", verts.len(), hull.len(), wrapped.len(), mc.len());
            eprintln!("verts: {:?}", verts.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>());
            eprintln!("melkman: {:?}", hull.vertices().iter().map(|p| (p.x, p.y)).collect::<Vec<_>>());
            eprintln!("wrap:    {:?}", wrapped.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>());
            std::process::exit(1);
        }
    }
    eprintln!("all match");
}
