// quick probe binary
fn main() {
    use circsep::geom::*;
    let p = Polygon::new(vec![
        Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0),
    ]).unwrap();
    let q = Polygon::new(vec![
        Point2::new(1.0, 0.0), Point2::new(2.0, 0.0), Point2::new(2.0, 1.0), Point2::new(1.0, 1.0),
    ]).unwrap();
    eprintln!("direction 1...");
    let d1 = circsep::separability::smallest_circle_enclosing_excluding(&p, &q);
    eprintln!("d1 = {:?}", d1);
    eprintln!("direction 2...");
    let d2 = circsep::separability::smallest_circle_enclosing_excluding(&q, &p);
    eprintln!("d2 = {:?}", d2);
}
