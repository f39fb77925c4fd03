//! Convex-hull membership with the floating solver and the exact oracle.

use mband::hull::exact::{exact_membership_oracle, rational};
use mband::{point_in_convex_hull, GeneratorSet, Point};

fn main() -> mband::Result<()> {
    let triangle = GeneratorSet::new(vec![
        Point::new(vec![0.0, 0.0])?,
        Point::new(vec![4.0, 0.0])?,
        Point::new(vec![0.0, 4.0])?,
    ])?;

    for p in [[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]] {
        let cert = point_in_convex_hull(&Point::new(p.to_vec())?, &triangle, 1e-9)?;
        println!("{p:?}: {:?}, weights {:?}", cert.verdict, cert.weights);
    }

    // The same question in exact arithmetic.
    let gens = vec![
        vec![rational(0, 1), rational(0, 1)],
        vec![rational(4, 1), rational(0, 1)],
        vec![rational(0, 1), rational(4, 1)],
    ];
    let edge = [rational(2, 1), rational(2, 1)];
    println!("exact oracle on the edge point: {:?}", exact_membership_oracle(&edge, &gens)?);
    Ok(())
}
