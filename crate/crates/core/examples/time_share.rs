//! Time-share sets and their exact mass under the counting measure.

use mband::band::{time_share_set, Reduction};
use mband::hull::DEFAULT_TOL;
use mband::{BandSpec, Curve, TimeGrid};

fn main() -> mband::Result<()> {
    let grid = TimeGrid::regular(5)?;
    let lo = Curve::scalar("lo", vec![0.0, 0.0, 0.0, 0.0, 0.0])?;
    let mid = Curve::scalar("mid", vec![1.0, 2.0, 1.0, 2.0, 1.0])?;
    let hi = Curve::scalar("hi", vec![2.0, 2.0, 3.0, 3.0, 3.0])?;
    let f = Curve::scalar("f", vec![0.5, 1.6, 2.2, 1.5, 1.2])?;

    for m in 1..=3 {
        let ts = time_share_set(&grid, &f, &[&lo, &mid, &hi], &BandSpec::all(m), DEFAULT_TOL)?;
        println!("m = {m}: mass {}/{} = {:.4}, {} member subsets", ts.numerator, ts.denominator, ts.measure, ts.member_combinations.len());
    }

    // Only pairs one time unit apart.
    let lag = BandSpec::new(2, Reduction::LagSet(1.0));
    let ts = time_share_set(&grid, &f, &[&lo, &mid, &hi], &lag, DEFAULT_TOL)?;
    println!("lag 1 pairs passing: {:?} ({:.2} of the lag set)", ts.member_combinations, ts.measure);
    Ok(())
}
