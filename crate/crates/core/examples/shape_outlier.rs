//! A curve that zig-zags between central values stays inside the pointwise
//! envelope, so the 1-band depth ranks it highly, but the 2-band sees the
//! shape and ranks it near the bottom.

use mband::depth::{depth_all, DepthConfig};
use mband::{Curve, FunctionalSample, TimeGrid};

fn main() -> mband::Result<()> {
    let k = 9;
    let mut curves = Vec::new();
    for i in 0..16 {
        let level = -1.5 + 0.2 * i as f64;
        let slope = 0.004 * (((i * 7) % 5) as f64 - 2.0);
        let values = (0..k).map(|t| level + slope * (t as f64 - 4.0)).collect();
        curves.push(Curve::scalar(format!("s{i:02}"), values)?);
    }
    let zigzag = (0..k).map(|t| if t % 2 == 0 { 0.05 } else { -0.05 }).collect();
    curves.push(Curve::scalar("zigzag", zigzag)?);
    let sample = FunctionalSample::new(TimeGrid::regular(k)?, curves)?;

    for m in [1, 2] {
        let report = depth_all(&sample, &DepthConfig::band(m, 4))?;
        let e = report.entry("zigzag").unwrap();
        println!("m = {m}: zigzag depth {:.4}, rank {} of {}", e.depth, e.rank, sample.len());
    }
    Ok(())
}
