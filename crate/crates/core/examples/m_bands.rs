//! Nested m-bands: a curve inside the pointwise envelope can still leave
//! the 2-band when its shape disagrees with the generators.

use mband::band::{m_band_contains, time_share_set};
use mband::hull::DEFAULT_TOL;
use mband::{BandSpec, BandVerdict, Curve, TimeGrid};

fn main() -> mband::Result<()> {
    let grid = TimeGrid::regular(4)?;
    let rising = Curve::scalar("rising", vec![0.0, 1.0, 2.0, 3.0])?;
    let steep = Curve::scalar("steep", vec![0.0, 2.0, 4.0, 6.0])?;
    let gens = [&rising, &steep];

    let candidates = [
        Curve::scalar("between", vec![0.0, 1.5, 3.0, 4.5])?,
        Curve::scalar("zigzag", vec![0.0, 1.9, 2.1, 5.9])?,
    ];
    for f in &candidates {
        for m in 1..=3 {
            let verdict = m_band_contains(&grid, f, &gens, &BandSpec::all(m), DEFAULT_TOL)?;
            let shown = match verdict {
                BandVerdict::Inside => "inside".to_string(),
                BandVerdict::Outside(t) => format!("outside, witness {t:?}"),
            };
            println!("{:>8} m={m}: {shown}", f.id);
        }
        let ts = time_share_set(&grid, f, &gens, &BandSpec::all(2), DEFAULT_TOL)?;
        println!("{:>8} time share (m=2): {}/{} = {:.4}", f.id, ts.numerator, ts.denominator, ts.measure);
    }
    Ok(())
}
