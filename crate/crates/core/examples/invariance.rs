//! Depths are unchanged by translations, pointwise nonsingular linear maps
//! and permutations of the time axis applied to every curve at once.

use mband::band::CurveTransform;
use mband::depth::{depth_all, DepthConfig};
use mband::model::{simulate, ModelKind, SimulationModel};
use mband::{Curve, TimeGrid};

fn main() -> mband::Result<()> {
    let k = 5;
    let model = SimulationModel::new(ModelKind::IidGaussianPaths { k, d: 2, sigma: 1.0 }, 11)?;
    let sample = simulate(&model, 10, &TimeGrid::regular(k)?)?;
    let cfg = DepthConfig::band(2, 5);
    let base = depth_all(&sample, &cfg)?;

    let shift = Curve::new("shift", 2, (0..2 * k).map(|i| 100.0 + i as f64).collect())?;
    let transforms = [
        ("translate", CurveTransform::Translate(shift)),
        ("linear", CurveTransform::Linear(vec![vec![2.0, 1.0, -1.0, 3.0]; k])),
        ("phase", CurveTransform::Phase(vec![4, 2, 0, 1, 3])),
    ];
    for (name, tr) in transforms {
        let moved = depth_all(&tr.apply_sample(&sample)?, &cfg)?;
        let same = base.entries.iter().zip(&moved.entries).all(|(a, b)| a.hits == b.hits);
        println!("{name:>9}: hit counts identical = {same}");
    }
    Ok(())
}
