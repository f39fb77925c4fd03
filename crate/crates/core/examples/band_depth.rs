//! Band and time-share depths of a simulated sample, deepest first.

use mband::depth::{depth_all, DepthConfig};
use mband::model::{simulate, ModelKind, SimulationModel};
use mband::TimeGrid;

fn main() -> mband::Result<()> {
    let model = SimulationModel::new(ModelKind::IidGaussianPaths { k: 4, d: 1, sigma: 1.0 }, 7)?;
    let sample = simulate(&model, 15, &TimeGrid::regular(4)?)?;

    for cfg in [DepthConfig::band(1, 3), DepthConfig::band(2, 6), DepthConfig::time_share(2, 4)] {
        let report = depth_all(&sample, &cfg)?;
        println!("mode {:?}, m = {}, j = {} over {} subsets", cfg.mode, cfg.m, cfg.j, report.subset_count);
        for id in report.ranking().into_iter().take(5) {
            println!("  {id}: {:.4}", report.entry(id).unwrap().depth);
        }
    }
    Ok(())
}
