//! Round trip through the CSV layouts and the report writers.

use mband::depth::{depth_all, rank_and_flag, DepthConfig};
use mband::io::{load_sample, write_report_to, write_sample, Format, Schema};
use mband::model::{simulate, ModelKind, SimulationModel};
use mband::TimeGrid;

fn main() -> mband::Result<()> {
    let dir = std::env::temp_dir().join(format!("mband-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let model = SimulationModel::new(ModelKind::IidGaussianPaths { k: 4, d: 2, sigma: 1.0 }, 3)?;
    let sample = simulate(&model, 8, &TimeGrid::regular(4)?)?;
    let path = dir.join("paths.csv");
    write_sample(&sample, &path, Schema::Long)?;
    let loaded = load_sample(&path, Schema::Long)?;
    assert_eq!(loaded, sample);
    println!("reloaded {} curves of dimension {} on {} points", loaded.len(), loaded.dim(), loaded.grid().len());

    let report = depth_all(&loaded, &DepthConfig::time_share(1, 5))?;
    let flagged = rank_and_flag(&report, 0.25);
    let mut out = std::io::stdout().lock();
    write_report_to(&report, &mut out, Format::Csv, Some(&flagged))?;
    write_report_to(&report, &mut out, Format::JsonLines, Some(&flagged))?;

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
