use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{DepthConfig, Kernel, Mode};
use crate::band::{Curve, TimeGrid};
use crate::error::{Error, Result};
use crate::model::SimulationModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub replications: u64,
}

/// Population depth of `f` under `model`, estimated from `replications`
/// independent `j`-tuples of model curves.
///
/// Band mode returns the hit fraction with its binomial standard error;
/// time-share mode returns the mean time-share mass with the sample
/// standard error. Replication `r` draws from ChaCha8 stream `r` of the
/// model seed, so the estimate is independent of thread scheduling. The
/// grid is `1..k`, which matters only for lag reductions.
pub fn monte_carlo_population_depth(
    f: &Curve,
    model: &SimulationModel,
    cfg: &DepthConfig,
    replications: u64,
) -> Result<McEstimate> {
    if replications == 0 {
        return Err(Error::config("at least one replication is required"));
    }
    if f.len() != model.grid_len() || f.dim() != model.dim() {
        return Err(Error::input(format!(
            "candidate is {}×{}, model curves are {}×{}",
            f.len(),
            f.dim(),
            model.grid_len(),
            model.dim()
        )));
    }
    cfg.validate(model.dim())?;
    let grid = TimeGrid::regular(model.grid_len())?;
    let kernel = Kernel::new(&grid, cfg)?;
    let j = cfg.j;

    let numerators: Vec<u128> = (0..replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
            rng.set_stream(r);
            let curves: Vec<Curve> = (0..j).map(|i| model.draw(&mut rng, format!("x{i}"))).collect();
            let refs: Vec<&Curve> = curves.iter().collect();
            kernel.eval(f, &refs)
        })
        .collect();

    let reps = replications as f64;
    let (estimate, standard_error) = match cfg.mode {
        Mode::Band => {
            let hits: u128 = numerators.iter().sum();
            let p = hits as f64 / reps;
            (p, (p * (1.0 - p) / reps).sqrt())
        }
        Mode::TimeShare => {
            let den = kernel.per_subset() as f64;
            let total: u128 = numerators.iter().sum();
            let mean = total as f64 / (den * reps);
            let ss: f64 = numerators
                .iter()
                .map(|&x| {
                    let v = x as f64 / den - mean;
                    v * v
                })
                .sum();
            let var = if replications > 1 { ss / (reps - 1.0) } else { 0.0 };
            (mean, (var / reps).sqrt())
        }
    };
    Ok(McEstimate { estimate, standard_error, replications })
}
