//! Population depth of the centre by Monte Carlo, next to the closed form.

use mband::analytic::{td_center_value, td_center_value_on_grid, wendel_probability};
use mband::depth::{monte_carlo_population_depth, DepthConfig};
use mband::model::{ModelKind, ScalarLaw, SimulationModel};
use mband::Curve;

fn main() -> mband::Result<()> {
    let a = Curve::scalar("a", vec![0.0, 0.5, 1.0, 0.5, 0.0])?;
    let model = SimulationModel::new(
        ModelKind::TranslationScalar { a: a.clone(), law: ScalarLaw::Gaussian { sigma: 1.0 } },
        1,
    )?;
    for j in 2..=6 {
        let est = monte_carlo_population_depth(&a, &model, &DepthConfig::band(1, j), 50_000)?;
        println!(
            "bd_1 j={j}: {:.4} ± {:.4}  (closed form {:.4})",
            est.estimate,
            est.standard_error,
            wendel_probability(1, j)
        );
    }

    let paths = SimulationModel::new(ModelKind::IidGaussianPaths { k: 5, d: 1, sigma: 1.0 }, 2)?;
    let est = monte_carlo_population_depth(&paths.center(), &paths, &DepthConfig::time_share(2, 4), 20_000)?;
    println!(
        "td_2 j=4 on 5 points: {:.4} ± {:.4}  (grid value {:.4}, continuous-time value {:.4})",
        est.estimate,
        est.standard_error,
        td_center_value_on_grid(1, 2, 4, 5),
        td_center_value(1, 2, 4)
    );
    Ok(())
}
