//! Random-function models used for population depths and simulation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::Serialize;

use crate::band::{Curve, FunctionalSample, TimeGrid};
use crate::error::{Error, Result};

/// Law of the scalar shift `X` in `ξ(t) = a(t) + X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ScalarLaw {
    Gaussian { sigma: f64 },
    /// Uniform on `[-half_width, half_width]`.
    Uniform { half_width: f64 },
    /// Quantiles at equally spaced probabilities `0, 1/(q−1), .., 1`,
    /// sampled by linear interpolation.
    Quantiles(Vec<f64>),
}

impl ScalarLaw {
    fn validate(&self) -> Result<()> {
        match self {
            ScalarLaw::Gaussian { sigma } if !(*sigma >= 0.0 && sigma.is_finite()) => {
                Err(Error::config(format!("sigma must be non-negative, got {sigma}")))
            }
            ScalarLaw::Uniform { half_width } if !(*half_width >= 0.0 && half_width.is_finite()) => {
                Err(Error::config(format!("half width must be non-negative, got {half_width}")))
            }
            ScalarLaw::Quantiles(q) => {
                if q.len() < 2 || q.iter().any(|x| !x.is_finite()) || q.windows(2).any(|w| w[0] > w[1]) {
                    Err(Error::config("quantile table needs at least two finite nondecreasing values"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            ScalarLaw::Gaussian { sigma } => {
                let z: f64 = StandardNormal.sample(rng);
                sigma * z
            }
            ScalarLaw::Uniform { half_width } => half_width * (2.0 * rng.random::<f64>() - 1.0),
            ScalarLaw::Quantiles(q) => {
                let pos = rng.random::<f64>() * (q.len() - 1) as f64;
                let i = (pos.floor() as usize).min(q.len() - 2);
                let frac = pos - i as f64;
                q[i] + frac * (q[i + 1] - q[i])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ModelKind {
    /// `ξ(t) = a(t) + X` with one scalar `X` added to every coordinate.
    TranslationScalar { a: Curve, law: ScalarLaw },
    /// `ξ(t) = a(t) + X` with `X ~ N(0, σ² I_d)`.
    TranslationVector { a: Curve, sigma: f64 },
    /// Independent `N(0, σ²)` values at every grid point and coordinate.
    IidGaussianPaths { k: usize, d: usize, sigma: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationModel {
    pub kind: ModelKind,
    pub seed: u64,
}

impl SimulationModel {
    pub fn new(kind: ModelKind, seed: u64) -> Result<Self> {
        let model = SimulationModel { kind, seed };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        match &self.kind {
            ModelKind::TranslationScalar { law, .. } => law.validate(),
            ModelKind::TranslationVector { sigma, .. } | ModelKind::IidGaussianPaths { sigma, .. }
                if !(*sigma >= 0.0 && sigma.is_finite()) =>
            {
                Err(Error::config(format!("sigma must be non-negative, got {sigma}")))
            }
            ModelKind::IidGaussianPaths { k, d, .. } if *k == 0 || *d == 0 => {
                Err(Error::config("Gaussian paths need k ≥ 1 and d ≥ 1"))
            }
            _ => Ok(()),
        }
    }

    pub fn grid_len(&self) -> usize {
        match &self.kind {
            ModelKind::TranslationScalar { a, .. } | ModelKind::TranslationVector { a, .. } => a.len(),
            ModelKind::IidGaussianPaths { k, .. } => *k,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            ModelKind::TranslationScalar { a, .. } | ModelKind::TranslationVector { a, .. } => a.dim(),
            ModelKind::IidGaussianPaths { d, .. } => *d,
        }
    }

    /// The centre of symmetry: `a` for translation models, zero otherwise.
    pub fn center(&self) -> Curve {
        match &self.kind {
            ModelKind::TranslationScalar { a, .. } | ModelKind::TranslationVector { a, .. } => {
                a.clone().with_id("center")
            }
            ModelKind::IidGaussianPaths { k, d, .. } => {
                Curve::new("center", *d, vec![0.0; k * d]).expect("non-empty zero curve")
            }
        }
    }

    /// Draws one curve from the model.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R, id: String) -> Curve {
        let values: Vec<f64> = match &self.kind {
            ModelKind::TranslationScalar { a, law } => {
                let x = law.sample(rng);
                a.values().iter().map(|v| v + x).collect()
            }
            ModelKind::TranslationVector { a, sigma } => {
                let shift: Vec<f64> = (0..a.dim())
                    .map(|_| {
                        let z: f64 = StandardNormal.sample(rng);
                        sigma * z
                    })
                    .collect();
                a.rows().flat_map(|row| row.iter().zip(&shift).map(|(v, s)| v + s)).collect()
            }
            ModelKind::IidGaussianPaths { k, d, sigma } => {
                let normal = Normal::new(0.0, *sigma).expect("validated sigma");
                (0..k * d).map(|_| normal.sample(rng)).collect()
            }
        };
        Curve::new(id, self.dim(), values).expect("model values are finite")
    }
}

/// Curve id for position `i` of `n`, zero-padded so lexicographic order
/// matches sample order.
pub fn curve_id(i: usize, n: usize) -> String {
    let width = n.to_string().len();
    format!("c{:0width$}", i + 1)
}

/// Draws `n` curves from `model` on `grid`, deterministically from the
/// model's seed.
pub fn simulate(model: &SimulationModel, n: usize, grid: &TimeGrid) -> Result<FunctionalSample> {
    model.validate()?;
    if n == 0 {
        return Err(Error::config("n must be at least 1"));
    }
    if grid.len() != model.grid_len() {
        return Err(Error::DimensionMismatch { expected: model.grid_len(), found: grid.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let curves = (0..n).map(|i| model.draw(&mut rng, curve_id(i, n))).collect();
    FunctionalSample::new(grid.clone(), curves)
}
