use super::{Curve, FunctionalSample};
use crate::error::{Error, Result};

/// Transformations under which m-bands are equivariant.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveTransform {
    /// Adds `g` pointwise.
    Translate(Curve),
    /// Applies `A(t)` (row-major `d × d`) at each grid point.
    Linear(Vec<Vec<f64>>),
    /// Reparametrizes time: the new row `t` is the old row `h[t]`.
    Phase(Vec<usize>),
}

impl CurveTransform {
    pub fn validate(&self, k: usize, d: usize) -> Result<()> {
        match self {
            CurveTransform::Translate(g) => {
                if g.dim() != d || g.len() != k {
                    return Err(Error::input(format!(
                        "translation curve is {}×{}, expected {k}×{d}",
                        g.len(),
                        g.dim()
                    )));
                }
            }
            CurveTransform::Linear(mats) => {
                if mats.len() != k {
                    return Err(Error::DimensionMismatch { expected: k, found: mats.len() });
                }
                for (t, a) in mats.iter().enumerate() {
                    if a.len() != d * d {
                        return Err(Error::input(format!("matrix at grid point {t} is not {d}×{d}")));
                    }
                    if a.iter().any(|x| !x.is_finite()) {
                        return Err(Error::NonFinite(format!("matrix at grid point {t}")));
                    }
                    if is_singular(a, d) {
                        return Err(Error::input(format!("matrix at grid point {t} is singular")));
                    }
                }
            }
            CurveTransform::Phase(h) => {
                if h.len() != k {
                    return Err(Error::DimensionMismatch { expected: k, found: h.len() });
                }
                let mut seen = vec![false; k];
                for &i in h {
                    if i >= k || std::mem::replace(&mut seen[i], true) {
                        return Err(Error::input(format!("phase map {h:?} is not a bijection of 0..{k}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_curve(&self, f: &Curve) -> Result<Curve> {
        let (k, d) = (f.len(), f.dim());
        self.validate(k, d)?;
        let values = match self {
            CurveTransform::Translate(g) => f.values().iter().zip(g.values()).map(|(a, b)| a + b).collect(),
            CurveTransform::Linear(mats) => {
                let mut out = Vec::with_capacity(k * d);
                for (row, a) in f.rows().zip(mats) {
                    for r in 0..d {
                        out.push((0..d).map(|c| a[r * d + c] * row[c]).sum());
                    }
                }
                out
            }
            CurveTransform::Phase(h) => h.iter().flat_map(|&t| f.row(t).iter().copied()).collect(),
        };
        Curve::new(f.id.clone(), d, values)
    }

    pub fn apply_sample(&self, sample: &FunctionalSample) -> Result<FunctionalSample> {
        let curves = sample
            .curves()
            .iter()
            .map(|c| self.apply_curve(c))
            .collect::<Result<Vec<_>>>()?;
        FunctionalSample::new(sample.grid().clone(), curves)
    }
}

/// Gaussian elimination with partial pivoting; singular when a pivot falls
/// below `1e-12` times the largest entry.
fn is_singular(a: &[f64], d: usize) -> bool {
    let mut m = a.to_vec();
    let scale = m.iter().fold(0.0_f64, |s, x| s.max(x.abs()));
    if scale == 0.0 {
        return true;
    }
    for col in 0..d {
        let (piv, val) = (col..d)
            .map(|r| (r, m[r * d + col].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if val <= 1e-12 * scale {
            return true;
        }
        if piv != col {
            for c in 0..d {
                m.swap(piv * d + c, col * d + c);
            }
        }
        for r in col + 1..d {
            let factor = m[r * d + col] / m[col * d + col];
            for c in col..d {
                m[r * d + c] -= factor * m[col * d + c];
            }
        }
    }
    false
}
