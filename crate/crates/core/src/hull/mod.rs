//! Point-in-convex-hull decisions with certificates.
//!
//! The floating-point route solves a phase-1 linear feasibility problem on
//! data rescaled by `1 + max |coordinate|`; the [`exact`] module provides a
//! rational-arithmetic oracle used to check it.

pub mod exact;
mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exact::exact_membership_oracle;

/// Default relative tolerance for hull membership.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Inside,
    Outside,
}

/// A point in `R^N` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::input("point must have at least one coordinate"));
        }
        if let Some(x) = coords.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("point coordinate {x}")));
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// `j` points of common dimension, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    dim: usize,
    coords: Vec<f64>,
}

impl GeneratorSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::input("generator set is empty"))?;
        let dim = first.dim();
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            coords.extend_from_slice(p.coords());
        }
        Ok(GeneratorSet { dim, coords })
    }

    /// Builds a set from a row-major buffer of `coords.len() / dim` points.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || coords.is_empty() || !coords.len().is_multiple_of(dim) {
            return Err(Error::input(format!(
                "cannot split {} values into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(x) = coords.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("generator coordinate {x}")));
        }
        Ok(GeneratorSet { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }
}

/// Outcome of a membership decision.
///
/// `weights` are the convex coefficients found by the solver and are present
/// only for [`Verdict::Inside`]. `residual` is the achieved feasibility gap
/// relative to the problem scale.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    pub weights: Option<Vec<f64>>,
    pub residual: f64,
}

impl MembershipCertificate {
    pub fn is_inside(&self) -> bool {
        self.verdict == Verdict::Inside
    }

    /// Checks the certificate against the problem it claims to solve.
    /// Tolerances are relative to `1 + max |coordinate|`.
    pub fn validate(&self, p: &Point, g: &GeneratorSet, tol: f64) -> bool {
        let Some(w) = &self.weights else {
            return self.verdict == Verdict::Outside;
        };
        if self.verdict != Verdict::Inside || w.len() != g.len() {
            return false;
        }
        let scale = problem_scale(p.coords(), g.as_flat());
        if w.iter().any(|&x| x < -tol) || (w.iter().sum::<f64>() - 1.0).abs() > tol {
            return false;
        }
        (0..p.dim()).all(|c| {
            let combo: f64 = g.points().zip(w).map(|(pt, &l)| l * pt[c]).sum();
            (combo - p.coords()[c]).abs() <= tol * scale
        })
    }
}

pub(crate) fn problem_scale(p: &[f64], g: &[f64]) -> f64 {
    1.0 + p.iter().chain(g).fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// Decides whether `p` lies in the closed convex hull of `g`.
///
/// Inside iff the minimal artificial mass of the phase-1 problem, computed
/// on data divided by `1 + max |coordinate|`, is at most `tol`.
pub fn point_in_convex_hull(p: &Point, g: &GeneratorSet, tol: f64) -> Result<MembershipCertificate> {
    if p.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: p.dim() });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::input(format!("tolerance must be positive, got {tol}")));
    }
    Ok(hull_membership(p.coords(), g.as_flat(), g.dim(), tol))
}

/// Unchecked core used on hot paths; inputs must be finite and consistent.
pub(crate) fn hull_membership(p: &[f64], gens: &[f64], dim: usize, tol: f64) -> MembershipCertificate {
    let count = gens.len() / dim;
    let scale = problem_scale(p, gens);
    let inv = 1.0 / scale;
    let target: Vec<f64> = p.iter().map(|x| x * inv).collect();
    let scaled: Vec<f64> = gens.iter().map(|x| x * inv).collect();
    let out = simplex::phase_one(&target, &scaled, dim, count);
    if out.objective <= tol {
        MembershipCertificate { verdict: Verdict::Inside, weights: Some(out.weights), residual: out.objective }
    } else {
        MembershipCertificate { verdict: Verdict::Outside, weights: None, residual: out.objective }
    }
}
