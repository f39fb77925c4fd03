//! m-band membership on finite time grids.
//!
//! A curve `f` lies in the m-band of generators `f_1..f_j` when, for every
//! checked tuple of grid points `(t_1..t_m)`, the concatenated vector
//! `(f(t_1),..,f(t_m))` is a convex combination of the generators'
//! concatenations. Only unordered tuples of distinct indices of size
//! `min(m, k)` are checked: repeating or permuting time points is an
//! invertible linear map on the concatenation, and membership of a larger
//! tuple projects down to its sub-tuples.

pub(crate) mod time_share;
mod transform;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{hull_membership, problem_scale};

pub use time_share::{time_share_mass, time_share_measure, time_share_set, TimeShareResult};
pub use transform::CurveTransform;

/// Relative tolerance used when matching grid spacings against a lag.
pub const LAG_TOL: f64 = 1e-9;

/// An ordered finite set of `k` time points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    labels: Vec<String>,
    coords: Option<Vec<f64>>,
}

impl TimeGrid {
    pub fn new(labels: Vec<String>, coords: Option<Vec<f64>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::input("time grid needs at least one point"));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::input(format!("duplicate time label {dup:?}")));
        }
        if let Some(c) = &coords {
            if c.len() != labels.len() {
                return Err(Error::DimensionMismatch { expected: labels.len(), found: c.len() });
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("time coordinates".into()));
            }
            if c.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::input("time coordinates must be strictly increasing"));
            }
        }
        Ok(TimeGrid { labels, coords })
    }

    /// Grid `1, 2, .., k` with numeric coordinates.
    pub fn regular(k: usize) -> Result<Self> {
        let coords: Vec<f64> = (1..=k).map(|t| t as f64).collect();
        Self::from_coords(coords)
    }

    /// Numeric grid labelled by the formatted coordinates.
    pub fn from_coords(coords: Vec<f64>) -> Result<Self> {
        let labels = coords.iter().map(|t| format!("{t}")).collect();
        Self::new(labels, Some(coords))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coords(&self) -> Option<&[f64]> {
        self.coords.as_deref()
    }
}

/// A function on the grid with values in `R^d`, stored row-major (`k × d`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub id: String,
    d: usize,
    values: Vec<f64>,
}

impl Curve {
    pub fn new(id: impl Into<String>, d: usize, values: Vec<f64>) -> Result<Self> {
        if d == 0 || values.is_empty() || !values.len().is_multiple_of(d) {
            return Err(Error::input(format!(
                "{} values do not form rows of dimension {d}",
                values.len()
            )));
        }
        let id = id.into();
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("curve {id:?}")));
        }
        Ok(Curve { id, d, values })
    }

    /// A scalar-valued curve (`d = 1`).
    pub fn scalar(id: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        Self::new(id, 1, values)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.values[t * self.d..(t + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.d)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

/// `n` curves sharing one grid and one coordinate dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSample {
    grid: TimeGrid,
    d: usize,
    curves: Vec<Curve>,
}

impl FunctionalSample {
    pub fn new(grid: TimeGrid, curves: Vec<Curve>) -> Result<Self> {
        let first = curves
            .first()
            .ok_or_else(|| Error::input("sample needs at least one curve"))?;
        let d = first.dim();
        for c in &curves {
            check_curve(&grid, d, c)?;
        }
        Ok(FunctionalSample { grid, d, curves })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Checks that `f` lives on this sample's grid with the same `d`.
    pub fn check_candidate(&self, f: &Curve) -> Result<()> {
        check_curve(&self.grid, self.d, f)
    }
}

fn check_curve(grid: &TimeGrid, d: usize, c: &Curve) -> Result<()> {
    if c.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: c.dim() });
    }
    if c.len() != grid.len() {
        return Err(Error::input(format!(
            "curve {:?} has {} rows but the grid has {} points",
            c.id,
            c.len(),
            grid.len()
        )));
    }
    Ok(())
}

/// Which tuples of grid points are checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    AllCombinations,
    /// Pairs of time points exactly `h` apart (requires `m = 2`).
    LagSet(f64),
    /// Tuples of zero-based grid indices, checked verbatim.
    ExplicitTuples(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandSpec {
    pub m: usize,
    pub reduction: Reduction,
}

impl BandSpec {
    pub fn new(m: usize, reduction: Reduction) -> Self {
        BandSpec { m, reduction }
    }

    pub fn all(m: usize) -> Self {
        BandSpec { m, reduction: Reduction::AllCombinations }
    }

    pub fn is_reduced(&self) -> bool {
        !matches!(self.reduction, Reduction::AllCombinations)
    }
}

/// The `dm`-vector `(f(t_1), .., f(t_m))` for the given tuple of indices.
pub fn concatenate(f: &Curve, tuple: &[usize]) -> Result<Vec<f64>> {
    if let Some(&bad) = tuple.iter().find(|&&t| t >= f.len()) {
        return Err(Error::input(format!("grid index {bad} out of range for {} points", f.len())));
    }
    Ok(concat_unchecked(f, tuple))
}

pub(crate) fn concat_unchecked(f: &Curve, tuple: &[usize]) -> Vec<f64> {
    let mut out = Vec::with_capacity(tuple.len() * f.dim());
    for &t in tuple {
        out.extend_from_slice(f.row(t));
    }
    out
}

/// Lexicographic combinations of `size` distinct indices from `0..k`.
pub fn combinations(k: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 || size > k {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        let mut i = size;
        while i > 0 && idx[i - 1] == k - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for p in i..size {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// The tuples that a membership test must check, in lexicographic order.
pub fn enumerate_check_tuples(grid: &TimeGrid, spec: &BandSpec) -> Result<Vec<Vec<usize>>> {
    if spec.m == 0 {
        return Err(Error::config("m must be at least 1"));
    }
    let k = grid.len();
    match &spec.reduction {
        Reduction::AllCombinations => Ok(combinations(k, spec.m.min(k))),
        Reduction::LagSet(h) => {
            if spec.m != 2 {
                return Err(Error::config(format!("lag reduction requires m = 2, got m = {}", spec.m)));
            }
            if !(*h > 0.0 && h.is_finite()) {
                return Err(Error::config(format!("lag must be positive, got {h}")));
            }
            let coords = grid
                .coords()
                .ok_or_else(|| Error::config("lag reduction requires numeric time coordinates"))?;
            let mut pairs = Vec::new();
            for a in 0..k {
                for b in a + 1..k {
                    if ((coords[b] - coords[a]).abs() - h).abs() <= LAG_TOL * h.abs().max(1.0) {
                        pairs.push(vec![a, b]);
                    }
                }
            }
            if pairs.is_empty() {
                return Err(Error::config(format!("no pair of time points is {h} apart")));
            }
            Ok(pairs)
        }
        Reduction::ExplicitTuples(tuples) => {
            if tuples.is_empty() {
                return Err(Error::config("explicit tuple list is empty"));
            }
            for t in tuples {
                if t.len() != spec.m {
                    return Err(Error::config(format!("tuple {t:?} does not have m = {} entries", spec.m)));
                }
                if let Some(bad) = t.iter().find(|&&i| i >= k) {
                    return Err(Error::config(format!("tuple index {bad} out of range for {k} grid points")));
                }
            }
            Ok(tuples.clone())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BandVerdict {
    Inside,
    /// Carries the first violating tuple in enumeration order.
    Outside(Vec<usize>),
}

impl BandVerdict {
    pub fn is_inside(&self) -> bool {
        matches!(self, BandVerdict::Inside)
    }
}

pub(crate) fn check_on_grid(grid: &TimeGrid, f: &Curve, generators: &[&Curve]) -> Result<()> {
    check_curve(grid, f.dim(), f)?;
    check_generators(f, generators)
}

fn check_generators(f: &Curve, generators: &[&Curve]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::input("at least one generator curve is required"));
    }
    for g in generators {
        if g.dim() != f.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
        }
        if g.len() != f.len() {
            return Err(Error::input(format!(
                "generator {:?} has {} grid points, candidate {:?} has {}",
                g.id,
                g.len(),
                f.id,
                f.len()
            )));
        }
    }
    Ok(())
}

/// Hull test of one tuple's concatenation against the generators'.
pub(crate) fn tuple_inside(f: &Curve, generators: &[&Curve], tuple: &[usize], tol: f64) -> bool {
    let p = concat_unchecked(f, tuple);
    let dim = p.len();
    let mut gens = Vec::with_capacity(dim * generators.len());
    for g in generators {
        for &t in tuple {
            gens.extend_from_slice(g.row(t));
        }
    }
    hull_membership(&p, &gens, dim, tol).is_inside()
}

/// As [`tuple_inside`], but one-dimensional concatenations may take the
/// envelope comparison instead of the linear program.
pub(crate) fn tuple_inside_fast(f: &Curve, generators: &[&Curve], tuple: &[usize], tol: f64, scalar_fast: bool) -> bool {
    if scalar_fast && f.dim() == 1 && tuple.len() == 1 {
        envelope_point(f, generators, tuple[0], tol)
    } else {
        tuple_inside(f, generators, tuple, tol)
    }
}

/// m-band membership of `f` with respect to `generators`, all on `grid`.
pub fn m_band_contains(
    grid: &TimeGrid,
    f: &Curve,
    generators: &[&Curve],
    spec: &BandSpec,
    tol: f64,
) -> Result<BandVerdict> {
    check_on_grid(grid, f, generators)?;
    let tuples = enumerate_check_tuples(grid, spec)?;
    Ok(contains_with_tuples(f, generators, &tuples, tol))
}

pub(crate) fn contains_with_tuples(f: &Curve, generators: &[&Curve], tuples: &[Vec<usize>], tol: f64) -> BandVerdict {
    match tuples.iter().find(|t| !tuple_inside(f, generators, t, tol)) {
        Some(t) => BandVerdict::Outside(t.clone()),
        None => BandVerdict::Inside,
    }
}

/// Pointwise `min ≤ f ≤ max` check for scalar curves, with tolerance
/// `tol · (1 + max |value|)` per grid point.
pub fn band1_envelope_contains(f: &Curve, generators: &[&Curve], tol: f64) -> Result<bool> {
    if f.dim() != 1 {
        return Err(Error::config(format!("envelope test needs d = 1, got d = {}", f.dim())));
    }
    check_generators(f, generators)?;
    Ok(envelope_unchecked(f, generators, tol))
}

pub(crate) fn envelope_unchecked(f: &Curve, generators: &[&Curve], tol: f64) -> bool {
    (0..f.len()).all(|t| envelope_point(f, generators, t, tol))
}

pub(crate) fn envelope_point(f: &Curve, generators: &[&Curve], t: usize, tol: f64) -> bool {
    let x = f.values[t];
    let (lo, hi) = generators
        .iter()
        .map(|g| g.values[t])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let slack = tol * problem_scale(&[x, lo, hi], &[]);
    x >= lo - slack && x <= hi + slack
}
