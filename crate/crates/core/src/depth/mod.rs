//! Empirical m-band and time-share depths.
//!
//! Both depths are U-statistics: an average over `j`-subsets of the sample
//! of a kernel that is either the band indicator or the time-share mass of
//! the candidate. Kernels are accumulated as exact integers (the time-share
//! mass is a fraction over `k^m`), so results do not depend on how the work
//! is scheduled across threads.

mod monte_carlo;
mod subsets;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::band::{enumerate_check_tuples, tuple_inside_fast, BandSpec, Curve, FunctionalSample, Reduction, TimeGrid};
use crate::band::time_share::TimeSharePlan;
use crate::error::{Error, Result};
use crate::hull::DEFAULT_TOL;

pub use monte_carlo::{monte_carlo_population_depth, McEstimate};
pub use subsets::{subset_enumerator, subset_total, Enumeration, SubsetList, DEFAULT_EXHAUSTIVE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Band,
    TimeShare,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthConfig {
    pub m: usize,
    pub j: usize,
    pub mode: Mode,
    pub enumeration: Enumeration,
    pub reduction: Reduction,
    pub tol: f64,
    /// Drop subsets containing the candidate when ranking sample curves.
    pub exclude_self: bool,
    pub exhaustive_cap: u64,
}

impl DepthConfig {
    pub fn new(m: usize, j: usize, mode: Mode) -> Self {
        DepthConfig {
            m,
            j,
            mode,
            enumeration: Enumeration::Exhaustive,
            reduction: Reduction::AllCombinations,
            tol: DEFAULT_TOL,
            exclude_self: false,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
        }
    }

    pub fn band(m: usize, j: usize) -> Self {
        Self::new(m, j, Mode::Band)
    }

    pub fn time_share(m: usize, j: usize) -> Self {
        Self::new(m, j, Mode::TimeShare)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn sampled(mut self, count: u64, seed: u64) -> Self {
        self.enumeration = Enumeration::Sampled { count, seed };
        self
    }

    pub fn with_reduction(mut self, reduction: Reduction) -> Self {
        self.reduction = reduction;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn excluding_self(mut self, exclude: bool) -> Self {
        self.exclude_self = exclude;
        self
    }

    pub fn band_spec(&self) -> BandSpec {
        BandSpec::new(self.m, self.reduction.clone())
    }

    fn validate(&self, d: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::config("m must be at least 1"));
        }
        if self.j == 0 {
            return Err(Error::config("j must be at least 1"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.j < d * self.m + 1 {
            warn!(
                "j = {} is below d·m + 1 = {}; depths vanish for absolutely continuous laws",
                self.j,
                d * self.m + 1
            );
        }
        Ok(())
    }
}

/// Integer accumulation of a depth: `hits / (per_subset · subsets)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DepthTally {
    pub hits: u128,
    /// Kernel denominator of one subset: 1 for bands, the time-share
    /// denominator otherwise.
    pub per_subset: u128,
    pub subsets: u64,
}

impl DepthTally {
    pub fn depth(&self) -> f64 {
        let total = match self.per_subset.checked_mul(u128::from(self.subsets)) {
            Some(t) => t as f64,
            None => self.per_subset as f64 * self.subsets as f64,
        };
        if total == 0.0 {
            return 0.0;
        }
        (self.hits as f64 / total).clamp(0.0, 1.0)
    }
}

/// The per-subset kernel for one grid and configuration.
#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    mode: Mode,
    tuples: Vec<Vec<usize>>,
    plan: Option<TimeSharePlan>,
    tol: f64,
}

impl Kernel {
    pub(crate) fn new(grid: &TimeGrid, cfg: &DepthConfig) -> Result<Self> {
        let spec = cfg.band_spec();
        match cfg.mode {
            Mode::Band => Ok(Kernel {
                mode: Mode::Band,
                tuples: enumerate_check_tuples(grid, &spec)?,
                plan: None,
                tol: cfg.tol,
            }),
            Mode::TimeShare => {
                let plan = TimeSharePlan::new(grid, &spec, true)?;
                if u64::try_from(plan.denominator()).is_err() {
                    return Err(Error::config("time-share denominator k^m exceeds 2^64"));
                }
                Ok(Kernel { mode: Mode::TimeShare, tuples: Vec::new(), plan: Some(plan), tol: cfg.tol })
            }
        }
    }

    pub(crate) fn per_subset(&self) -> u128 {
        match &self.plan {
            Some(p) => p.denominator(),
            None => 1,
        }
    }

    pub(crate) fn eval(&self, f: &Curve, generators: &[&Curve]) -> u128 {
        match self.mode {
            Mode::Band => {
                u128::from(self.tuples.iter().all(|t| tuple_inside_fast(f, generators, t, self.tol, true)))
            }
            Mode::TimeShare => self
                .plan
                .as_ref()
                .expect("time-share kernel has a plan")
                .numerator(f, generators, self.tol),
        }
    }
}

/// Evaluates the kernel over `subsets` for candidate `f`.
///
/// `skip` removes one sample index (subsets are then over the remaining
/// `n − 1` curves, re-indexed); `member` marks the candidate's own index so
/// subsets containing it count as full hits without solving.
fn tally(
    f: &Curve,
    curves: &[Curve],
    subsets: &SubsetList,
    kernel: &Kernel,
    skip: Option<usize>,
    member: Option<usize>,
) -> DepthTally {
    let per_subset = kernel.per_subset();
    let hits: u128 = (0..subsets.len())
        .into_par_iter()
        .with_min_len(64)
        .map(|s| {
            let ids = subsets.get(s);
            let mut gens: Vec<&Curve> = Vec::with_capacity(ids.len());
            for &raw in ids {
                let mut i = raw as usize;
                if let Some(skip) = skip {
                    if i >= skip {
                        i += 1;
                    }
                }
                if member == Some(i) {
                    return per_subset;
                }
                gens.push(&curves[i]);
            }
            kernel.eval(f, &gens)
        })
        .sum();
    DepthTally { hits, per_subset, subsets: subsets.len() as u64 }
}

/// Depth tally of an arbitrary candidate against the whole sample.
pub fn depth_tally(f: &Curve, sample: &FunctionalSample, cfg: &DepthConfig) -> Result<DepthTally> {
    sample.check_candidate(f)?;
    cfg.validate(sample.dim())?;
    let subsets = subset_enumerator(sample.len(), cfg.j, cfg.enumeration, cfg.exhaustive_cap)?;
    let kernel = Kernel::new(sample.grid(), cfg)?;
    Ok(tally(f, sample.curves(), &subsets, &kernel, None, None))
}

/// Proportion of `j`-subsets of the sample whose m-band contains `f`.
pub fn empirical_band_depth(f: &Curve, sample: &FunctionalSample, cfg: &DepthConfig) -> Result<f64> {
    let cfg = cfg.clone().with_mode(Mode::Band);
    Ok(depth_tally(f, sample, &cfg)?.depth())
}

/// Average time-share mass of `f` over `j`-subsets of the sample.
pub fn empirical_time_share_depth(f: &Curve, sample: &FunctionalSample, cfg: &DepthConfig) -> Result<f64> {
    let cfg = cfg.clone().with_mode(Mode::TimeShare);
    Ok(depth_tally(f, sample, &cfg)?.depth())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthEntry {
    pub id: String,
    pub depth: f64,
    /// 1 is deepest.
    pub rank: usize,
    #[serde(skip)]
    pub hits: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthReport {
    pub config: DepthConfig,
    /// Entries in sample order.
    pub entries: Vec<DepthEntry>,
    /// Subsets evaluated per curve.
    pub subset_count: u64,
}

impl DepthReport {
    pub fn entry(&self, id: &str) -> Option<&DepthEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Ids ordered from deepest to least deep.
    pub fn ranking(&self) -> Vec<&str> {
        let mut v: Vec<&DepthEntry> = self.entries.iter().collect();
        v.sort_by_key(|e| e.rank);
        v.into_iter().map(|e| e.id.as_str()).collect()
    }
}

/// Depth of every sample curve with respect to the sample itself.
pub fn depth_all(sample: &FunctionalSample, cfg: &DepthConfig) -> Result<DepthReport> {
    cfg.validate(sample.dim())?;
    let n = sample.len();
    let kernel = Kernel::new(sample.grid(), cfg)?;
    let pool = if cfg.exclude_self { n.saturating_sub(1) } else { n };
    let subsets = subset_enumerator(pool, cfg.j, cfg.enumeration, cfg.exhaustive_cap)?;
    let curves = sample.curves();

    let tallies: Vec<DepthTally> = (0..n)
        .into_par_iter()
        .map(|i| {
            if cfg.exclude_self {
                tally(&curves[i], curves, &subsets, &kernel, Some(i), None)
            } else {
                tally(&curves[i], curves, &subsets, &kernel, None, Some(i))
            }
        })
        .collect();

    let mut entries: Vec<DepthEntry> = curves
        .iter()
        .zip(&tallies)
        .map(|(c, t)| DepthEntry { id: c.id.clone(), depth: t.depth(), rank: 0, hits: t.hits })
        .collect();
    assign_ranks(&mut entries);
    Ok(DepthReport { config: cfg.clone(), entries, subset_count: subsets.len() as u64 })
}

/// Rank 1 is the deepest curve; ties go to the smaller id.
fn assign_ranks(entries: &mut [DepthEntry]) {
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&a, &b| {
        entries[b]
            .depth
            .total_cmp(&entries[a].depth)
            .then_with(|| entries[a].id.cmp(&entries[b].id))
    });
    for (rank, &i) in order.iter().enumerate() {
        entries[i].rank = rank + 1;
    }
}

/// The `⌈fraction · n⌉` least deep curve ids, least deep first.
pub fn rank_and_flag(report: &DepthReport, fraction: f64) -> Vec<String> {
    let n = report.entries.len();
    let count = if fraction.is_nan() || fraction <= 0.0 {
        0
    } else {
        ((fraction * n as f64 - 1e-9).ceil().max(0.0) as usize).min(n)
    };
    let mut v: Vec<&DepthEntry> = report.entries.iter().collect();
    v.sort_by(|a, b| a.depth.total_cmp(&b.depth).then_with(|| a.id.cmp(&b.id)));
    v.into_iter().take(count).map(|e| e.id.clone()).collect()
}

/// Sum of band depths over `j = 2..=max_j`, the aggregate used for
/// classical band depth.
pub fn summed_band_depth(f: &Curve, sample: &FunctionalSample, cfg: &DepthConfig, max_j: usize) -> Result<f64> {
    (2..=max_j).try_fold(0.0, |acc, j| {
        let cfg = DepthConfig { j, ..cfg.clone() };
        Ok(acc + empirical_band_depth(f, sample, &cfg)?)
    })
}
