use std::collections::HashSet;

use serde::Serialize;

use super::{check_on_grid, combinations, enumerate_check_tuples, tuple_inside_fast, BandSpec, Curve, TimeGrid};
use crate::analytic::surjection_count;
use crate::error::{Error, Result};

/// Tuples at which the candidate's concatenation lies in the generators'
/// hull, together with their mass.
///
/// With [`Reduction::AllCombinations`](super::Reduction::AllCombinations)
/// the members are distinct-index subsets of size at most `min(m, k)` and
/// the mass is taken under the product of normalized counting measures on
/// `T^m`. For reduced specs the members are the passing tuples of the
/// reduction and the mass is their share of the reduction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeShareResult {
    pub member_combinations: Vec<Vec<usize>>,
    pub numerator: u128,
    pub denominator: u128,
    pub measure: f64,
}

/// Mass of a downward-closed family of index subsets in `T^m`, as an exact
/// fraction `(Σ_A surj(m, |A|), k^m)`.
pub fn time_share_mass(members: &[Vec<usize>], k: usize, m: usize) -> Result<(u128, u128)> {
    let m32 = u32::try_from(m).map_err(|_| Error::config("m too large"))?;
    let denominator = u128::try_from(k)
        .ok()
        .and_then(|k| k.checked_pow(m32))
        .ok_or_else(|| Error::config(format!("k^m overflows for k = {k}, m = {m}")))?;
    let mut numerator: u128 = 0;
    for a in members {
        let s = surjection_count(m32, a.len() as u32)
            .ok_or_else(|| Error::config(format!("surjection count overflows for m = {m}")))?;
        numerator = numerator
            .checked_add(s)
            .ok_or_else(|| Error::config("time-share mass overflows"))?;
    }
    Ok((numerator, denominator))
}

/// [`time_share_mass`] as a real number in `[0, 1]`.
pub fn time_share_measure(members: &[Vec<usize>], k: usize, m: usize) -> f64 {
    match time_share_mass(members, k, m) {
        Ok((num, den)) => (num as f64 / den as f64).clamp(0.0, 1.0),
        Err(_) => {
            // Fall back to floating arithmetic when counts overflow u128.
            let total = (k as f64).powi(m as i32);
            let sum: f64 = members.iter().map(|a| surjection_float(m, a.len())).sum();
            (sum / total).clamp(0.0, 1.0)
        }
    }
}

fn surjection_float(m: usize, a: usize) -> f64 {
    let mut acc = 0.0;
    let mut binom = 1.0;
    for i in 0..=a {
        if i > 0 {
            binom *= (a - i + 1) as f64 / i as f64;
        }
        let term = binom * ((a - i) as f64).powi(m as i32);
        acc += if i % 2 == 0 { term } else { -term };
    }
    acc
}

/// Time-share set of `f` with respect to `generators`.
pub fn time_share_set(
    grid: &TimeGrid,
    f: &Curve,
    generators: &[&Curve],
    spec: &BandSpec,
    tol: f64,
) -> Result<TimeShareResult> {
    check_on_grid(grid, f, generators)?;
    let plan = TimeSharePlan::new(grid, spec, false)?;
    Ok(plan.evaluate(f, generators, tol))
}

/// Precomputed enumeration for repeated time-share evaluations on one grid.
#[derive(Debug, Clone)]
pub(crate) struct TimeSharePlan {
    kind: PlanKind,
    denominator: u128,
    /// Use the scalar envelope for one-dimensional concatenations.
    scalar_fast_path: bool,
}

#[derive(Debug, Clone)]
enum PlanKind {
    /// Combination levels from the largest size down, each with the
    /// surjection weight of that size.
    Closure { levels: Vec<(Vec<Vec<usize>>, u128)> },
    Reduced { tuples: Vec<Vec<usize>> },
}

impl TimeSharePlan {
    pub(crate) fn new(grid: &TimeGrid, spec: &BandSpec, scalar_fast_path: bool) -> Result<Self> {
        if spec.is_reduced() {
            let tuples = enumerate_check_tuples(grid, spec)?;
            let denominator = tuples.len() as u128;
            return Ok(TimeSharePlan { kind: PlanKind::Reduced { tuples }, denominator, scalar_fast_path });
        }
        if spec.m == 0 {
            return Err(Error::config("m must be at least 1"));
        }
        let k = grid.len();
        let top = spec.m.min(k);
        let (_, denominator) = time_share_mass(&[], k, spec.m)?;
        let mut levels = Vec::with_capacity(top);
        for size in (1..=top).rev() {
            let weight = surjection_count(spec.m as u32, size as u32)
                .ok_or_else(|| Error::config("surjection count overflows"))?;
            levels.push((combinations(k, size), weight));
        }
        Ok(TimeSharePlan { kind: PlanKind::Closure { levels }, denominator, scalar_fast_path })
    }

    pub(crate) fn denominator(&self) -> u128 {
        self.denominator
    }

    fn inside(&self, f: &Curve, generators: &[&Curve], tuple: &[usize], tol: f64) -> bool {
        tuple_inside_fast(f, generators, tuple, tol, self.scalar_fast_path)
    }

    /// Numerator of the time-share mass only.
    pub(crate) fn numerator(&self, f: &Curve, generators: &[&Curve], tol: f64) -> u128 {
        match &self.kind {
            PlanKind::Reduced { tuples } => {
                tuples.iter().filter(|t| self.inside(f, generators, t, tol)).count() as u128
            }
            PlanKind::Closure { levels } if levels.len() == 1 => {
                let (combos, weight) = &levels[0];
                combos.iter().filter(|t| self.inside(f, generators, t, tol)).count() as u128 * weight
            }
            PlanKind::Closure { .. } => self.closure(f, generators, tol).1,
        }
    }

    pub(crate) fn evaluate(&self, f: &Curve, generators: &[&Curve], tol: f64) -> TimeShareResult {
        let (mut members, numerator) = match &self.kind {
            PlanKind::Reduced { tuples } => {
                let members: Vec<Vec<usize>> =
                    tuples.iter().filter(|t| self.inside(f, generators, t, tol)).cloned().collect();
                let n = members.len() as u128;
                (members, n)
            }
            PlanKind::Closure { .. } => self.closure(f, generators, tol),
        };
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        TimeShareResult {
            member_combinations: members,
            numerator,
            denominator: self.denominator,
            measure: (numerator as f64 / self.denominator as f64).clamp(0.0, 1.0),
        }
    }

    /// Top-down evaluation: a passing combination certifies all of its
    /// nonempty subsets, which are then not re-tested.
    fn closure(&self, f: &Curve, generators: &[&Curve], tol: f64) -> (Vec<Vec<usize>>, u128) {
        let PlanKind::Closure { levels } = &self.kind else {
            unreachable!("closure on a reduced plan");
        };
        let mut members: HashSet<Vec<usize>> = HashSet::new();
        let mut numerator = 0u128;
        for (combos, weight) in levels {
            for combo in combos {
                if members.contains(combo) {
                    numerator += weight;
                    continue;
                }
                if self.inside(f, generators, combo, tol) {
                    numerator += weight;
                    insert_subsets(&mut members, combo);
                }
            }
        }
        (members.into_iter().collect(), numerator)
    }
}

/// Inserts every nonempty subset of `combo` (including itself).
fn insert_subsets(members: &mut HashSet<Vec<usize>>, combo: &[usize]) {
    if members.contains(combo) {
        return;
    }
    let s = combo.len();
    for mask in 1u64..(1u64 << s) {
        let sub: Vec<usize> = (0..s).filter(|&i| mask >> i & 1 == 1).map(|i| combo[i]).collect();
        members.insert(sub);
    }
}
