//! Closed-form reference values and exact counting helpers.

use serde::Serialize;

/// A reference probability together with a tag naming the formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticValue {
    pub value: f64,
    pub formula: &'static str,
}

impl AnalyticValue {
    pub fn wendel(dim: usize, j: usize) -> Self {
        AnalyticValue { value: wendel_probability(dim, j), formula: "wendel" }
    }

    pub fn two_sided(p_pos: f64, p_neg: f64, j: usize) -> Self {
        AnalyticValue { value: two_sided_band_depth(p_pos, p_neg, j), formula: "two-sided" }
    }

    pub fn td_center(d: usize, m: usize, j: usize) -> Self {
        AnalyticValue { value: td_center_value(d, m, j), formula: "td-center" }
    }

    pub fn td_center_on_grid(d: usize, m: usize, j: usize, k: usize) -> Self {
        AnalyticValue { value: td_center_value_on_grid(d, m, j, k), formula: "td-center-grid" }
    }
}

/// `C(n, k)` in 128-bit arithmetic; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        let num = u128::from(n - i);
        let den = u128::from(i + 1);
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        acc = a.checked_mul(num / d)?;
        debug_assert_eq!(num % d, 0);
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of surjections from an `m`-set onto an `a`-set.
///
/// Inclusion–exclusion `Σ_{i=0}^{a} (−1)^i C(a,i) (a−i)^m`; returns 0 for
/// `a > m` and `None` on overflow.
pub fn surjection_count(m: u32, a: u32) -> Option<u128> {
    if a > m {
        return Some(0);
    }
    if a == 0 {
        return Some(u128::from(m == 0));
    }
    let mut positive: u128 = 0;
    let mut negative: u128 = 0;
    for i in 0..=a {
        let term = binomial(u64::from(a), u64::from(i))?.checked_mul(u128::from(a - i).checked_pow(m)?)?;
        if i % 2 == 0 {
            positive = positive.checked_add(term)?;
        } else {
            negative = negative.checked_add(term)?;
        }
    }
    positive.checked_sub(negative)
}

/// Probability that the origin lies in the convex hull of `j` i.i.d.
/// absolutely continuous, angularly symmetric points in `R^dim`:
/// `1 − 2^{1−j} Σ_{i<dim} C(j−1, i)`, clamped at 0.
pub fn wendel_probability(dim: usize, j: usize) -> f64 {
    if j == 0 || j <= dim {
        return 0.0;
    }
    let trials = (j - 1) as u64;
    if trials < 127 {
        let mut sum: u128 = 0;
        for i in 0..dim as u64 {
            sum += binomial(trials, i).expect("C(n, i) with n < 127 fits in u128");
        }
        let total: u128 = 1 << trials;
        // The tail mass is exact; only the final division rounds.
        (total - sum) as f64 / total as f64
    } else {
        // Binomial(j−1, 1/2) lower tail via log-pmf.
        let n = trials as f64;
        let mut log_pmf = -n * std::f64::consts::LN_2;
        let mut lower = 0.0;
        for i in 0..dim {
            if i > 0 {
                log_pmf += ((n - i as f64 + 1.0) / i as f64).ln();
            }
            lower += log_pmf.exp();
        }
        (1.0 - lower).clamp(0.0, 1.0)
    }
}

/// `1 − p_pos^j − p_neg^j`: band depth of `a` under `ξ = a + X` with
/// `P{X>0} = p_pos` and `P{X<0} = p_neg`.
pub fn two_sided_band_depth(p_pos: f64, p_neg: f64, j: usize) -> f64 {
    let j = j as i32;
    (1.0 - p_pos.powi(j) - p_neg.powi(j)).clamp(0.0, 1.0)
}

/// Time-share depth of the centre of an angularly symmetric absolutely
/// continuous law, for a continuum of time points.
pub fn td_center_value(d: usize, m: usize, j: usize) -> f64 {
    wendel_probability(d * m, j)
}

/// Time-share depth of the centre on a `k`-point grid under the normalized
/// counting measure.
///
/// Tuples with `a` distinct time points place the concatenation in a
/// `d·a`-dimensional space, so each contributes `wendel(d·a, j)`, weighted by
/// the share `C(k,a)·surj(m,a)/k^m` of such tuples in `T^m`. This tends to
/// [`td_center_value`] as `k → ∞`.
pub fn td_center_value_on_grid(d: usize, m: usize, j: usize, k: usize) -> f64 {
    let top = m.min(k);
    let total = (k as f64).powi(m as i32);
    let mut acc = 0.0;
    for a in 1..=top {
        let weight = binomial(k as u64, a as u64).expect("grid binomial overflow") as f64
            * surjection_count(m as u32, a as u32).expect("surjection overflow") as f64;
        acc += weight * wendel_probability(d * a, j);
    }
    acc / total
}
