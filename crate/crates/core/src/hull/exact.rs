//! Exact rational convex-hull oracle.
//!
//! A two-phase simplex over `BigRational` with Bland's rule. It carries no
//! tolerance and always terminates, which is what a test oracle needs; it is
//! far too slow for depth computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Verdict;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exact conversion of a finite `f64` into a rational.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    BigRational::from_float(x).ok_or_else(|| Error::NonFinite(format!("{x}")))
}

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, solution: Vec<Rational> },
}

/// Minimize `cost · x` subject to `rows · x = rhs`, `x ≥ 0`.
pub fn minimize(cost: &[Rational], rows: &[Vec<Rational>], rhs: &[Rational]) -> LpOutcome {
    let n = cost.len();
    let m = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    debug_assert_eq!(rhs.len(), m);

    // Columns: structural 0..n, artificial n..n+m, rhs at n+m.
    let width = n + m + 1;
    let rhs_col = n + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let flip = b.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (c, v) in row.iter().enumerate() {
            t[c] = if flip { -v.clone() } else { v.clone() };
        }
        t[n + i] = Rational::one();
        t[rhs_col] = if flip { -b.clone() } else { b.clone() };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the artificial mass.
    let mut phase1 = vec![Rational::zero(); width];
    for t in &tab {
        for c in 0..n {
            phase1[c] -= &t[c];
        }
        phase1[rhs_col] -= &t[rhs_col];
    }
    run_bland(&mut tab, &mut phase1, &mut basis, n);
    let infeasibility = -phase1[rhs_col].clone();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if basis[r] >= n {
            if let Some(c) = (0..n).find(|&c| !tab[r][c].is_zero()) {
                pivot(&mut tab, &mut phase1, r, c);
                basis[r] = c;
            }
        }
    }

    // Phase 2 reduced costs.
    let mut reduced = vec![Rational::zero(); width];
    reduced[..n].clone_from_slice(cost);
    for (r, &b) in basis.iter().enumerate() {
        if b < n && !cost[b].is_zero() {
            let cb = cost[b].clone();
            for c in 0..width {
                let delta = &cb * &tab[r][c];
                reduced[c] -= delta;
            }
        }
    }
    if !run_bland(&mut tab, &mut reduced, &mut basis, n) {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![Rational::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            solution[b] = tab[r][rhs_col].clone();
        }
    }
    let value = solution
        .iter()
        .zip(cost)
        .fold(Rational::zero(), |acc, (x, c)| acc + x * c);
    LpOutcome::Optimal { value, solution }
}

/// Bland's rule over structural columns `0..n`. Returns false if unbounded.
fn run_bland(tab: &mut [Vec<Rational>], cost: &mut [Rational], basis: &mut [usize], n: usize) -> bool {
    let rhs_col = cost.len() - 1;
    loop {
        let Some(enter) = (0..n).find(|&c| cost[c].is_negative()) else {
            return true;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[rhs_col] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((prev, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*prev]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            return false;
        };
        pivot(tab, cost, lr, enter);
        basis[lr] = enter;
    }
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], pr: usize, pc: usize) {
    let inv = tab[pr][pc].recip();
    for v in tab[pr].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[pr].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r != pr && !row[pc].is_zero() {
            let factor = row[pc].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
    }
    if !cost[pc].is_zero() {
        let factor = cost[pc].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
    }
}

fn check_dims(point: &[Rational], generators: &[Vec<Rational>]) -> Result<usize> {
    let dim = point.len();
    if dim == 0 {
        return Err(Error::input("point must have at least one coordinate"));
    }
    if generators.is_empty() {
        return Err(Error::input("generator set is empty"));
    }
    for g in generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
        }
    }
    Ok(dim)
}

/// Exact closed-hull membership by rational phase-1 feasibility.
pub fn exact_membership_oracle(point: &[Rational], generators: &[Vec<Rational>]) -> Result<Verdict> {
    let dim = check_dims(point, generators)?;
    let j = generators.len();
    let mut rows = Vec::with_capacity(dim + 1);
    let mut rhs = Vec::with_capacity(dim + 1);
    for c in 0..dim {
        rows.push(generators.iter().map(|g| g[c].clone()).collect());
        rhs.push(point[c].clone());
    }
    rows.push(vec![Rational::one(); j]);
    rhs.push(Rational::one());
    let cost = vec![Rational::zero(); j];
    Ok(match minimize(&cost, &rows, &rhs) {
        LpOutcome::Infeasible => Verdict::Outside,
        _ => Verdict::Inside,
    })
}

/// Exact L∞ distance from `point` to the convex hull (zero when inside).
pub fn exact_linf_distance(point: &[Rational], generators: &[Vec<Rational>]) -> Result<Rational> {
    let dim = check_dims(point, generators)?;
    let j = generators.len();
    // Variables: λ (j), s, u (dim), v (dim).
    let n = j + 1 + 2 * dim;
    let s = j;
    let mut rows = Vec::with_capacity(2 * dim + 1);
    let mut rhs = Vec::with_capacity(2 * dim + 1);
    for c in 0..dim {
        // Σ λ g_c − s + u_c = p_c
        let mut up = vec![Rational::zero(); n];
        // −Σ λ g_c − s + v_c = −p_c
        let mut down = vec![Rational::zero(); n];
        for (l, g) in generators.iter().enumerate() {
            up[l] = g[c].clone();
            down[l] = -g[c].clone();
        }
        up[s] = -Rational::one();
        down[s] = -Rational::one();
        up[j + 1 + c] = Rational::one();
        down[j + 1 + dim + c] = Rational::one();
        rows.push(up);
        rhs.push(point[c].clone());
        rows.push(down);
        rhs.push(-point[c].clone());
    }
    let mut sum = vec![Rational::zero(); n];
    sum[..j].fill(Rational::one());
    rows.push(sum);
    rhs.push(Rational::one());

    let mut cost = vec![Rational::zero(); n];
    cost[s] = Rational::one();
    match minimize(&cost, &rows, &rhs) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(Error::input(format!("distance program did not solve: {other:?}"))),
    }
}

/// True when the closed L∞ ball of `radius` around `point` lies inside the
/// hull, checked exactly through its 2^N corners.
pub fn exact_inner_margin_at_least(
    point: &[Rational],
    generators: &[Vec<Rational>],
    radius: &Rational,
) -> Result<bool> {
    let dim = check_dims(point, generators)?;
    if dim >= usize::BITS as usize - 1 {
        return Err(Error::input("too many coordinates for corner enumeration"));
    }
    for mask in 0usize..(1usize << dim) {
        let corner: Vec<Rational> = point
            .iter()
            .enumerate()
            .map(|(c, x)| if mask >> c & 1 == 1 { x + radius } else { x - radius })
            .collect();
        if exact_membership_oracle(&corner, generators)? == Verdict::Outside {
            return Ok(false);
        }
    }
    Ok(true)
}
