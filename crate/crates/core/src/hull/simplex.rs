//! Dense phase-1 simplex for the convex-hull feasibility problem
//!
//! ```text
//!   minimize   sum(artificials)
//!   subject to G λ + a_coord = p,  1ᵀλ + a_sum = 1,  λ ≥ 0, a ≥ 0
//! ```
//!
//! Rows whose right-hand side is negative are negated first so the
//! all-artificial basis is feasible.

const COST_EPS: f64 = 1e-12;
const PIVOT_EPS: f64 = 1e-12;
/// Consecutive degenerate pivots after which entering selection switches
/// from Dantzig's rule to Bland's rule.
const DEGENERATE_STREAK: usize = 32;

#[derive(Debug, Clone)]
pub(crate) struct Phase1Outcome {
    /// Optimal sum of artificial variables.
    pub objective: f64,
    pub weights: Vec<f64>,
}

/// `target` has `dim` entries; `generators` holds `count` rows of `dim`
/// values each. Both are expected to be pre-scaled to magnitude ≲ 1.
pub(crate) fn phase_one(target: &[f64], generators: &[f64], dim: usize, count: usize) -> Phase1Outcome {
    debug_assert_eq!(target.len(), dim);
    debug_assert_eq!(generators.len(), dim * count);

    let rows = dim + 1;
    let width = count + rows + 1;
    let rhs_col = width - 1;
    let mut tab = vec![0.0; rows * width];
    let mut basis: Vec<usize> = (count..count + rows).collect();

    for r in 0..rows {
        let row = &mut tab[r * width..(r + 1) * width];
        if r < dim {
            for l in 0..count {
                row[l] = generators[l * dim + r];
            }
            row[rhs_col] = target[r];
        } else {
            row[..count].fill(1.0);
            row[rhs_col] = 1.0;
        }
        if row[rhs_col] < 0.0 {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        row[count + r] = 1.0;
    }

    // Reduced costs of the phase-1 objective for the structural columns.
    let mut cost = vec![0.0; width];
    for r in 0..rows {
        for c in 0..count {
            cost[c] -= tab[r * width + c];
        }
        cost[rhs_col] -= tab[r * width + rhs_col];
    }

    let max_iter = 1000 + 50 * (rows + width);
    let mut degenerate = 0usize;
    for _ in 0..max_iter {
        let bland = degenerate >= DEGENERATE_STREAK;
        let mut entering = None;
        let mut best = -COST_EPS;
        for (c, &rc) in cost.iter().enumerate().take(count) {
            if rc < best {
                entering = Some(c);
                if bland {
                    break;
                }
                best = rc;
            }
        }
        let Some(enter) = entering else {
            break;
        };

        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..rows {
            let a = tab[r * width + enter];
            if a > PIVOT_EPS {
                let ratio = tab[r * width + rhs_col].max(0.0) / a;
                let better = match leave {
                    None => true,
                    Some(prev) => {
                        ratio < best_ratio - 1e-15
                            || (ratio <= best_ratio + 1e-15 && prefer_leaving(basis[r], basis[prev], count))
                    }
                };
                if better {
                    best_ratio = ratio;
                    leave = Some(r);
                }
            }
        }
        // Phase 1 is bounded below by zero, so a missing ratio only happens
        // through round-off; stop with the current basis.
        let Some(lr) = leave else {
            break;
        };

        if best_ratio <= 1e-15 {
            degenerate += 1;
        } else {
            degenerate = 0;
        }
        pivot(&mut tab, &mut cost, width, rows, lr, enter);
        basis[lr] = enter;
    }

    let mut weights = vec![0.0; count];
    let mut objective = 0.0;
    for (r, &b) in basis.iter().enumerate() {
        let value = tab[r * width + rhs_col];
        if b < count {
            weights[b] = value;
        } else {
            objective += value.max(0.0);
        }
    }
    Phase1Outcome { objective, weights }
}

/// Artificials leave first; otherwise the smaller variable index wins.
fn prefer_leaving(candidate: usize, incumbent: usize, count: usize) -> bool {
    let cand_art = candidate >= count;
    let inc_art = incumbent >= count;
    match (cand_art, inc_art) {
        (true, false) => true,
        (false, true) => false,
        _ => candidate < incumbent,
    }
}

fn pivot(tab: &mut [f64], cost: &mut [f64], width: usize, rows: usize, pr: usize, pc: usize) {
    let inv = 1.0 / tab[pr * width + pc];
    for v in &mut tab[pr * width..(pr + 1) * width] {
        *v *= inv;
    }
    tab[pr * width + pc] = 1.0;
    let (before, rest) = tab.split_at_mut(pr * width);
    let (pivot_row, after) = rest.split_at_mut(width);
    for row in before.chunks_exact_mut(width).chain(after.chunks_exact_mut(width)) {
        let factor = row[pc];
        if factor != 0.0 {
            for (v, p) in row.iter_mut().zip(pivot_row.iter()) {
                *v -= factor * p;
            }
            row[pc] = 0.0;
        }
    }
    let factor = cost[pc];
    if factor != 0.0 {
        for (v, p) in cost.iter_mut().zip(pivot_row.iter()) {
            *v -= factor * p;
        }
        cost[pc] = 0.0;
    }
    debug_assert!(pr < rows);
}
