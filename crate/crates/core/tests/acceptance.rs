//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every criterion produces a textual report of what it computed. The last
//! criterion re-runs all others on a differently sized thread pool and
//! requires those reports to match byte for byte.

use std::time::{Duration, Instant};

use mband::analytic::td_center_value_on_grid;
use mband::band::{m_band_contains, CurveTransform};
use mband::depth::{depth_all, depth_tally, DepthConfig, DepthReport, Mode};
use mband::hull::exact::{
    exact_inner_margin_at_least, exact_linf_distance, exact_membership_oracle, rational, Rational,
};
use mband::hull::DEFAULT_TOL;
use mband::verify::{
    center_suite, consistency_suite, wendel_suite, zero_depth_suite, ConsistencyPlan, VerifyParams,
};
use mband::{point_in_convex_hull, BandSpec, Curve, FunctionalSample, GeneratorSet, Point, TimeGrid, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

const SEED: u64 = 20_240_611;

struct Outcome {
    passed: bool,
    detail: String,
    report: String,
}

type Criterion = fn() -> Outcome;

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn outcome_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn report_bytes(r: &DepthReport) -> String {
    let hits: Vec<u128> = r.entries.iter().map(|e| e.hits).collect();
    format!("{}|{hits:?}", outcome_json(r))
}

// ---------------------------------------------------------------- 1 – 3

fn c1_wendel() -> Outcome {
    let start = Instant::now();
    let o = wendel_suite(1, 4, 5, VerifyParams { replications: 100_000, seed: SEED }).unwrap();
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: within(o.estimate, 0.875, 0.01) && secs <= 60.0,
        detail: format!("bd1 estimate {:.5} vs 0.875 ± 0.01 (se {:.5}), {secs:.1} s", o.estimate, o.standard_error),
        report: outcome_json(&o),
    }
}

fn c2_center() -> Outcome {
    let start = Instant::now();
    let o = center_suite(1, 2, 4, 5, VerifyParams { replications: 20_000, seed: SEED }).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let grid = td_center_value_on_grid(1, 2, 4, 5);
    Outcome {
        passed: within(o.estimate, 0.5, 0.03) && secs <= 120.0,
        detail: format!(
            "td2 estimate {:.5} vs 0.5 ± 0.03 (se {:.5}); counting-measure value on 5 points is {grid:.4}, \
             |estimate − {grid:.4}| = {:.5}; {secs:.1} s",
            o.estimate,
            o.standard_error,
            (o.estimate - grid).abs()
        ),
        report: outcome_json(&o),
    }
}

fn c3_zero_depth() -> Outcome {
    let start = Instant::now();
    let o = zero_depth_suite(2, 2, 5, VerifyParams { replications: 10_000, seed: SEED }).unwrap();
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: o.estimate <= 0.01 && secs <= 60.0,
        detail: format!("bd2 estimate {:.5} ≤ 0.01, {secs:.1} s", o.estimate),
        report: outcome_json(&o),
    }
}

// ---------------------------------------------------------------- 4

/// Dyadic rational `num / den`, exactly representable as f64.
fn dyadic(rng: &mut ChaCha8Rng, range: i64) -> (i64, i64) {
    let den = 1i64 << rng.random_range(0..4);
    (rng.random_range(-range..=range), den)
}

fn c4_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let margin = rational(1, 1_000_000);
    let (mut accepted, mut agree, mut inside, mut rejected) = (0usize, 0usize, 0usize, 0usize);
    let mut verdicts = String::new();
    while accepted < 1000 {
        let dim = rng.random_range(1..=4usize);
        let j = rng.random_range(1..=8usize);
        let gens_q: Vec<Vec<(i64, i64)>> =
            (0..j).map(|_| (0..dim).map(|_| dyadic(&mut rng, 40)).collect()).collect();
        // Half the points are convex combinations, half are free.
        let point_q: Vec<(i64, i64)> = if rng.random_bool(0.5) {
            let w: Vec<i64> = (0..j).map(|_| rng.random_range(1..=8)).collect();
            let total: i64 = w.iter().sum();
            (0..dim)
                .map(|c| {
                    // Σ w_l n_l / d_l over a common denominator of 8·total.
                    let num: i64 = gens_q.iter().zip(&w).map(|(g, wl)| wl * g[c].0 * (8 / g[c].1)).sum();
                    (num, 8 * total)
                })
                .collect()
        } else {
            (0..dim).map(|_| dyadic(&mut rng, 40)).collect()
        };
        let gens_r: Vec<Vec<Rational>> =
            gens_q.iter().map(|g| g.iter().map(|&(n, d)| rational(n, d)).collect()).collect();
        let point_r: Vec<Rational> = point_q.iter().map(|&(n, d)| rational(n, d)).collect();
        let exact = exact_membership_oracle(&point_r, &gens_r).unwrap();
        let clear = match exact {
            Verdict::Outside => exact_linf_distance(&point_r, &gens_r).unwrap() >= margin,
            Verdict::Inside => exact_inner_margin_at_least(&point_r, &gens_r, &margin).unwrap(),
        };
        if !clear {
            rejected += 1;
            continue;
        }
        accepted += 1;
        let gens = GeneratorSet::new(
            gens_q
                .iter()
                .map(|g| Point::new(g.iter().map(|&(n, d)| n as f64 / d as f64).collect()).unwrap())
                .collect(),
        )
        .unwrap();
        let p = Point::new(point_q.iter().map(|&(n, d)| n as f64 / d as f64).collect()).unwrap();
        let float = point_in_convex_hull(&p, &gens, DEFAULT_TOL).unwrap().verdict;
        if float == exact {
            agree += 1;
        }
        if exact == Verdict::Inside {
            inside += 1;
        }
        verdicts.push(if float == Verdict::Inside { 'I' } else { 'O' });
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: agree == 1000 && secs <= 30.0,
        detail: format!(
            "{agree}/1000 agree ({inside} inside, {} outside, {rejected} near-boundary draws skipped), {secs:.1} s",
            1000 - inside
        ),
        report: verdicts,
    }
}

// ---------------------------------------------------------------- 5

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn random_curve(rng: &mut ChaCha8Rng, id: String, k: usize, d: usize) -> Curve {
    Curve::new(id, d, (0..k * d).map(|_| gaussian(rng)).collect()).unwrap()
}

fn convex_combination(rng: &mut ChaCha8Rng, gens: &[Curve], id: &str) -> Curve {
    let w: Vec<f64> = gens.iter().map(|_| rng.random::<f64>() + 0.05).collect();
    let total: f64 = w.iter().sum();
    let len = gens[0].values().len();
    let values = (0..len)
        .map(|i| gens.iter().zip(&w).map(|(g, wl)| g.values()[i] * wl / total).sum())
        .collect();
    Curve::new(id, gens[0].dim(), values).unwrap()
}

fn brute_force_band(f: &Curve, gens: &[&Curve], m: usize) -> bool {
    let k = f.len();
    let total = k.pow(m as u32);
    (0..total).all(|mut code| {
        let tuple: Vec<usize> = (0..m)
            .map(|_| {
                let t = code % k;
                code /= k;
                t
            })
            .collect();
        let concat = |c: &Curve| -> Vec<f64> { tuple.iter().flat_map(|&t| c.row(t).to_vec()).collect() };
        let p = Point::new(concat(f)).unwrap();
        let g = GeneratorSet::new(gens.iter().map(|c| Point::new(concat(c)).unwrap()).collect()).unwrap();
        point_in_convex_hull(&p, &g, DEFAULT_TOL).unwrap().is_inside()
    })
}

fn c5_tuple_reduction() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let (mut agree, mut inside) = (0, 0);
    let mut verdicts = String::new();
    for _ in 0..200 {
        let k = rng.random_range(1..=5usize);
        let m = rng.random_range(1..=3usize);
        let d = rng.random_range(1..=2usize);
        let j = rng.random_range(1..=6usize);
        let gens: Vec<Curve> = (0..j).map(|i| random_curve(&mut rng, format!("g{i}"), k, d)).collect();
        let f = match rng.random_range(0..3) {
            0 => convex_combination(&mut rng, &gens, "f"),
            1 => {
                // A convex combination nudged at one grid point.
                let base = convex_combination(&mut rng, &gens, "f");
                let mut v = base.values().to_vec();
                let at = rng.random_range(0..v.len());
                v[at] += 0.3 * gaussian(&mut rng);
                Curve::new("f", d, v).unwrap()
            }
            _ => random_curve(&mut rng, "f".into(), k, d),
        };
        let refs: Vec<&Curve> = gens.iter().collect();
        let fast = m_band_contains(&TimeGrid::regular(k).unwrap(), &f, &refs, &BandSpec::all(m), DEFAULT_TOL)
            .unwrap()
            .is_inside();
        let brute = brute_force_band(&f, &refs, m);
        agree += usize::from(fast == brute);
        inside += usize::from(brute);
        verdicts.push(if fast { 'I' } else { 'O' });
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: agree == 200 && secs <= 60.0,
        detail: format!("{agree}/200 agree with all k^m ordered tuples ({inside} inside), {secs:.1} s"),
        report: verdicts,
    }
}

// ---------------------------------------------------------------- 6

fn scalar(id: &str, v: Vec<f64>) -> Curve {
    Curve::scalar(id, v).unwrap()
}

fn inside(grid: &TimeGrid, f: &Curve, gens: &[Curve], m: usize) -> bool {
    let refs: Vec<&Curve> = gens.iter().collect();
    m_band_contains(grid, f, &refs, &BandSpec::all(m), DEFAULT_TOL).unwrap().is_inside()
}

fn c6_structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut failures = Vec::new();
    let mut checks = 0;
    let k = 6;
    let grid = TimeGrid::regular(k).unwrap();

    // Constants: the 2-band holds exactly the constants in their range.
    let consts: Vec<Curve> = [-1.0, 0.5, 2.0].iter().map(|&c| scalar("c", vec![c; k])).collect();
    for _ in 0..50 {
        let level = rng.random_range(-1.0..2.0);
        let wobble: Vec<f64> = (0..k).map(|_| level + rng.random_range(-0.2..0.2)).collect();
        let clamped: Vec<f64> = wobble.iter().map(|x| x.clamp(-1.0, 2.0)).collect();
        let is_const = clamped.windows(2).all(|w| w[0] == w[1]);
        checks += 2;
        if inside(&grid, &scalar("f", clamped), &consts, 2) != is_const {
            failures.push("constants: non-constant curve admitted");
        }
        if !inside(&grid, &scalar("f", vec![level; k]), &consts, 2) {
            failures.push("constants: constant in range rejected");
        }
    }

    // Affine generators: the 3-band holds affine curves only.
    let coef = [(1.0, 0.0), (-0.5, 3.0), (0.2, -1.0), (0.0, 1.0)];
    let lines: Vec<Curve> =
        coef.iter().map(|&(a, b)| scalar("l", (0..k).map(|t| a * t as f64 + b).collect())).collect();
    for i in 0..lines.len() {
        for l in i + 1..lines.len() {
            let mid: Vec<f64> = lines[i].values().iter().zip(lines[l].values()).map(|(x, y)| (x + y) / 2.0).collect();
            for t in 1..k - 1 {
                // Nudge into the envelope's interior so only the shape changes.
                let lo = lines.iter().map(|g| g.values()[t]).fold(f64::INFINITY, f64::min);
                let hi = lines.iter().map(|g| g.values()[t]).fold(f64::NEG_INFINITY, f64::max);
                let mut bent = mid.clone();
                bent[t] += if mid[t] + 0.05 <= hi { 0.05 } else { -0.05 };
                if bent[t] < lo {
                    continue;
                }
                checks += 3;
                if !inside(&grid, &scalar("f", mid.clone()), &lines, 3) {
                    failures.push("affine: midpoint rejected");
                }
                if inside(&grid, &scalar("f", bent.clone()), &lines, 3) {
                    failures.push("affine: perturbed midpoint admitted to the 3-band");
                }
                if !inside(&grid, &scalar("f", bent), &lines, 1) {
                    failures.push("affine: perturbed midpoint left the envelope");
                }
            }
        }
    }

    // Nondecreasing generators: 2-band members are nondecreasing.
    for _ in 0..40 {
        let gens: Vec<Curve> = (0..4)
            .map(|_| {
                let mut acc = rng.random_range(-1.0..1.0);
                scalar(
                    "g",
                    (0..k)
                        .map(|_| {
                            acc += rng.random_range(0.0..1.0);
                            acc
                        })
                        .collect(),
                )
            })
            .collect();
        let lo: Vec<f64> = (0..k).map(|t| gens.iter().map(|g| g.values()[t]).fold(f64::INFINITY, f64::min)).collect();
        let hi: Vec<f64> =
            (0..k).map(|t| gens.iter().map(|g| g.values()[t]).fold(f64::NEG_INFINITY, f64::max)).collect();
        for _ in 0..10 {
            let f: Vec<f64> = (0..k).map(|t| lo[t] + rng.random::<f64>() * (hi[t] - lo[t])).collect();
            let monotone = f.windows(2).all(|w| w[0] <= w[1]);
            checks += 1;
            if inside(&grid, &scalar("f", f.clone()), &gens, 2) && !monotone {
                failures.push("monotone: decreasing step admitted to the 2-band");
            }
        }
        checks += 1;
        if !inside(&grid, &convex_combination(&mut rng, &gens, "f"), &gens, 2) {
            failures.push("monotone: convex combination rejected");
        }
    }

    // k-band on a k-point grid = hull of the whole curves, checked exactly.
    for _ in 0..40 {
        let kk = rng.random_range(2..=4usize);
        let d = rng.random_range(1..=2usize);
        let j = rng.random_range(2..=6usize);
        let g = TimeGrid::regular(kk).unwrap();
        let gq: Vec<Vec<(i64, i64)>> = (0..j).map(|_| (0..kk * d).map(|_| dyadic(&mut rng, 20)).collect()).collect();
        let fq: Vec<(i64, i64)> = if rng.random_bool(0.5) {
            let w: Vec<i64> = (0..j).map(|_| rng.random_range(1..=4)).collect();
            let total: i64 = w.iter().sum();
            (0..kk * d)
                .map(|c| (gq.iter().zip(&w).map(|(g, wl)| wl * g[c].0 * (8 / g[c].1)).sum(), 8 * total))
                .collect()
        } else {
            (0..kk * d).map(|_| dyadic(&mut rng, 20)).collect()
        };
        let to_f = |q: &[(i64, i64)]| -> Vec<f64> { q.iter().map(|&(n, dd)| n as f64 / dd as f64).collect() };
        let gens: Vec<Curve> = gq.iter().map(|q| Curve::new("g", d, to_f(q)).unwrap()).collect();
        let f = Curve::new("f", d, to_f(&fq)).unwrap();
        let exact = exact_membership_oracle(
            &fq.iter().map(|&(n, dd)| rational(n, dd)).collect::<Vec<_>>(),
            &gq.iter().map(|q| q.iter().map(|&(n, dd)| rational(n, dd)).collect()).collect::<Vec<_>>(),
        )
        .unwrap();
        checks += 1;
        if inside(&g, &f, &gens, kk) != (exact == Verdict::Inside) {
            failures.push("k-band: disagrees with the exact hull of whole curves");
        }
    }

    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checks} structural checks hold")
        } else {
            format!("{} of {checks} checks failed, first: {}", failures.len(), failures[0])
        },
        report: format!("{checks}:{failures:?}"),
    }
}

// ---------------------------------------------------------------- 7

fn random_sample(rng: &mut ChaCha8Rng, n: usize, k: usize, d: usize) -> FunctionalSample {
    let curves = (0..n).map(|i| random_curve(rng, format!("c{i:02}"), k, d)).collect();
    FunctionalSample::new(TimeGrid::regular(k).unwrap(), curves).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    // Diagonally dominant, hence nonsingular and well conditioned.
    let mut a: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    for q in 0..d {
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        a[q * d + q] = sign * (d as f64 + rng.random_range(0.5..2.0));
    }
    a
}

fn c7_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut mismatches = Vec::new();
    let mut report = String::new();
    for case in 0..50 {
        let n = rng.random_range(6..=9usize);
        let k = rng.random_range(2..=5usize);
        let d = rng.random_range(1..=2usize);
        let m = rng.random_range(1..=2usize);
        let j = rng.random_range(2..=n.min(d * m + 3));
        let mode = if case % 2 == 0 { Mode::Band } else { Mode::TimeShare };
        let cfg = DepthConfig::new(m, j, mode);
        let sample = random_sample(&mut rng, n, k, d);
        let base = depth_all(&sample, &cfg).unwrap();
        let shift = Curve::new("shift", d, (0..k * d).map(|_| rng.random_range(-50.0..50.0)).collect()).unwrap();
        let mut phase: Vec<usize> = (0..k).collect();
        phase.shuffle(&mut rng);
        let transforms = [
            ("translate", CurveTransform::Translate(shift)),
            ("linear", CurveTransform::Linear((0..k).map(|_| random_matrix(&mut rng, d)).collect())),
            ("phase", CurveTransform::Phase(phase)),
        ];
        let base_hits: Vec<u128> = base.entries.iter().map(|e| e.hits).collect();
        report.push_str(&format!("{base_hits:?};"));
        for (name, tr) in transforms {
            let moved = depth_all(&tr.apply_sample(&sample).unwrap(), &cfg).unwrap();
            let hits: Vec<u128> = moved.entries.iter().map(|e| e.hits).collect();
            if hits != base_hits {
                mismatches.push(format!("case {case} {name}"));
            }
        }
    }
    Outcome {
        passed: mismatches.is_empty(),
        detail: format!("{} of 150 transformed runs changed a hit count{}", mismatches.len(),
            mismatches.first().map(|m| format!(" (first: {m})")).unwrap_or_default()),
        report,
    }
}

// ---------------------------------------------------------------- 8

fn c8_monotonicity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut violations = Vec::new();
    let mut report = String::new();
    let n = 12;
    for case in 0..200 {
        let k = rng.random_range(2..=4usize);
        let d = if case % 4 == 3 { 2 } else { 1 };
        let sample = random_sample(&mut rng, n, k, d);
        let f = random_curve(&mut rng, "f".into(), k, d);
        // Rows indexed by m, columns by j; last entry is the candidate.
        let mut bd = [[0.0f64; 3]; 3];
        for (mi, m) in (1..=3).enumerate() {
            for (ji, j) in (3..=5).enumerate() {
                let band = DepthConfig::band(m, j);
                let b = depth_all(&sample, &band).unwrap();
                let tb = depth_tally(&f, &sample, &band).unwrap().depth();
                let ts_cfg = DepthConfig::time_share(m, j);
                let t = depth_all(&sample, &ts_cfg).unwrap();
                let tt = depth_tally(&f, &sample, &ts_cfg).unwrap().depth();
                for (eb, et) in b.entries.iter().zip(&t.entries) {
                    if et.depth < eb.depth {
                        violations.push(format!("case {case}: td < bd for {}", eb.id));
                    }
                }
                if tt < tb {
                    violations.push(format!("case {case}: td < bd for the candidate"));
                }
                bd[mi][ji] = tb;
                report.push_str(&format!("{:?}{:?}", b.entries.iter().map(|e| e.hits).collect::<Vec<_>>(), tb));
                if mi > 0 {
                    let prev = depth_all(&sample, &DepthConfig::band(m - 1, j)).unwrap();
                    for (now, before) in b.entries.iter().zip(&prev.entries) {
                        if now.depth > before.depth {
                            violations.push(format!("case {case}: bd increased with m for {}", now.id));
                        }
                    }
                }
                if ji > 0 {
                    let prev = depth_all(&sample, &DepthConfig::band(m, j - 1)).unwrap();
                    for (now, before) in b.entries.iter().zip(&prev.entries) {
                        if now.depth < before.depth {
                            violations.push(format!("case {case}: bd decreased with j for {}", now.id));
                        }
                    }
                }
            }
        }
        for mi in 0..3 {
            for ji in 0..3 {
                if mi > 0 && bd[mi][ji] > bd[mi - 1][ji] {
                    violations.push(format!("case {case}: candidate bd increased with m"));
                }
                if ji > 0 && bd[mi][ji] < bd[mi][ji - 1] {
                    violations.push(format!("case {case}: candidate bd decreased with j"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: violations.is_empty(),
        detail: format!(
            "{} violations over 200 instances (n = 12, m ∈ 1..3, j ∈ 3..5){}, {secs:.1} s",
            violations.len(),
            violations.first().map(|v| format!(", first: {v}")).unwrap_or_default()
        ),
        report,
    }
}

// ---------------------------------------------------------------- 9

/// Number of (subset, time point) pairs at which `f` lies between the
/// subset's pointwise min and max, over all `j`-subsets of `curves`.
fn envelope_hits(f: &[f64], curves: &[Vec<f64>], j: usize) -> u128 {
    fn rec(f: &[f64], curves: &[Vec<f64>], j: usize, start: usize, chosen: &mut Vec<usize>, acc: &mut u128) {
        if chosen.len() == j {
            for (t, &x) in f.iter().enumerate() {
                let lo = chosen.iter().map(|&i| curves[i][t]).fold(f64::INFINITY, f64::min);
                let hi = chosen.iter().map(|&i| curves[i][t]).fold(f64::NEG_INFINITY, f64::max);
                if lo <= x && x <= hi {
                    *acc += 1;
                }
            }
            return;
        }
        for i in start..curves.len() {
            chosen.push(i);
            rec(f, curves, j, i + 1, chosen, acc);
            chosen.pop();
        }
    }
    let mut acc = 0;
    rec(f, curves, j, 0, &mut Vec::new(), &mut acc);
    acc
}

fn c9_modified_band_depth() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut mismatches = 0;
    let mut report = String::new();
    for case in 0..100 {
        let n = rng.random_range(3..=10usize);
        let k = rng.random_range(1..=8usize);
        let j = rng.random_range(2..=n);
        // Half the instances draw from a small lattice to force ties.
        let draw = |rng: &mut ChaCha8Rng| -> f64 {
            if case % 2 == 0 { gaussian(rng) } else { rng.random_range(-2..=2) as f64 }
        };
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..k).map(|_| draw(&mut rng)).collect()).collect();
        let sample = FunctionalSample::new(
            TimeGrid::regular(k).unwrap(),
            rows.iter().enumerate().map(|(i, r)| scalar(&format!("c{i}"), r.clone())).collect(),
        )
        .unwrap();
        let cfg = DepthConfig::time_share(1, j);
        let report_all = depth_all(&sample, &cfg).unwrap();
        for (e, row) in report_all.entries.iter().zip(&rows) {
            if e.hits != envelope_hits(row, &rows, j) {
                mismatches += 1;
            }
        }
        let probe: Vec<f64> = (0..k).map(|_| draw(&mut rng)).collect();
        let tally = depth_tally(&scalar("probe", probe.clone()), &sample, &cfg).unwrap();
        if tally.hits != envelope_hits(&probe, &rows, j) {
            mismatches += 1;
        }
        report.push_str(&format!("{}{:?};", report_bytes(&report_all), tally.hits));
    }
    Outcome {
        passed: mismatches == 0,
        detail: format!("{mismatches} integer mismatches against a direct envelope count over 100 instances"),
        report,
    }
}

// ---------------------------------------------------------------- 10

fn shape_outlier_sample() -> FunctionalSample {
    let k = 9;
    let mut curves = Vec::new();
    for i in 0..16 {
        let level = -1.5 + 0.2 * i as f64;
        let slope = 0.004 * (((i * 7) % 5) as f64 - 2.0);
        curves.push(scalar(&format!("s{i:02}"), (0..k).map(|t| level + slope * (t as f64 - 4.0)).collect()));
    }
    curves.push(scalar("zigzag", (0..k).map(|t| if t % 2 == 0 { 0.05 } else { -0.05 }).collect()));
    FunctionalSample::new(TimeGrid::regular(k).unwrap(), curves).unwrap()
}

fn c10_shape_outlier() -> Outcome {
    let sample = shape_outlier_sample();
    let bd1 = depth_all(&sample, &DepthConfig::band(1, 4)).unwrap();
    let bd2 = depth_all(&sample, &DepthConfig::band(2, 4)).unwrap();
    let r1 = bd1.entry("zigzag").unwrap().rank;
    let r2 = bd2.entry("zigzag").unwrap().rank;
    let n = sample.len();
    Outcome {
        passed: r1 <= 3 && 2 * r2 > n,
        detail: format!("oscillating curve ranks {r1}/{n} by bd1 (≤ 3) and {r2}/{n} by bd2 (bottom half)"),
        report: format!("{}{}", report_bytes(&bd1), report_bytes(&bd2)),
    }
}

// ---------------------------------------------------------------- 11

fn c11_consistency() -> Outcome {
    let start = Instant::now();
    let o = consistency_suite(&ConsistencyPlan::default(), VerifyParams { replications: 100_000, seed: SEED }).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ladder: Vec<String> = o.ladder.iter().map(|s| format!("n={}: {:.4}", s.n, s.mean_sup_error)).collect();
    Outcome {
        passed: o.passed && secs <= 600.0,
        detail: format!("mean sup error {} (strictly decreasing required), {secs:.1} s", ladder.join(", ")),
        report: outcome_json(&o),
    }
}

// ---------------------------------------------------------------- harness

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("Wendel reproduction", c1_wendel),
        ("center time-share value", c2_center),
        ("zero-depth regime", c3_zero_depth),
        ("oracle equivalence", c4_oracle_equivalence),
        ("tuple-reduction soundness", c5_tuple_reduction),
        ("structural example suite", c6_structural),
        ("invariance suite", c7_invariance),
        ("monotonicity suite", c8_monotonicity),
        ("modified-band-depth equivalence", c9_modified_band_depth),
        ("shape-outlier scenario", c10_shape_outlier),
        ("consistency trend", c11_consistency),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected = |name: &str| filter.is_empty() || filter.iter().any(|f| name.contains(f.as_str()));

    let mut failed = Vec::new();
    let mut reports = Vec::new();
    let total = Instant::now();
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !selected(name) {
            continue;
        }
        let start = Instant::now();
        let o = in_pool(1, run);
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{status}] {name}: {} [{:.1} s]", i + 1, o.detail, start.elapsed().as_secs_f64());
        if !o.passed {
            failed.push(i + 1);
        }
        reports.push((i, o.report));
    }

    if selected("determinism") {
        let start = Instant::now();
        let mut differing = Vec::new();
        for (i, single) in &reports {
            let multi = in_pool(4, criteria[*i].1).report;
            if &multi != single {
                differing.push(i + 1);
            }
        }
        let passed = differing.is_empty() && !reports.is_empty();
        println!(
            "criterion 12 [{}] determinism: {} of {} criterion reports identical between 1 and 4 threads{} [{:.1} s]",
            if passed { "PASS" } else { "FAIL" },
            reports.len() - differing.len(),
            reports.len(),
            if differing.is_empty() { String::new() } else { format!(" (differ: {differing:?})") },
            start.elapsed().as_secs_f64()
        );
        if !passed {
            failed.push(12);
        }
    }
    println!("acceptance finished in {:.1?}", Duration::from_secs_f64(total.elapsed().as_secs_f64()));
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
