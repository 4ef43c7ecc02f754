//! Counting approximation solutions and the Monte Carlo machinery around it.
//!
//! For a point `x` the count `S(x, N)` is the number of pairs `(n, m)` with
//! `n <= N`, `m` in `1..=n` coprime to `n`, and
//! `||x - (m + theta(n))/n|| < f(n)/n` on the circle. Its mean over `x` is
//! `E_N = sum_{n<=N} 2 (f(n)/n) phi(n)`.
//!
//! The scan per denominator only visits the handful of residues near `x*n`,
//! so a full count costs `O(sum_n (f(n) + 1))` rather than `O(sum_n n)`.
//! Profiles may use the extended range `f(n) < n/2`, in which case arcs can
//! overlap and a single `x` may collect several residues for the same `n`;
//! multiplicity is counted per pair.

use num_integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arcs::neumaier_add;
use crate::arith::ArithTables;
use crate::profile::{ApproxProfile, MaterializedProfile};
use crate::Result;

/// Identifier of the sampling scheme recorded in run manifests: ChaCha8 with
/// one counter stream per sample index.
pub const RNG_ALGORITHM: &str = "chacha8-per-sample-stream";

/// Exact count at one sample point, with the expected value alongside.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct CountReport {
    pub x: f64,
    pub n_max: u64,
    pub solutions: u64,
    pub expected: f64,
    /// `solutions / expected`, absent when the expected value is zero.
    pub ratio: Option<f64>,
}

/// Distribution summary of a batch of counts.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CountSummary {
    pub samples: usize,
    pub n_max: u64,
    pub expected: f64,
    pub mean_ratio: f64,
    pub median_ratio: f64,
    /// Ratio quantiles at 0%, 10%, ..., 100%.
    pub ratio_deciles: Vec<f64>,
}

#[inline]
fn circle_distance(x: f64) -> f64 {
    let t = x.rem_euclid(1.0);
    t.min(1.0 - t)
}

/// Count of qualifying residues for a single denominator.
fn residues_hit(x: f64, n: u64, f: f64, theta: f64) -> u64 {
    if f <= 0.0 {
        return 0;
    }
    if n == 1 {
        // Single residue; a radius above 1/2 covers the circle anyway.
        return (circle_distance(x - theta) < f) as u64;
    }
    // Integers u with |x*n - theta - u| < f hit residue u mod n; the window
    // is shorter than n, so each residue appears at most once.
    let target = x * n as f64 - theta;
    let lo = (target - f).floor() as i64 + 1;
    let hi = (target + f).ceil() as i64 - 1;
    let mut hits = 0;
    for u in lo..=hi {
        let r = u.rem_euclid(n as i64) as u64;
        // Residue 0 stands for m = n, coprime only when n = 1.
        if r != 0 && gcd(r, n) == 1 {
            hits += 1;
        }
    }
    hits
}

fn count_with(mp: &MaterializedProfile, x: f64, n_max: u64) -> u64 {
    let x = x.rem_euclid(1.0);
    let mut s = 0u64;
    for n in 1..=n_max {
        s += residues_hit(x, n, mp.f(n), mp.shift(n));
    }
    s
}

/// Counting needs window lengths below the residue period, i.e. the standard
/// or extended range.
fn check_countable(profile: &ApproxProfile) -> Result<()> {
    if profile.range() == crate::RangeKind::Unrestricted {
        return Err(crate::Error::validation(
            "counting requires a profile with the standard or extended range",
        ));
    }
    Ok(())
}

/// `E_N = sum_{n<=N} 2 (f(n)/n) phi(n)`.
pub fn expected_count(mp: &MaterializedProfile, tables: &ArithTables, n_max: u64) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=n_max {
        neumaier_add(&mut sum, &mut comp, 2.0 * mp.radius(n) * tables.totient(n) as f64);
    }
    sum + comp
}

/// Exact solution count at `x` up to `n_max`.
pub fn count_solutions(
    x: f64,
    n_max: u64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<CountReport> {
    tables.check_capacity(n_max)?;
    check_countable(profile)?;
    let mp = profile.materialize(n_max)?;
    let expected = expected_count(&mp, tables, n_max);
    let solutions = count_with(&mp, x, n_max);
    Ok(CountReport {
        x,
        n_max,
        solutions,
        expected,
        ratio: (expected > 0.0).then(|| solutions as f64 / expected),
    })
}

/// Counts at many sample points, sharing one profile materialization.
pub fn count_batch(
    xs: &[f64],
    n_max: u64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<Vec<CountReport>> {
    tables.check_capacity(n_max)?;
    check_countable(profile)?;
    let mp = profile.materialize(n_max)?;
    let expected = expected_count(&mp, tables, n_max);
    Ok(xs
        .par_iter()
        .map(|&x| {
            let solutions = count_with(&mp, x, n_max);
            CountReport {
                x,
                n_max,
                solutions,
                expected,
                ratio: (expected > 0.0).then(|| solutions as f64 / expected),
            }
        })
        .collect())
}

/// Uniform sample points on [0, 1), one ChaCha8 stream per sample so the
/// sequence is reproducible regardless of how work is distributed.
pub fn sample_points(samples: usize, seed: u64) -> Vec<f64> {
    (0..samples)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            rng.random::<f64>()
        })
        .collect()
}

/// Shared second-moment kernel; identical (bit for bit) to
/// [`crate::fourier::second_moment_bound`].
pub fn variance_budget(
    n_max: u64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<f64> {
    crate::fourier::second_moment_bound(n_max, profile, tables)
}

/// Empirical tail probability: the fraction of uniform samples whose count
/// deviates from `E_N` by at least `beta`. Deterministic given the seed.
pub fn tail_fraction(
    n_max: u64,
    beta: f64,
    samples: usize,
    seed: u64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<f64> {
    tables.check_capacity(n_max)?;
    check_countable(profile)?;
    if samples == 0 {
        return Err(crate::Error::validation("tail_fraction needs samples >= 1"));
    }
    let mp = profile.materialize(n_max)?;
    let expected = expected_count(&mp, tables, n_max);
    let xs = sample_points(samples, seed);
    let exceed: u64 = xs
        .par_iter()
        .map(|&x| {
            let s = count_with(&mp, x, n_max) as f64;
            ((s - expected).abs() >= beta) as u64
        })
        .sum();
    Ok(exceed as f64 / samples as f64)
}

/// Summarizes a batch of counts by the distribution of `S/E_N`.
pub fn summarize(reports: &[CountReport]) -> CountSummary {
    let n_max = reports.first().map(|r| r.n_max).unwrap_or(0);
    let expected = reports.first().map(|r| r.expected).unwrap_or(0.0);
    let mut ratios: Vec<f64> = reports.iter().filter_map(|r| r.ratio).collect();
    ratios.sort_unstable_by(f64::total_cmp);
    let mean = if ratios.is_empty() {
        0.0
    } else {
        ratios.iter().sum::<f64>() / ratios.len() as f64
    };
    CountSummary {
        samples: reports.len(),
        n_max,
        expected,
        mean_ratio: mean,
        median_ratio: quantile(&ratios, 0.5),
        ratio_deciles: (0..=10).map(|d| quantile(&ratios, d as f64 / 10.0)).collect(),
    }
}

/// Linear-interpolation quantile of a sorted slice.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let idx = pos.floor() as usize;
    let frac = pos - idx as f64;
    if idx + 1 < sorted.len() {
        sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac
    } else {
        sorted[idx]
    }
}

/// CSV rows `x,N,S,E_N,ratio` for a batch of counts.
pub fn write_reports_csv(mut w: impl std::io::Write, reports: &[CountReport]) -> Result<()> {
    writeln!(w, "x,N,S,E_N,ratio")?;
    for r in reports {
        match r.ratio {
            Some(ratio) => writeln!(
                w,
                "{},{},{},{},{}",
                r.x, r.n_max, r.solutions, r.expected, ratio
            )?,
            None => writeln!(w, "{},{},{},{},", r.x, r.n_max, r.solutions, r.expected)?,
        }
    }
    Ok(())
}
