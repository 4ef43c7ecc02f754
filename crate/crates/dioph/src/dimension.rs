//! Dimension estimation for the limsup sets, two ways.
//!
//! The counting route uses the classical Hinokuma–Shiga formula: with
//! `C_alpha(N) = #{n <= N : f(n)/n >= n^(-alpha)}` and
//! `delta(alpha) = sup { d : limsup C_alpha(N)/N^d > 0 }`, the Hausdorff
//! dimension of the homogeneous limsup set is
//! `min(1, sup_alpha kappa(alpha))` where `kappa = (1 + delta)/alpha` when
//! `C_alpha` diverges and 0 otherwise. At finite data both the sup and the
//! divergence condition become estimators, and the report says so: `delta_hat`
//! is an upper-slope proxy over dyadic checkpoints, never the true exponent.
//!
//! The box-counting route covers a dyadic block of arcs — the sets for
//! `n` in `(N/2, N]` — with cells whose size matches the smallest arc radius
//! in the block, and reads the dimension off the least-squares slope of
//! log(count) against log(1/cell). Blocks rather than full truncations keep
//! the scaling honest: the head union always contains fixed arcs of positive
//! length, which would drag every slope to 1.

use rayon::prelude::*;

use crate::arcs::{self, ArcSet};
use crate::arith::ArithTables;
use crate::profile::ApproxProfile;
use crate::{Error, Result};

/// Exact counting function `C_alpha(N)`: how many `n <= N` satisfy
/// `f(n)/n >= n^(-alpha)`.
pub fn c_alpha(alpha: f64, n_max: u64, profile: &ApproxProfile) -> Result<u64> {
    if alpha < 1.0 {
        return Err(Error::validation(format!(
            "alpha = {alpha} violates alpha >= 1"
        )));
    }
    let mut count = 0u64;
    for n in 1..=n_max {
        if profile.radius(n)? >= (n as f64).powf(-alpha) {
            count += 1;
        }
    }
    Ok(count)
}

/// Finite-window estimate of the lower order
/// `lambda(f) = liminf -ln f(n) / ln n`: the minimum of the quotient over the
/// window, taken at indices where `f(n) > 0`.
pub fn lower_order(profile: &ApproxProfile, n_min: u64, n_max: u64) -> Result<f64> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::validation(
            "lower_order needs 2 <= n_min <= n_max",
        ));
    }
    let mut best: Option<f64> = None;
    for n in n_min..=n_max {
        let f = profile.f(n)?;
        if f > 0.0 {
            let q = -f.ln() / (n as f64).ln();
            best = Some(match best {
                Some(b) => b.min(q),
                None => q,
            });
        }
    }
    best.ok_or_else(|| Error::degenerate("f vanishes on the whole window"))
}

/// Dimension estimate from counting functions over a grid of exponents.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DimensionReport {
    pub alpha_grid: Vec<f64>,
    /// Dyadic checkpoints `2, 4, ..., n_max`.
    pub checkpoints: Vec<u64>,
    /// `counts[i][j]` is `C\u{3b1}(checkpoints[j])` for `alpha_grid[i]`.
    pub counts: Vec<Vec<u64>>,
    /// Upper-slope proxy for `delta(alpha)` per grid point.
    pub delta_hat: Vec<f64>,
    /// `(1 + delta_hat)/alpha` where the growth test passes, else 0.
    pub kappa_hat: Vec<f64>,
    /// `min(1, max kappa_hat)`.
    pub dimension: f64,
    /// Lower-order estimate, present when `f` is nonincreasing on the window.
    pub lower_order_hat: Option<f64>,
    /// `min(1, 2/(lambda + 1))`, present under the same monotonicity proviso.
    pub closed_form_dimension: Option<f64>,
    /// Box-counting slope, when a box-count run was attached.
    pub box_count_slope: Option<f64>,
}

/// Evaluates the counting-dimension estimator.
///
/// `n_max` must be a power of two. `growth_threshold` is the finite proxy for
/// "`C_alpha(N)` diverges": the final count must reach it and must exceed the
/// count at `n_max/4`.
pub fn counting_dimension(
    profile: &ApproxProfile,
    n_max: u64,
    alpha_grid: &[f64],
    growth_threshold: u64,
) -> Result<DimensionReport> {
    if alpha_grid.is_empty() {
        return Err(Error::validation("alpha grid must be nonempty"));
    }
    if !alpha_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::validation("alpha grid must be strictly ascending"));
    }
    if alpha_grid[0] < 1.0 {
        return Err(Error::validation("alpha grid entries must be >= 1"));
    }
    if !n_max.is_power_of_two() || n_max < 4 {
        return Err(Error::validation("n_max must be a power of two, at least 4"));
    }

    let levels = n_max.ilog2();
    let checkpoints: Vec<u64> = (1..=levels).map(|j| 1u64 << j).collect();
    let mut counts = vec![vec![0u64; checkpoints.len()]; alpha_grid.len()];

    // Running qualification counts per alpha; flushed at each checkpoint.
    let mut running = vec![0u64; alpha_grid.len()];
    let mut monotone = true;
    let mut prev_f = f64::INFINITY;
    let mut next_checkpoint = 0usize;
    for n in 1..=n_max {
        let f = profile.f(n)?;
        if n >= 2 {
            if f > prev_f {
                monotone = false;
            }
            prev_f = f;
        }
        let radius = profile.radius(n)?;
        // Qualification is monotone in alpha: find the first grid index that
        // accepts n and bump everything after it via a difference trick.
        let first = alpha_grid.partition_point(|&a| radius < (n as f64).powf(-a));
        if first < alpha_grid.len() {
            running[first] += 1;
        }
        if n == checkpoints[next_checkpoint] {
            let mut acc = 0u64;
            for (i, r) in running.iter().enumerate() {
                acc += r;
                counts[i][next_checkpoint] = acc;
            }
            next_checkpoint += 1;
        }
    }

    // delta_hat: max of log C / log N over dyadic N in [sqrt(n_max), n_max].
    let lo_level = levels.div_ceil(2);
    let mut delta_hat = Vec::with_capacity(alpha_grid.len());
    let mut kappa_hat = Vec::with_capacity(alpha_grid.len());
    for (i, alpha) in alpha_grid.iter().enumerate() {
        let mut delta: f64 = 0.0;
        for (j, &n) in checkpoints.iter().enumerate() {
            if n < (1 << lo_level) {
                continue;
            }
            let c = counts[i][j];
            if c > 0 {
                delta = delta.max((c as f64).ln() / (n as f64).ln());
            }
        }
        let last = counts[i][checkpoints.len() - 1];
        let quarter = counts[i][checkpoints.len().saturating_sub(3)];
        let grows = last >= growth_threshold && last > quarter;
        delta_hat.push(delta);
        kappa_hat.push(if grows { (1.0 + delta) / alpha } else { 0.0 });
    }
    let dimension = kappa_hat.iter().fold(0.0f64, |a, &b| a.max(b)).min(1.0);

    let (lower, closed) = if monotone {
        match lower_order(profile, 2, n_max) {
            Ok(l) => (Some(l), Some((2.0 / (l + 1.0)).min(1.0))),
            Err(_) => (None, None),
        }
    } else {
        (None, None)
    };

    Ok(DimensionReport {
        alpha_grid: alpha_grid.to_vec(),
        checkpoints,
        counts,
        delta_hat,
        kappa_hat,
        dimension,
        lower_order_hat: lower,
        closed_form_dimension: closed,
        box_count_slope: None,
    })
}

/// How the cell size is chosen at each schedule point.
#[derive(Clone, Debug, serde::Serialize)]
pub enum ResolutionRule {
    /// Cell size `2^-j` matched to the smallest positive arc radius in the
    /// block (the default).
    MinArcRadius,
    /// Explicit `j` per schedule point.
    Explicit(Vec<u32>),
}

/// Configuration of a box-count run.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BoxCountConfig {
    /// Ascending block cutoffs; each point covers the arcs for `n` in
    /// `(N/2, N]`.
    pub schedule: Vec<u64>,
    pub rule: ResolutionRule,
    /// Reduced fractions (true) or all fractions (false).
    pub reduced: bool,
    /// Constant shift override; `None` keeps the profile's own shift.
    pub shift_override: Option<f64>,
}

impl Default for BoxCountConfig {
    fn default() -> Self {
        BoxCountConfig {
            schedule: (5..=11).map(|j| 1u64 << j).collect(),
            rule: ResolutionRule::MinArcRadius,
            reduced: true,
            shift_override: None,
        }
    }
}

/// One schedule point of a box count.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct BoxCountPoint {
    pub block_end: u64,
    pub resolution_bits: u32,
    pub cells: u64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BoxCountReport {
    pub points: Vec<BoxCountPoint>,
    /// Least-squares slope of ln(cells) against resolution_bits * ln 2.
    pub slope: f64,
}

/// Counts the dyadic cells of size `2^-bits` meeting a canonical arc union.
fn covered_cells(set: &ArcSet, bits: u32) -> u64 {
    let scale = (1u64 << bits) as f64;
    let max_cell = (1u64 << bits) - 1;
    let mut total = 0u64;
    let mut prev_last: Option<u64> = None;
    for arc in set.arcs() {
        let mut first = (arc.lo * scale) as u64;
        let last = ((arc.hi * scale).ceil() as u64).saturating_sub(1).min(max_cell);
        if let Some(p) = prev_last {
            if first <= p {
                if last <= p {
                    continue;
                }
                first = p + 1;
            }
        }
        total += last - first + 1;
        prev_last = Some(last);
    }
    total
}

/// Box-counting dimension estimate over a schedule of dyadic blocks.
pub fn box_count_estimate(
    profile: &ApproxProfile,
    config: &BoxCountConfig,
    tables: &ArithTables,
) -> Result<BoxCountReport> {
    if config.schedule.len() < 3 {
        return Err(Error::validation(
            "box counting needs at least 3 schedule points",
        ));
    }
    if !config.schedule.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::validation("box-count schedule must be ascending"));
    }
    let n_top = *config.schedule.last().unwrap();
    tables.check_capacity(n_top)?;
    if let ResolutionRule::Explicit(bits) = &config.rule {
        if bits.len() != config.schedule.len() {
            return Err(Error::validation(
                "explicit resolution list must match the schedule length",
            ));
        }
    }

    let mut mp = profile.materialize(n_top)?;
    if let Some(theta) = config.shift_override {
        mp.override_shift(theta)?;
    }

    let points: Vec<Option<BoxCountPoint>> = config
        .schedule
        .par_iter()
        .enumerate()
        .map(|(idx, &block_end)| {
            let block_start = block_end / 2 + 1;
            let mut min_radius = f64::INFINITY;
            let mut raw: Vec<(f64, f64)> = Vec::new();
            for n in block_start..=block_end {
                let radius = mp.radius(n);
                if radius <= 0.0 {
                    continue;
                }
                min_radius = min_radius.min(radius);
                let set = arcs::arcs_from_values(n, radius, mp.shift(n), config.reduced, tables);
                raw.extend(set.arcs().iter().map(|a| (a.lo, a.hi)));
            }
            if raw.is_empty() {
                return None;
            }
            let bits = match &config.rule {
                ResolutionRule::MinArcRadius => {
                    ((1.0 / min_radius).log2().ceil() as u32).clamp(1, 50)
                }
                ResolutionRule::Explicit(bits) => bits[idx],
            };
            let union = ArcSet::from_intervals(raw);
            Some(BoxCountPoint {
                block_end,
                resolution_bits: bits,
                cells: covered_cells(&union, bits),
            })
        })
        .collect();

    let points: Vec<BoxCountPoint> = points.into_iter().flatten().collect();
    if points.len() < 3 {
        return Err(Error::degenerate(
            "fewer than 3 schedule points produced nonempty blocks",
        ));
    }

    // Least squares of y = ln(cells) on x = bits * ln 2.
    let xs: Vec<f64> = points
        .iter()
        .map(|p| p.resolution_bits as f64 * std::f64::consts::LN_2)
        .collect();
    let ys: Vec<f64> = points.iter().map(|p| (p.cells as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::degenerate(
            "all schedule points share one resolution; the slope is undefined",
        ));
    }
    Ok(BoxCountReport {
        points,
        slope: sxy / sxx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables() -> ArithTables {
        ArithTables::build(1 << 12).unwrap()
    }

    #[test]
    fn c_alpha_zero_function() {
        let p = ApproxProfile::constant(0.0).unwrap();
        assert_eq!(c_alpha(2.0, 500, &p).unwrap(), 0);
    }

    #[test]
    fn c_alpha_power_family() {
        let p = ApproxProfile::power(3.0).unwrap();
        // At alpha = tau every n qualifies.
        assert_eq!(c_alpha(3.0, 200, &p).unwrap(), 200);
        // Below tau only n = 1 does.
        assert_eq!(c_alpha(2.5, 200, &p).unwrap(), 1);
    }

    #[test]
    fn c_alpha_monotone_in_both_arguments() {
        let p = ApproxProfile::constant(0.4).unwrap();
        let mut last = 0;
        for n_max in [10u64, 50, 200, 800] {
            let c = c_alpha(1.5, n_max, &p).unwrap();
            assert!(c >= last);
            last = c;
        }
        let mut last = 0;
        for alpha in [1.0, 1.25, 1.5, 2.0, 4.0] {
            let c = c_alpha(alpha, 500, &p).unwrap();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn counting_dimension_of_power_families() {
        let grid: Vec<f64> = (4..=24).map(|i| i as f64 * 0.25).collect();
        for tau in [2.0f64, 3.0, 4.0] {
            let p = ApproxProfile::power(tau).unwrap();
            let report = counting_dimension(&p, 1 << 14, &grid, 16).unwrap();
            let expected = (2.0 / tau).min(1.0);
            assert!(
                (report.dimension - expected).abs() < 0.02,
                "tau = {tau}: {} vs {}",
                report.dimension,
                expected
            );
            // Monotone family: the closed form is present and matches.
            assert!((report.closed_form_dimension.unwrap() - expected).abs() < 1e-12);
            assert!((report.lower_order_hat.unwrap() - (tau - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn counting_dimension_of_zero_function() {
        let grid = [1.0, 2.0, 3.0];
        let p = ApproxProfile::constant(0.0).unwrap();
        let report = counting_dimension(&p, 1 << 10, &grid, 16).unwrap();
        assert_eq!(report.dimension, 0.0);
        assert!(report.kappa_hat.iter().all(|&k| k == 0.0));
    }

    #[test]
    fn counting_dimension_validates_input() {
        let p = ApproxProfile::constant(0.5).unwrap();
        assert!(counting_dimension(&p, 1 << 10, &[], 16).is_err());
        assert!(counting_dimension(&p, 1000, &[1.0, 2.0], 16).is_err());
        assert!(counting_dimension(&p, 1 << 10, &[2.0, 1.5], 16).is_err());
    }

    #[test]
    fn kappa_stays_within_its_envelope() {
        let grid: Vec<f64> = (4..=20).map(|i| i as f64 * 0.25).collect();
        let p = ApproxProfile::power(2.5).unwrap();
        let report = counting_dimension(&p, 1 << 12, &grid, 16).unwrap();
        for (alpha, kappa) in report.alpha_grid.iter().zip(&report.kappa_hat) {
            assert!(*kappa >= 0.0 && *kappa <= 2.0 / alpha + 1e-12);
        }
        assert!(report.dimension >= 0.0 && report.dimension <= 1.0);
    }

    #[test]
    fn lower_order_examples() {
        let p = ApproxProfile::power(3.0).unwrap();
        assert!((lower_order(&p, 2, 4096).unwrap() - 2.0).abs() < 1e-12);

        let half = ApproxProfile::constant(0.5).unwrap();
        let expected = -(0.5f64.ln()) / 4096f64.ln();
        assert!((lower_order(&half, 2, 4096).unwrap() - expected).abs() < 1e-12);

        let zero = ApproxProfile::constant(0.0).unwrap();
        assert!(matches!(
            lower_order(&zero, 2, 100),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn box_count_saturates_for_fat_arcs() {
        let t = tables();
        let p = ApproxProfile::constant(0.5).unwrap();
        let cfg = BoxCountConfig {
            schedule: (5..=10).map(|j| 1u64 << j).collect(),
            ..BoxCountConfig::default()
        };
        let report = box_count_estimate(&p, &cfg, &t).unwrap();
        assert!(
            (report.slope - 1.0).abs() < 0.15,
            "slope {}",
            report.slope
        );
    }

    #[test]
    fn box_count_needs_three_points() {
        let t = tables();
        let p = ApproxProfile::constant(0.5).unwrap();
        let cfg = BoxCountConfig {
            schedule: vec![32, 64],
            ..BoxCountConfig::default()
        };
        assert!(matches!(
            box_count_estimate(&p, &cfg, &t),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn covered_cells_counts_exactly() {
        let set = ArcSet::from_intervals(vec![(0.0, 0.25), (0.5, 0.51)]);
        // 8 cells of size 1/8: [0,1/8),[1/8,1/4) from the first arc; cell 4
        // from the second.
        assert_eq!(covered_cells(&set, 3), 3);
        // Touching boundary: arc ending exactly at a cell edge takes no extra
        // cell.
        let edge = ArcSet::from_intervals(vec![(0.0, 0.125)]);
        assert_eq!(covered_cells(&edge, 3), 1);
    }
}
