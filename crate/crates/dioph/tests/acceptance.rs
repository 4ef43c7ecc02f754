//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime (visible under `--nocapture`). Tolerances and runtime limits
//! are pinned here; regression constants were frozen from an oracle pre-run.
//!
//! Criterion 10 (byte-identical CLI reruns) lives in the CLI crate's own
//! acceptance suite, next to the binary it exercises.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dioph::arcs::{arcs_for, union_measure};
use dioph::arith::{self, ArithTables};
use dioph::counting;
use dioph::criteria::{self, CriterionKind, VerdictHint};
use dioph::dimension::{box_count_estimate, counting_dimension, BoxCountConfig};
use dioph::fourier::intersection_series;
use dioph::profile::ApproxProfile;
use dioph::Budgets;

/// Random admissible profile: f uniform in [0, 1/2], theta uniform in [0, 1/2].
fn random_profile(n_max: u64, seed: u64) -> ApproxProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for n in 1..=n_max {
        let f: f64 = rng.random_range(0.0..=0.5);
        let theta: f64 = rng.random_range(0.0..=0.5);
        text.push_str(&format!("{n} {f} {theta}\n"));
    }
    ApproxProfile::from_table_str(&text).unwrap()
}

fn report(id: u32, name: &str, detail: String, started: Instant, limit_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("acceptance {id:02} {name}: PASS ({detail}, {elapsed:.2}s)");
    assert!(
        elapsed < limit_s,
        "criterion {id} exceeded its {limit_s}s runtime limit: {elapsed:.2}s"
    );
}

#[test]
fn c01_ramanujan_closed_form_equals_direct_sum() {
    let started = Instant::now();
    let tables = ArithTables::build(200).unwrap();
    let mut cases = 0u64;
    for n in 1..=200u64 {
        for k in 0..=400i64 {
            let closed = arith::ramanujan(n, k, &tables).unwrap();
            let direct = arith::ramanujan_direct(n, k).unwrap();
            assert_eq!(closed, direct, "c_{n}({k})");
            cases += 1;
        }
    }
    report(1, "ramanujan-closed-form-vs-direct", format!("{cases} cases"), started, 10.0);
}

#[test]
fn c02_divisor_square_identity_sweep() {
    let started = Instant::now();
    for k in 1..=100_000u64 {
        assert!(arith::divisor_square_identity(k), "identity fails at k = {k}");
    }
    report(2, "divisor-square-identity", "k <= 1e5, exact".into(), started, 30.0);
}

#[test]
fn c03_series_vs_exact_sweep_on_random_pairs() {
    let started = Instant::now();
    let tables = ArithTables::build(200).unwrap();
    let budgets = Budgets::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut literal = 0u32;
    let mut closed = 0u32;
    for batch in 0..10u64 {
        let profile = random_profile(200, 1000 + batch);
        for _ in 0..50 {
            let n = rng.random_range(1..=200u64);
            let m = rng.random_range(1..=200u64);
            let series = intersection_series(n, m, &profile, 1e-6, &tables, &budgets).unwrap();
            let exact = arcs_for(n, &profile, true, &tables)
                .unwrap()
                .intersect(&arcs_for(m, &profile, true, &tables).unwrap())
                .measure();
            let err = (series.value - exact).abs();
            assert!(
                err <= series.tail_bound.min(1e-6),
                "(n,m)=({n},{m}): err {err:.3e} > min(tail {:.3e}, 1e-6)",
                series.tail_bound
            );
            match series.summation {
                dioph::fourier::Summation::Literal => literal += 1,
                dioph::fourier::Summation::ClosedForm => closed += 1,
            }
        }
    }
    report(
        3,
        "series-vs-sweep",
        format!("500 pairs, {literal} literal / {closed} closed-form"),
        started,
        60.0,
    );
}

#[test]
fn c04_measure_identity_to_ten_thousand() {
    let started = Instant::now();
    let n_max = 10_000u64;
    let tables = ArithTables::build(n_max).unwrap();
    let profile = random_profile(n_max, 4);
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        let set = arcs_for(n, &profile, true, &tables).unwrap();
        let expected = 2.0 * profile.radius(n).unwrap() * tables.totient(n) as f64;
        let err = (set.measure() - expected).abs();
        if err > worst {
            worst = err;
        }
        assert!(err < 1e-12, "n = {n}: |measure - 2 eps phi| = {err:.3e}");
    }
    report(4, "arc-measure-identity", format!("n <= 1e4, worst {worst:.2e}"), started, 60.0);
}

#[test]
fn c05_counting_shadow_at_hundred_thousand() {
    let started = Instant::now();
    let n_max = 100_000u64;
    let tables = ArithTables::build(n_max).unwrap();
    let target = 6.0 / (std::f64::consts::PI * std::f64::consts::PI) * n_max as f64;
    let mut medians = Vec::new();
    for theta in [0.0, 0.3] {
        let profile = ApproxProfile::constant(0.5)
            .unwrap()
            .with_constant_shift(theta)
            .unwrap();
        let xs = counting::sample_points(200, 20_240_601);
        let reports = counting::count_batch(&xs, n_max, &profile, &tables).unwrap();
        let summary = counting::summarize(&reports);
        assert!(
            (0.97..=1.03).contains(&summary.median_ratio),
            "theta = {theta}: median {}",
            summary.median_ratio
        );
        assert!(
            (summary.expected - target).abs() < 0.01 * target,
            "E_N {} vs (6/pi^2)N {target}",
            summary.expected
        );
        medians.push(summary.median_ratio);
    }
    report(5, "counting-shadow", format!("medians {medians:.5?}"), started, 60.0);
}

#[test]
fn c06_dimension_estimators() {
    let started = Instant::now();
    let grid: Vec<f64> = (4..=24).map(|i| i as f64 * 0.25).collect();
    let box_tables = ArithTables::build(1 << 12).unwrap();
    let mut details = Vec::new();
    for tau in [2.0f64, 3.0, 4.0] {
        let profile = ApproxProfile::power(tau).unwrap();
        let expected = (2.0 / tau).min(1.0);

        let rep = counting_dimension(&profile, 1 << 20, &grid, 16).unwrap();
        assert!(
            (rep.dimension - expected).abs() < 0.02,
            "tau {tau}: counting dimension {} vs {expected}",
            rep.dimension
        );

        let mut slopes = Vec::new();
        for theta in [0.0, 0.1, 0.3, 0.5] {
            let cfg = BoxCountConfig {
                shift_override: Some(theta),
                ..BoxCountConfig::default()
            };
            let slope = box_count_estimate(&profile, &cfg, &box_tables).unwrap().slope;
            assert!(
                (slope - expected).abs() < 0.1,
                "tau {tau} theta {theta}: box slope {slope} vs {expected}"
            );
            slopes.push(slope);
        }
        let full_cfg = BoxCountConfig {
            reduced: false,
            ..BoxCountConfig::default()
        };
        let full = box_count_estimate(&profile, &full_cfg, &box_tables).unwrap().slope;
        assert!((full - expected).abs() < 0.1, "tau {tau}: full-fraction slope {full}");
        slopes.push(full);
        for a in &slopes {
            for b in &slopes {
                assert!((a - b).abs() <= 0.1, "tau {tau}: slopes {slopes:?} disagree");
            }
        }
        details.push(format!("tau{tau}={:.3}", rep.dimension));
    }
    report(6, "dimension-estimators", details.join(" "), started, 300.0);
}

#[test]
fn c07_bound_suites() {
    let started = Instant::now();
    let tables = ArithTables::build(1 << 20).unwrap();
    let budgets = Budgets::default();

    // Ramanujan mean ratios over the (k, m) grid: bounded, no upward trend in
    // m, and stable against the recorded maximum.
    let mut per_m = Vec::new();
    let mut grid_max = 0.0f64;
    for m in [100u64, 1_000, 10_000] {
        let mut vmax = 0.0f64;
        for k in 1..=100u64 {
            let v = criteria::ramanujan_mean_ratio(k, m, &tables).unwrap();
            vmax = vmax.max(v);
        }
        grid_max = grid_max.max(vmax);
        per_m.push(vmax);
    }
    assert!(criteria::no_blowup(&per_m), "ramanujan mean ratios trend up: {per_m:?}");
    const RECORDED_GRID_MAX: f64 = 1.283458353965;
    assert!(
        grid_max <= RECORDED_GRID_MAX * 1.05,
        "grid max {grid_max} drifted above the recorded {RECORDED_GRID_MAX}"
    );

    let divisor_square: Vec<f64> = (4..=20)
        .map(|j| criteria::divisor_square_log_ratio(1u64 << j, &tables).unwrap())
        .collect();
    assert!(criteria::no_blowup(&divisor_square), "{divisor_square:?}");

    let divisor_gcd: Vec<f64> = (1..=13)
        .map(|j| criteria::divisor_gcd_sum_ratio(1u64 << j, &tables, &budgets).unwrap())
        .collect();
    assert!(criteria::no_blowup(&divisor_gcd), "{divisor_gcd:?}");
    const RECORDED_GCD_MAX: f64 = 0.901684;
    let mut sweep_max = 0.0f64;
    for m in 2..=10_000u64 {
        sweep_max = sweep_max.max(criteria::divisor_gcd_sum_ratio(m, &tables, &budgets).unwrap());
    }
    assert!(sweep_max <= RECORDED_GCD_MAX * 1.05);

    let mertens: Vec<f64> = (2..=20)
        .map(|j| criteria::mertens_ratio(1u64 << j).unwrap())
        .collect();
    assert!(criteria::no_blowup(&mertens), "{mertens:?}");
    let at_million = criteria::mertens_ratio(1_000_000).unwrap();
    let dev = (at_million - criteria::MERTENS_LIMIT).abs() / criteria::MERTENS_LIMIT;
    assert!(dev < 0.10, "mertens(1e6) = {at_million}, off by {dev:.3}");

    let scan = criteria::totient_liminf_scan(10, 1_000_000, &tables).unwrap();
    assert!(scan > 0.25, "totient scan minimum {scan}");

    report(
        7,
        "bound-suites",
        format!("mertens(1e6)={at_million:.5}, totient min={scan:.4}"),
        started,
        120.0,
    );
}

#[test]
fn c08_leveque_bound_everywhere() {
    let started = Instant::now();
    let tables = ArithTables::build(512).unwrap();

    // Exhaustive grid at f = 1/2: precompute the all-fraction sets once.
    let half = ApproxProfile::constant(0.5).unwrap();
    let sets: Vec<_> = (1..=300u64)
        .map(|n| arcs_for(n, &half, false, &tables).unwrap())
        .collect();
    let mut checked = 0u64;
    for n in 1..=300u64 {
        let radius_n = 0.5 / n as f64;
        for m in 1..=300u64 {
            let exact = sets[n as usize - 1].intersect(&sets[m as usize - 1]).measure();
            let bound = 4.0 * 0.25
                + 2.0 * num_integer::gcd(n, m) as f64 * radius_n.min(0.5 / m as f64);
            assert!(exact <= bound + 1e-10, "grid ({n},{m}): {exact} > {bound}");
            checked += 1;
        }
    }

    // Randomized admissible tuples.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for batch in 0..10u64 {
        let profile = random_profile(300, 2000 + batch);
        for _ in 0..100 {
            let n = rng.random_range(1..=300u64);
            let m = rng.random_range(1..=300u64);
            assert!(
                criteria::leveque_bound_check(n, m, &profile, &tables).unwrap(),
                "random tuple ({n},{m}) violates the bound"
            );
            checked += 1;
        }
    }
    report(8, "leveque-bound", format!("{checked} tuples, zero violations"), started, 60.0);
}

#[test]
fn c09_criterion_traces() {
    let started = Instant::now();
    let tables = ArithTables::build(1 << 16).unwrap();

    // The explicit log-power criterion diverges for f = 1/2.
    let half = ApproxProfile::constant(0.5).unwrap();
    let checkpoints: Vec<u64> = (4..=16).map(|j| 1u64 << j).collect();
    let trace =
        criteria::criterion_trace(&CriterionKind::ReducedLogPower, &half, &checkpoints, &tables)
            .unwrap();
    assert_eq!(trace.verdict_hint, VerdictHint::DivergingTrend);

    // The second-moment criterion never reads the shift.
    let shifted = ApproxProfile::constant(0.5)
        .unwrap()
        .with_constant_shift(0.5)
        .unwrap();
    let a = criteria::criterion_trace(
        &CriterionKind::ReducedSecondMoment,
        &half,
        &checkpoints,
        &tables,
    )
    .unwrap();
    let b = criteria::criterion_trace(
        &CriterionKind::ReducedSecondMoment,
        &shifted,
        &checkpoints,
        &tables,
    )
    .unwrap();
    assert_eq!(a.quotients, b.quotients, "shift leaked into the criterion");

    // The factorial-blocks profile satisfies its growth envelope everywhere.
    let blocks = ApproxProfile::factorial_blocks(3).unwrap();
    let kind = CriterionKind::Envelope {
        a: 10.0,
        b: 7.5,
        coefficient: 1.0,
    };
    let trace = criteria::criterion_trace(&kind, &blocks, &checkpoints, &tables).unwrap();
    let checks = trace.bound_ok.unwrap();
    assert!(checks.iter().all(|&ok| ok), "envelope checks failed: {checks:?}");

    report(9, "criterion-traces", format!("{} checkpoints", checkpoints.len()), started, 60.0);
}

/// Not a numbered criterion: freeze the oracle pre-run values so regressions
/// in the measure pipeline show up as drift here.
#[test]
fn regression_constants_hold() {
    let tables = ArithTables::build(1 << 14).unwrap();
    let budgets = Budgets::default();
    let half = ApproxProfile::constant(0.5).unwrap();
    let ratio = dioph::fourier::borel_cantelli_ratio(
        256,
        &half,
        true,
        &tables,
        dioph::fourier::IntersectionMode::Exact,
        &budgets,
    )
    .unwrap();
    assert!((ratio - 0.994649561655897).abs() < 1e-9, "bc ratio drifted: {ratio}");

    let scan = criteria::totient_liminf_scan(10, 10_000, &tables).unwrap();
    assert!((scan - 0.3034116978).abs() < 1e-9, "totient scan drifted: {scan}");

    let shifted = ApproxProfile::constant(0.5)
        .unwrap()
        .with_constant_shift(0.3)
        .unwrap();
    let mp = shifted.materialize(10_000).unwrap();
    let expected = counting::expected_count(&mp, &tables, 10_000);
    let frac =
        counting::tail_fraction(10_000, expected.powf(0.75), 500, 7, &shifted, &tables).unwrap();
    assert_eq!(frac, 0.0, "tail fraction regression drifted");

    // Truncated unions saturate: with f = 1/2 the first few sets already
    // cover most of the circle.
    let sets: Vec<_> = (1..=64u64)
        .map(|n| arcs_for(n, &half, true, &tables).unwrap())
        .collect();
    let covered = union_measure(&sets);
    assert!(covered > 0.99, "union of the first 64 sets only covers {covered}");
}
