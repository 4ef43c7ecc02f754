//! Subcommand implementations. Thin orchestration over the library: build
//! tables, run the requested computation, write artifacts, write the
//! manifest.

use std::path::Path;

use serde_json::json;

use dioph::arcs::arcs_for;
use dioph::arith::{self, ArithTables};
use dioph::counting;
use dioph::criteria::{self, CriterionKind, DimensionFn, MaxWeight};
use dioph::dimension::{box_count_estimate, counting_dimension, BoxCountConfig};
use dioph::fourier;
use dioph::profile::ApproxProfile;


use crate::config::FileConfig;
use crate::output::{fmt_f64, RunWriter};
use crate::{Command, Failure};

pub fn run(command: &Command, cfg: &FileConfig, out_dir: &Path) -> Result<(), Failure> {
    match command {
        Command::Sieve { limit, dump } => sieve(cfg, out_dir, *limit, *dump),
        Command::Measure {
            n,
            n_to,
            full_fractions,
            profile,
        } => measure(cfg, out_dir, *n, n_to.unwrap_or(*n), !full_fractions, profile.build()?),
        Command::Intersect {
            n,
            m,
            tol,
            ratio_up_to,
            mode,
            full_fractions,
            profile,
        } => intersect(
            cfg,
            out_dir,
            *n,
            *m,
            tol.or(cfg.tol).unwrap_or(1e-6),
            *ratio_up_to,
            mode,
            !full_fractions,
            profile.build()?,
        ),
        Command::Count {
            n_max,
            samples,
            seed,
            beta_exponent,
            profile,
        } => count(
            cfg,
            out_dir,
            *n_max,
            samples.or(cfg.samples).unwrap_or(200),
            seed.or(cfg.seed).unwrap_or(0),
            *beta_exponent,
            profile.build()?,
        ),
        Command::Dimension {
            n_max,
            alpha_max,
            alpha_step,
            growth_threshold,
            boxes,
            box_schedule,
            full_fractions,
            shift_override,
            profile,
        } => dimension(
            cfg,
            out_dir,
            *n_max,
            *alpha_max,
            *alpha_step,
            *growth_threshold,
            *boxes,
            box_schedule.as_deref(),
            !full_fractions,
            *shift_override,
            profile.build()?,
        ),
        Command::Criteria {
            kind,
            checkpoints,
            h_exponent,
            weight,
            env_a,
            env_b,
            env_coeff,
            profile,
        } => {
            let kind = parse_kind(kind, *h_exponent, weight.as_deref(), *env_a, *env_b, *env_coeff)?;
            criteria_cmd(cfg, out_dir, kind, checkpoints, profile.build()?)
        }
        Command::Bounds { suite, quick } => bounds(cfg, out_dir, suite, *quick),
        Command::Verify { full } => verify(cfg, out_dir, *full),
    }
}

fn parse_checkpoints(spec: &str) -> Result<Vec<u64>, Failure> {
    let mut issues = Vec::new();
    let points: Vec<u64> = if let Some(rest) = spec.strip_prefix("dyadic:") {
        match rest.split_once(':') {
            Some((lo, hi)) => match (lo.parse::<u32>(), hi.parse::<u32>()) {
                (Ok(lo), Ok(hi)) if lo <= hi && hi < 63 => {
                    (lo..=hi).map(|j| 1u64 << j).collect()
                }
                _ => {
                    issues.push(format!("bad dyadic checkpoint range {rest:?}"));
                    Vec::new()
                }
            },
            None => {
                issues.push("dyadic checkpoints need the form dyadic:LO:HI".to_string());
                Vec::new()
            }
        }
    } else {
        spec.split(',')
            .filter_map(|s| {
                let s = s.trim();
                match s.parse() {
                    Ok(v) => Some(v),
                    Err(_) => {
                        issues.push(format!("bad checkpoint {s:?}"));
                        None
                    }
                }
            })
            .collect()
    };
    if !issues.is_empty() {
        return Err(Failure::Validation(issues));
    }
    Ok(points)
}

fn parse_kind(
    kind: &str,
    h_exponent: Option<f64>,
    weight: Option<&str>,
    env_a: Option<f64>,
    env_b: Option<f64>,
    env_coeff: f64,
) -> Result<CriterionKind, Failure> {
    let mut issues = Vec::new();
    let parsed = match kind {
        "reduced-second-moment" => Some(CriterionKind::ReducedSecondMoment),
        "reduced-log-power" => Some(CriterionKind::ReducedLogPower),
        "all-fractions" => Some(CriterionKind::AllFractions),
        "positive-measure-pair" => Some(CriterionKind::PositiveMeasurePair),
        "dimension-function" => {
            let exponent = h_exponent.unwrap_or_else(|| {
                issues.push("dimension-function requires --h-exponent".to_string());
                f64::NAN
            });
            let weight = match weight.unwrap_or("n") {
                "n" => MaxWeight::N,
                "phi" => MaxWeight::Phi,
                other => {
                    issues.push(format!("unknown --weight {other:?} (use n or phi)"));
                    MaxWeight::N
                }
            };
            if !(exponent > 0.0) && issues.is_empty() {
                issues.push(format!("--h-exponent {exponent} must be positive"));
            }
            Some(CriterionKind::DimensionFunction {
                h: DimensionFn::Power { exponent },
                weight,
            })
        }
        "envelope" => {
            let (Some(a), Some(b)) = (env_a, env_b) else {
                issues.push("envelope requires --env-a and --env-b".to_string());
                return Err(Failure::Validation(issues));
            };
            Some(CriterionKind::Envelope {
                a,
                b,
                coefficient: env_coeff,
            })
        }
        other => {
            issues.push(format!("unknown criterion kind {other:?}"));
            None
        }
    };
    match (parsed, issues.is_empty()) {
        (Some(kind), true) => Ok(kind),
        _ => Err(Failure::Validation(issues)),
    }
}

fn sieve(cfg: &FileConfig, out_dir: &Path, limit: Option<u64>, dump: u64) -> Result<(), Failure> {
    let limit = limit.or(cfg.sieve_limit).unwrap_or(1_000_000);
    let mut writer = RunWriter::new(out_dir, "sieve")?;
    let tables = ArithTables::build_with_ceiling(limit, cfg.budgets.table_ceiling)?;

    let primes = tables.primes().count();
    let totient_sum: u64 = (1..=limit).map(|n| tables.totient(n)).sum();
    writer.write_json(
        "sieve.json",
        &json!({
            "limit": limit,
            "primes": primes,
            "totient_sum": totient_sum,
            // sum phi(n) ~ (3/pi^2) N^2; report the normalized value.
            "totient_density": totient_sum as f64 / (limit as f64).powi(2),
        }),
    )?;

    if dump > 0 {
        let rows: Vec<String> = (1..=dump.min(limit))
            .map(|n| {
                format!(
                    "{n},{},{},{}",
                    tables.totient(n),
                    tables.divisor_count(n),
                    tables.mobius(n)
                )
            })
            .collect();
        writer.write_csv("tables.csv", "n,phi,d,mu", &rows)?;
    }
    writer.finish(json!({"limit": limit, "dump": dump, "budgets": cfg.budgets}))?;
    Ok(())
}

fn measure(
    cfg: &FileConfig,
    out_dir: &Path,
    n_from: u64,
    n_to: u64,
    reduced: bool,
    profile: ApproxProfile,
) -> Result<(), Failure> {
    if n_from == 0 || n_from > n_to {
        return Err(Failure::Validation(vec![format!(
            "need 1 <= --n <= --n-to, got {n_from}..{n_to}"
        )]));
    }
    let mut writer = RunWriter::new(out_dir, "measure")?;
    let tables = ArithTables::build_with_ceiling(n_to, cfg.budgets.table_ceiling)?;
    let mut rows = Vec::new();
    for n in n_from..=n_to {
        let set = arcs_for(n, &profile, reduced, &tables)?;
        let predicted = if reduced {
            2.0 * profile.radius(n)? * tables.totient(n) as f64
        } else {
            2.0 * profile.f(n)?
        };
        rows.push(format!(
            "{n},{},{},{},{},{}",
            tables.totient(n),
            fmt_f64(profile.radius(n)?),
            set.arcs().len(),
            fmt_f64(set.measure()),
            fmt_f64(predicted),
        ));
    }
    writer.write_csv("measures.csv", "n,phi,radius,arcs,measure,predicted", &rows)?;
    writer.finish(json!({
        "n_from": n_from, "n_to": n_to, "reduced": reduced,
        "profile": profile.params(), "budgets": cfg.budgets,
    }))?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn intersect(
    cfg: &FileConfig,
    out_dir: &Path,
    n: Option<u64>,
    m: Option<u64>,
    tol: f64,
    ratio_up_to: Option<u64>,
    mode: &str,
    reduced: bool,
    profile: ApproxProfile,
) -> Result<(), Failure> {
    let mode = match mode {
        "exact" => fourier::IntersectionMode::Exact,
        "series" => fourier::IntersectionMode::Series,
        other => {
            return Err(Failure::Validation(vec![format!(
                "unknown --mode {other:?} (use exact or series)"
            )]))
        }
    };
    if n.is_none() != m.is_none() {
        return Err(Failure::Validation(vec![
            "--n and --m must be given together".to_string(),
        ]));
    }
    if n.is_none() && ratio_up_to.is_none() {
        return Err(Failure::Validation(vec![
            "need a pair (--n, --m) or --ratio-up-to".to_string(),
        ]));
    }
    let mut writer = RunWriter::new(out_dir, "intersect")?;
    let top = n.unwrap_or(1).max(m.unwrap_or(1)).max(ratio_up_to.unwrap_or(1));
    let tables = ArithTables::build_with_ceiling(top, cfg.budgets.table_ceiling)?;

    let mut result = serde_json::Map::new();
    result.insert("tol".into(), json!(tol));
    if let (Some(n), Some(m)) = (n, m) {
        let series = fourier::intersection_series(n, m, &profile, tol, &tables, &cfg.budgets)?;
        let exact = arcs_for(n, &profile, true, &tables)?
            .intersect(&arcs_for(m, &profile, true, &tables)?)
            .measure();
        result.insert("n".into(), json!(n));
        result.insert("m".into(), json!(m));
        result.insert("difference".into(), json!((series.value - exact).abs()));
        result.insert("series".into(), serde_json::to_value(&series).unwrap());
        result.insert("exact_sweep".into(), json!(exact));
        result.insert(
            "conservative_truncation".into(),
            json!(fourier::conservative_truncation(n, m, &tables)?.to_string()),
        );
    }
    if let Some(up_to) = ratio_up_to {
        let ratio =
            fourier::borel_cantelli_ratio(up_to, &profile, reduced, &tables, mode, &cfg.budgets)?;
        result.insert(
            "borel_cantelli".into(),
            json!({"n_max": up_to, "mode": mode, "reduced": reduced, "ratio": ratio}),
        );
    }
    writer.write_json("intersect.json", &serde_json::Value::Object(result))?;
    writer.finish(json!({
        "n": n, "m": m, "tol": tol, "ratio_up_to": ratio_up_to,
        "mode": mode, "reduced": reduced,
        "profile": profile.params(), "budgets": cfg.budgets,
    }))?;
    Ok(())
}

fn count(
    cfg: &FileConfig,
    out_dir: &Path,
    n_max: u64,
    samples: usize,
    seed: u64,
    beta_exponent: Option<f64>,
    profile: ApproxProfile,
) -> Result<(), Failure> {
    let mut writer = RunWriter::new(out_dir, "count")?;
    let tables = ArithTables::build_with_ceiling(n_max, cfg.budgets.table_ceiling)?;
    let xs = counting::sample_points(samples, seed);
    let reports = counting::count_batch(&xs, n_max, &profile, &tables)?;
    let rows: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{}",
                fmt_f64(r.x),
                r.n_max,
                r.solutions,
                fmt_f64(r.expected),
                r.ratio.map(fmt_f64).unwrap_or_default()
            )
        })
        .collect();
    writer.write_csv("counts.csv", "x,N,S,E_N,ratio", &rows)?;
    let summary = counting::summarize(&reports);
    let tail = match beta_exponent {
        Some(rho) => {
            if !(0.0..=1.0).contains(&rho) {
                return Err(Failure::Validation(vec![format!(
                    "--beta-exponent {rho} should lie in (0, 1]"
                )]));
            }
            let beta = summary.expected.powf(rho);
            let fraction = counting::tail_fraction(n_max, beta, samples, seed, &profile, &tables)?;
            json!({"rho": rho, "beta": beta, "fraction": fraction})
        }
        None => serde_json::Value::Null,
    };
    writer.write_json(
        "count_summary.json",
        &json!({
            "summary": summary,
            "tail": tail,
            "seed": seed,
            "rng": counting::RNG_ALGORITHM,
        }),
    )?;
    writer.finish(json!({
        "n_max": n_max, "samples": samples, "seed": seed,
        "beta_exponent": beta_exponent,
        "profile": profile.params(), "budgets": cfg.budgets,
    }))?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn dimension(
    cfg: &FileConfig,
    out_dir: &Path,
    n_max: u64,
    alpha_max: f64,
    alpha_step: f64,
    growth_threshold: u64,
    boxes: bool,
    box_schedule: Option<&str>,
    reduced: bool,
    shift_override: Option<f64>,
    profile: ApproxProfile,
) -> Result<(), Failure> {
    if !(alpha_step > 0.0) || alpha_max < 1.0 {
        return Err(Failure::Validation(vec![
            "need --alpha-step > 0 and --alpha-max >= 1".to_string(),
        ]));
    }
    let mut writer = RunWriter::new(out_dir, "dimension")?;
    let mut grid = Vec::new();
    let mut alpha = 1.0;
    while alpha <= alpha_max + 1e-12 {
        grid.push(alpha);
        alpha += alpha_step;
    }
    let mut report = counting_dimension(&profile, n_max, &grid, growth_threshold)?;

    let alpha_rows: Vec<String> = report
        .alpha_grid
        .iter()
        .zip(report.delta_hat.iter().zip(&report.kappa_hat))
        .map(|(a, (d, k))| format!("{},{},{}", fmt_f64(*a), fmt_f64(*d), fmt_f64(*k)))
        .collect();
    writer.write_csv("alpha.csv", "alpha,delta_hat,kappa_hat", &alpha_rows)?;

    if boxes {
        let mut config = BoxCountConfig {
            reduced,
            shift_override,
            ..BoxCountConfig::default()
        };
        if let Some(spec) = box_schedule {
            config.schedule = parse_checkpoints(spec)?;
        }
        let top = *config.schedule.last().ok_or_else(|| {
            Failure::Validation(vec!["box schedule must be nonempty".to_string()])
        })?;
        let tables = ArithTables::build_with_ceiling(top, cfg.budgets.table_ceiling)?;
        let boxes_report = box_count_estimate(&profile, &config, &tables)?;
        let rows: Vec<String> = boxes_report
            .points
            .iter()
            .map(|p| {
                format!(
                    "{},{},{},{}",
                    p.block_end,
                    p.resolution_bits,
                    p.cells,
                    fmt_f64((p.cells as f64).ln())
                )
            })
            .collect();
        writer.write_csv("boxcount.csv", "block_end,resolution_bits,cells,ln_cells", &rows)?;
        report.box_count_slope = Some(boxes_report.slope);
    }

    writer.write_json("dimension.json", &serde_json::to_value(&report).unwrap())?;
    writer.finish(json!({
        "n_max": n_max, "alpha_max": alpha_max, "alpha_step": alpha_step,
        "growth_threshold": growth_threshold, "boxes": boxes,
        "reduced": reduced, "shift_override": shift_override,
        "profile": profile.params(), "budgets": cfg.budgets,
    }))?;
    Ok(())
}

fn criteria_cmd(
    cfg: &FileConfig,
    out_dir: &Path,
    kind: CriterionKind,
    checkpoints: &str,
    profile: ApproxProfile,
) -> Result<(), Failure> {
    let checkpoints = parse_checkpoints(checkpoints)?;
    let top = checkpoints.last().copied().unwrap_or(0);
    let mut writer = RunWriter::new(out_dir, "criteria")?;
    let tables = ArithTables::build_with_ceiling(top.max(2), cfg.budgets.table_ceiling)?;
    let trace = criteria::criterion_trace(&kind, &profile, &checkpoints, &tables)?;

    let mut header = "N,quotient".to_string();
    if trace.secondary.is_some() {
        header.push_str(",quotient_secondary");
    }
    if trace.bound_ok.is_some() {
        header.push_str(",bound_ok");
    }
    let rows: Vec<String> = trace
        .checkpoints
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let mut row = format!("{n},{}", fmt_f64(trace.quotients[i]));
            if let Some(secondary) = &trace.secondary {
                row.push_str(&format!(",{}", fmt_f64(secondary[i])));
            }
            if let Some(bound_ok) = &trace.bound_ok {
                row.push_str(&format!(",{}", bound_ok[i]));
            }
            row
        })
        .collect();
    writer.write_csv("trace.csv", &header, &rows)?;
    writer.write_json(
        "trace.json",
        &json!({
            "trace": trace,
            "trend_thresholds": {
                "diverging": criteria::DIVERGING_FACTOR,
                "bounded": criteria::BOUNDED_FACTOR,
            },
        }),
    )?;
    writer.finish(json!({
        "kind": kind, "checkpoints": checkpoints,
        "profile": profile.params(), "budgets": cfg.budgets,
    }))?;
    Ok(())
}

fn bounds(cfg: &FileConfig, out_dir: &Path, suite: &str, quick: bool) -> Result<(), Failure> {
    let known = [
        "ramanujan-mean",
        "divisor-square",
        "divisor-gcd",
        "mertens",
        "totient",
        "leveque",
        "all",
    ];
    if !known.contains(&suite) {
        return Err(Failure::Validation(vec![format!(
            "unknown suite {suite:?}; expected one of {known:?}"
        )]));
    }
    let mut writer = RunWriter::new(out_dir, "bounds")?;
    let table_limit = if quick { 1 << 14 } else { 1 << 20 };
    let tables = ArithTables::build_with_ceiling(table_limit, cfg.budgets.table_ceiling)?;
    let mut verdicts = serde_json::Map::new();
    let want = |name: &str| suite == "all" || suite == name;

    if want("ramanujan-mean") {
        let ms: &[u64] = if quick { &[100, 1000] } else { &[100, 1000, 10000] };
        let mut rows = Vec::new();
        let mut per_m = Vec::new();
        for &m in ms {
            let mut vmax = 0.0f64;
            for k in 1..=100u64 {
                let v = criteria::ramanujan_mean_ratio(k, m, &tables)?;
                rows.push(format!("{k},{m},{}", fmt_f64(v)));
                vmax = vmax.max(v);
            }
            per_m.push(vmax);
        }
        writer.write_csv("ramanujan_mean.csv", "k,m,ratio", &rows)?;
        verdicts.insert(
            "ramanujan-mean".into(),
            json!({"max": per_m.iter().cloned().fold(0.0f64, f64::max),
                   "no_blowup": criteria::no_blowup(&per_m)}),
        );
    }
    if want("divisor-square") {
        let hi = if quick { 14 } else { 20 };
        let values: Vec<f64> = (4..=hi)
            .map(|j| criteria::divisor_square_log_ratio(1u64 << j, &tables))
            .collect::<dioph::Result<_>>()?;
        let rows: Vec<String> = (4..=hi)
            .zip(&values)
            .map(|(j, v)| format!("{},{}", 1u64 << j, fmt_f64(*v)))
            .collect();
        writer.write_csv("divisor_square.csv", "n,ratio", &rows)?;
        verdicts.insert(
            "divisor-square".into(),
            json!({"no_blowup": criteria::no_blowup(&values)}),
        );
    }
    if want("divisor-gcd") {
        let hi = if quick { 10 } else { 13 };
        let values: Vec<f64> = (1..=hi)
            .map(|j| criteria::divisor_gcd_sum_ratio(1u64 << j, &tables, &cfg.budgets))
            .collect::<dioph::Result<_>>()?;
        let rows: Vec<String> = (1..=hi)
            .zip(&values)
            .map(|(j, v)| format!("{},{}", 1u64 << j, fmt_f64(*v)))
            .collect();
        writer.write_csv("divisor_gcd.csv", "m,ratio", &rows)?;
        verdicts.insert(
            "divisor-gcd".into(),
            json!({"no_blowup": criteria::no_blowup(&values)}),
        );
    }
    if want("mertens") {
        let hi: u32 = if quick { 14 } else { 20 };
        let values: Vec<f64> = (2..=hi)
            .map(|j| criteria::mertens_ratio(1u64 << j))
            .collect::<dioph::Result<_>>()?;
        let rows: Vec<String> = (2..=hi)
            .zip(&values)
            .map(|(j, v)| format!("{},{}", 1u64 << j, fmt_f64(*v)))
            .collect();
        writer.write_csv("mertens.csv", "m,ratio", &rows)?;
        let last = *values.last().unwrap();
        verdicts.insert(
            "mertens".into(),
            json!({
                "limit": criteria::MERTENS_LIMIT,
                "final_ratio": last,
                "relative_deviation": (last - criteria::MERTENS_LIMIT).abs() / criteria::MERTENS_LIMIT,
                "no_blowup": criteria::no_blowup(&values),
            }),
        );
    }
    if want("totient") {
        let hi = if quick { 10_000 } else { 1_000_000 };
        let min = criteria::totient_liminf_scan(10, hi, &tables)?;
        verdicts.insert(
            "totient".into(),
            json!({"window": [10, hi], "min": min, "floor": 0.25, "ok": min > 0.25}),
        );
    }
    if want("leveque") {
        let profile = ApproxProfile::constant(0.5).map_err(Failure::Lib)?;
        let top = if quick { 64 } else { 200 };
        let mut ok = true;
        for n in 1..=top {
            for m in 1..=top {
                ok &= criteria::leveque_bound_check(n, m, &profile, &tables)?;
            }
        }
        verdicts.insert(
            "leveque".into(),
            json!({"grid": top, "violations": if ok { 0 } else { 1 }}),
        );
        if !ok {
            return Err(Failure::Lib(dioph::Error::consistency(
                "LeVeque bound violated on the grid",
            )));
        }
    }

    writer.write_json("bounds.json", &serde_json::Value::Object(verdicts))?;
    writer.finish(json!({"suite": suite, "quick": quick, "budgets": cfg.budgets}))?;
    Ok(())
}

fn verify(cfg: &FileConfig, out_dir: &Path, full: bool) -> Result<(), Failure> {
    use rand::{Rng, SeedableRng};
    let mut writer = RunWriter::new(out_dir, "verify")?;
    let mut results = Vec::new();
    let scale = |quick: u64, fullv: u64| if full { fullv } else { quick };

    // Ramanujan closed form against the exponential sum.
    {
        let top = scale(100, 200);
        let kmax = scale(200, 400) as i64;
        let tables = ArithTables::build_with_ceiling(top, cfg.budgets.table_ceiling)?;
        let mut cases = 0u64;
        for n in 1..=top {
            for k in 0..=kmax {
                let closed = arith::ramanujan(n, k, &tables)?;
                let direct = arith::ramanujan_direct(n, k)?;
                if closed != direct {
                    return Err(Failure::Lib(dioph::Error::consistency(format!(
                        "ramanujan mismatch at ({n},{k}): {closed} vs {direct}"
                    ))));
                }
                cases += 1;
            }
        }
        println!("ok ramanujan-cross-check ({cases} cases)");
        results.push(json!({"battery": "ramanujan-cross-check", "cases": cases}));
    }

    // Divisor-square identity.
    {
        let top = scale(20_000, 100_000);
        for k in 1..=top {
            if !arith::divisor_square_identity(k) {
                return Err(Failure::Lib(dioph::Error::consistency(format!(
                    "divisor-square identity fails at {k}"
                ))));
            }
        }
        println!("ok divisor-square-identity (k <= {top})");
        results.push(json!({"battery": "divisor-square-identity", "cases": top}));
    }

    // Series against the exact sweep on random admissible pairs.
    {
        let tuples = scale(100, 500);
        let tables = ArithTables::build_with_ceiling(200, cfg.budgets.table_ceiling)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(401);
        let profile = random_admissible(200, 402);
        for _ in 0..tuples {
            let n = rng.random_range(1..=200u64);
            let m = rng.random_range(1..=200u64);
            let series =
                fourier::intersection_series(n, m, &profile, 1e-6, &tables, &cfg.budgets)?;
            let exact = arcs_for(n, &profile, true, &tables)?
                .intersect(&arcs_for(m, &profile, true, &tables)?)
                .measure();
            if (series.value - exact).abs() > series.tail_bound.min(1e-6) {
                return Err(Failure::Lib(dioph::Error::consistency(format!(
                    "series/sweep mismatch at ({n},{m})"
                ))));
            }
        }
        println!("ok series-vs-sweep ({tuples} pairs)");
        results.push(json!({"battery": "series-vs-sweep", "cases": tuples}));
    }

    // Arc measure identity.
    {
        let top = scale(2_000, 10_000);
        let tables = ArithTables::build_with_ceiling(top, cfg.budgets.table_ceiling)?;
        let profile = random_admissible(top, 403);
        for n in 1..=top {
            let set = arcs_for(n, &profile, true, &tables)?;
            let predicted = 2.0 * profile.radius(n)? * tables.totient(n) as f64;
            if (set.measure() - predicted).abs() >= 1e-12 {
                return Err(Failure::Lib(dioph::Error::consistency(format!(
                    "measure identity fails at n = {n}"
                ))));
            }
        }
        println!("ok measure-identity (n <= {top})");
        results.push(json!({"battery": "measure-identity", "cases": top}));
    }

    // LeVeque bound on random tuples.
    {
        let tuples = scale(200, 1_000);
        let tables = ArithTables::build_with_ceiling(300, cfg.budgets.table_ceiling)?;
        let profile = random_admissible(300, 404);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(405);
        for _ in 0..tuples {
            let n = rng.random_range(1..=300u64);
            let m = rng.random_range(1..=300u64);
            if !criteria::leveque_bound_check(n, m, &profile, &tables)? {
                return Err(Failure::Lib(dioph::Error::consistency(format!(
                    "bound violated at ({n},{m})"
                ))));
            }
        }
        println!("ok leveque-bound ({tuples} tuples)");
        results.push(json!({"battery": "leveque-bound", "cases": tuples}));
    }

    // Fast counting against the brute-force double loop.
    {
        let tuples = scale(20, 100);
        let top = scale(300, 500);
        let tables = ArithTables::build_with_ceiling(top, cfg.budgets.table_ceiling)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(406);
        let profile = random_admissible(top, 407);
        for _ in 0..tuples {
            let n_max = rng.random_range(1..=top);
            let x: f64 = rng.random();
            let fast = counting::count_solutions(x, n_max, &profile, &tables)?.solutions;
            let mut brute = 0u64;
            for n in 1..=n_max {
                let f = profile.f(n)?;
                let theta = profile.shift(n);
                for m in 1..=n {
                    if num_integer::gcd(m, n) == 1 {
                        let d = (x - (m as f64 + theta) / n as f64).rem_euclid(1.0);
                        if d.min(1.0 - d) < f / n as f64 {
                            brute += 1;
                        }
                    }
                }
            }
            if fast != brute {
                return Err(Failure::Lib(dioph::Error::consistency(format!(
                    "count mismatch at x = {x}, N = {n_max}: {fast} vs {brute}"
                ))));
            }
        }
        println!("ok count-brute-force ({tuples} points)");
        results.push(json!({"battery": "count-brute-force", "cases": tuples}));
    }

    writer.write_json("verify.json", &json!({"full": full, "batteries": results}))?;
    writer.finish(json!({"full": full, "budgets": cfg.budgets}))?;
    Ok(())
}

/// Random admissible profile text: f, theta uniform in [0, 1/2].
fn random_admissible(n_max: u64, seed: u64) -> ApproxProfile {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for n in 1..=n_max {
        let f: f64 = rng.random_range(0.0..=0.5);
        let theta: f64 = rng.random_range(0.0..=0.5);
        text.push_str(&format!("{n} {f} {theta}\n"));
    }
    ApproxProfile::from_table_str(&text).expect("generated table is valid")
}
