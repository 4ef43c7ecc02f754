//! CLI-level acceptance: determinism of the artifacts (criterion 10) and the
//! exit-code contract.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

fn dioph() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dioph"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run_ok(args: &[&str], out: &Path) {
    let status = dioph()
        .arg("--out")
        .arg(out)
        .args(args)
        .status()
        .expect("spawn dioph");
    assert!(status.success(), "dioph {args:?} failed: {status}");
}

#[test]
fn c10_identical_runs_reproduce_identical_csvs() {
    let started = Instant::now();
    let tmp = tempfile::tempdir().unwrap();

    // criterion trace
    let crit = [
        "criteria",
        "--kind",
        "reduced-second-moment",
        "--checkpoints",
        "dyadic:4:12",
        "--family",
        "constant",
        "--value",
        "0.5",
        "--theta",
        "0.25",
    ];
    // counting run with a seed
    let count = [
        "count",
        "--n-max",
        "4000",
        "--samples",
        "60",
        "--seed",
        "99",
        "--family",
        "constant",
        "--value",
        "0.5",
    ];
    // dimension run with box counting
    let dim = [
        "dimension",
        "--family",
        "power",
        "--tau",
        "3",
        "--n-max",
        "16384",
        "--boxes",
    ];

    for (name, args, files) in [
        ("criteria", &crit[..], &["trace.csv", "trace.json"][..]),
        ("count", &count[..], &["counts.csv", "count_summary.json"][..]),
        ("dimension", &dim[..], &["alpha.csv", "boxcount.csv", "dimension.json"][..]),
    ] {
        let a = tmp.path().join(format!("{name}-a"));
        let b = tmp.path().join(format!("{name}-b"));
        run_ok(args, &a);
        run_ok(args, &b);
        for file in files {
            assert_eq!(
                read(&a, file),
                read(&b, file),
                "{name}: {file} differs between identical runs"
            );
        }
    }
    println!(
        "acceptance 10 deterministic-artifacts: PASS (3 commands, {:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    let tmp = tempfile::tempdir().unwrap();

    // 0: a good run.
    let status = dioph()
        .arg("--out")
        .arg(tmp.path().join("ok"))
        .args(["intersect", "--n", "2", "--m", "3", "--family", "constant", "--value", "0.5"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    // 2: validation (unknown criterion kind).
    let out = dioph()
        .arg("--out")
        .arg(tmp.path().join("bad"))
        .args(["criteria", "--kind", "nope", "--checkpoints", "16,32"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("\"validation\""), "stderr: {stderr}");

    // 2: aggregated config errors report every problem.
    let cfg = tmp.path().join("broken.conf");
    std::fs::write(&cfg, "seed = x\nunknown_key = 1\n").unwrap();
    let out = dioph()
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(tmp.path().join("cfg"))
        .args(["sieve", "--limit", "100"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is machine-readable JSON");
    assert_eq!(report["error"]["messages"].as_array().unwrap().len(), 2);

    // 3: budget.
    let cfg = tmp.path().join("tiny.conf");
    std::fs::write(&cfg, "budget.series_term_budget = 1000\n").unwrap();
    let out = dioph()
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(tmp.path().join("budget"))
        .args(["intersect", "--n", "100", "--m", "99", "--tol", "1e-12"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_battery_passes_and_writes_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("verify");
    let out = dioph().arg("--out").arg(&out_dir).arg("verify").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    for battery in [
        "ramanujan-cross-check",
        "divisor-square-identity",
        "series-vs-sweep",
        "measure-identity",
        "leveque-bound",
        "count-brute-force",
    ] {
        assert!(stdout.contains(&format!("ok {battery}")), "missing {battery}");
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&read(&out_dir, "manifest.json")).unwrap();
    assert_eq!(manifest["command"], "verify");
    assert!(manifest["wall_time_s"].as_f64().unwrap() > 0.0);
    assert_eq!(manifest["rng"], dioph::counting::RNG_ALGORITHM);
}

#[test]
fn measure_csv_has_the_documented_schema() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("measure");
    run_ok(
        &["measure", "--n", "1", "--n-to", "32", "--family", "constant", "--value", "0.5"],
        &out_dir,
    );
    let text = String::from_utf8(read(&out_dir, "measures.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,phi,radius,arcs,measure,predicted"));
    assert_eq!(lines.count(), 32);
}

#[test]
fn bounds_quick_suite_reports_verdicts() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("bounds");
    run_ok(&["bounds", "--suite", "all", "--quick"], &out_dir);
    let verdicts: serde_json::Value = serde_json::from_slice(&read(&out_dir, "bounds.json")).unwrap();
    assert_eq!(verdicts["divisor-square"]["no_blowup"], true);
    assert_eq!(verdicts["totient"]["ok"], true);
    assert_eq!(verdicts["leveque"]["violations"], 0);
}
