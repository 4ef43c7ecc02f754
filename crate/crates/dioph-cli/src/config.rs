//! Plain-text key-value config files and their merge with flag overrides.
//!
//! The format is `key = value` per line, `#` comments. Recognized keys are
//! budget knobs and defaults for common flags; anything else is collected
//! into one aggregated validation report so a typo shows every problem at
//! once instead of the first.

use std::collections::BTreeMap;
use std::path::Path;

use dioph::Budgets;

#[derive(Debug, Default)]
pub struct FileConfig {
    pub out_dir: Option<String>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub sieve_limit: Option<u64>,
    pub budgets: Budgets,
}

impl FileConfig {
    pub fn new() -> Self {
        FileConfig {
            budgets: Budgets::default(),
            ..Default::default()
        }
    }

    pub fn load(path: &Path) -> Result<Self, Vec<String>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| vec![format!("config {}: {e}", path.display())])?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Vec<String>> {
        let mut cfg = FileConfig::new();
        let mut errors = Vec::new();
        let mut seen = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                errors.push(format!("line {}: expected `key = value`", idx + 1));
                continue;
            };
            let key = key.trim();
            let value = value.trim();
            if seen.insert(key.to_string(), idx).is_some() {
                errors.push(format!("line {}: duplicate key {key}", idx + 1));
                continue;
            }
            let mut bad = |what: &str| errors.push(format!("line {}: bad {what}: {value}", idx + 1));
            match key {
                "out_dir" => cfg.out_dir = Some(value.to_string()),
                "seed" => match value.parse() {
                    Ok(v) => cfg.seed = Some(v),
                    Err(_) => bad("seed"),
                },
                "tol" => match value.parse() {
                    Ok(v) => cfg.tol = Some(v),
                    Err(_) => bad("tol"),
                },
                "samples" => match value.parse() {
                    Ok(v) => cfg.samples = Some(v),
                    Err(_) => bad("samples"),
                },
                "sieve_limit" => match value.parse() {
                    Ok(v) => cfg.sieve_limit = Some(v),
                    Err(_) => bad("sieve_limit"),
                },
                "budget.table_ceiling" => match value.parse() {
                    Ok(v) => cfg.budgets.table_ceiling = v,
                    Err(_) => bad("budget.table_ceiling"),
                },
                "budget.pair_scan_limit" => match value.parse() {
                    Ok(v) => cfg.budgets.pair_scan_limit = v,
                    Err(_) => bad("budget.pair_scan_limit"),
                },
                "budget.series_term_budget" => match value.parse() {
                    Ok(v) => cfg.budgets.series_term_budget = v,
                    Err(_) => bad("budget.series_term_budget"),
                },
                "budget.literal_series_max" => match value.parse() {
                    Ok(v) => cfg.budgets.literal_series_max = v,
                    Err(_) => bad("budget.literal_series_max"),
                },
                "budget.gcd_scan_limit" => match value.parse() {
                    Ok(v) => cfg.budgets.gcd_scan_limit = v,
                    Err(_) => bad("budget.gcd_scan_limit"),
                },
                other => errors.push(format!("line {}: unknown key {other}", idx + 1)),
            }
        }
        if errors.is_empty() {
            Ok(cfg)
        } else {
            Err(errors)
        }
    }
}
