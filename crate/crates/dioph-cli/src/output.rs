//! Output plumbing: CSV writers, result JSON and the run manifest.
//!
//! CSVs are the deterministic artifacts (identical config and seed must
//! reproduce them byte for byte); the manifest carries wall time and is
//! explicitly excluded from that guarantee. Floats print with Rust's
//! shortest-roundtrip formatting, which is stable across runs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

pub struct RunWriter {
    dir: PathBuf,
    command: String,
    outputs: Vec<String>,
    started: Instant,
}

impl RunWriter {
    pub fn new(dir: &Path, command: &str) -> std::io::Result<RunWriter> {
        fs::create_dir_all(dir)?;
        Ok(RunWriter {
            dir: dir.to_path_buf(),
            command: command.to_string(),
            outputs: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn write_csv(&mut self, name: &str, header: &str, rows: &[String]) -> std::io::Result<()> {
        let path = self.dir.join(name);
        let mut file = fs::File::create(&path)?;
        writeln!(file, "{header}")?;
        for row in rows {
            writeln!(file, "{row}")?;
        }
        self.outputs.push(name.to_string());
        Ok(())
    }

    pub fn write_json(&mut self, name: &str, value: &Value) -> std::io::Result<()> {
        let path = self.dir.join(name);
        let mut file = fs::File::create(&path)?;
        serde_json::to_writer_pretty(&mut file, value)?;
        writeln!(file)?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    /// Writes `manifest.json`: everything needed to re-execute the run, plus
    /// wall time. Call last.
    pub fn finish(self, config_echo: Value) -> std::io::Result<()> {
        let outputs = self.outputs;
        let manifest = json!({
            "schema": 1,
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "rng": dioph::counting::RNG_ALGORITHM,
            "config": config_echo,
            "outputs": outputs,
            "wall_time_s": self.started.elapsed().as_secs_f64(),
        });
        let path = self.dir.join("manifest.json");
        let mut file = fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut file, &manifest)?;
        writeln!(file)?;
        Ok(())
    }
}

/// Shortest-roundtrip float formatting for CSV cells.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
