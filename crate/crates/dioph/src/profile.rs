//! Approximation profiles: the pair of sequences `(f, theta)` that drives
//! every experiment in the crate.
//!
//! `f(n)/n` is the radius of the arcs placed at the shifted rationals
//! `(m + theta(n))/n`. Profiles are pure and immutable; hot loops call
//! [`ApproxProfile::materialize`] once and then index dense arrays.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde_json::json;

use crate::{Error, Result};

/// Declared range constraint for `f`.
///
/// * `Standard`: `f(n)` in `[0, 1/2]` — the usual convention.
/// * `Extended`: `f(n)` in `[0, n/2)` for `n >= 2` and `[0, 1]` at `n = 1`,
///   where a radius of 1 simply covers the whole circle. Needed for counting
///   experiments where arcs may overlap.
/// * `Unrestricted`: any finite `f(n) >= 0`. Used by profiles that exist only
///   to be fed into scalar criteria, never into arc geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangeKind {
    Standard,
    Extended,
    Unrestricted,
}

impl fmt::Display for RangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RangeKind::Standard => "standard",
            RangeKind::Extended => "extended",
            RangeKind::Unrestricted => "unrestricted",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
struct TableData {
    f: Vec<f64>,
    shift: Vec<f64>,
}

#[derive(Clone, Debug)]
enum Family {
    Constant { value: f64 },
    Power { tau: f64 },
    FactorialBlocks { cap: u32 },
    Table { data: Arc<TableData> },
}

#[derive(Clone, Debug)]
enum Shift {
    Constant(f64),
    Table(Arc<TableData>),
}

const FACTORIALS: [u64; 21] = {
    let mut t = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        t[i] = t[i - 1] * i as u64;
        i += 1;
    }
    t
};

/// An approximation function and inhomogeneous shift, with family metadata.
#[derive(Clone, Debug)]
pub struct ApproxProfile {
    family: Family,
    shift: Shift,
    range: RangeKind,
}

impl ApproxProfile {
    /// Constant approximation function `f(n) = value`, shift 0.
    pub fn constant(value: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&value) {
            return Err(Error::validation(format!(
                "constant family: value {value} violates 0 <= value <= 1/2"
            )));
        }
        Ok(ApproxProfile {
            family: Family::Constant { value },
            shift: Shift::Constant(0.0),
            range: RangeKind::Standard,
        })
    }

    /// Power family `f(n) = n^(1 - tau)`, so the arc radius is `n^(-tau)`.
    ///
    /// Requires `tau > 1`. Note `f(1) = 1`: the single arc at `n = 1` has
    /// radius 1 and covers the circle, which is why the family carries the
    /// extended range.
    pub fn power(tau: f64) -> Result<Self> {
        if !(tau > 1.0) {
            return Err(Error::validation(format!(
                "power family: exponent tau = {tau} violates tau > 1"
            )));
        }
        Ok(ApproxProfile {
            family: Family::Power { tau },
            shift: Shift::Constant(0.0),
            range: RangeKind::Extended,
        })
    }

    /// Sparse family supported on factorial multiples inside dyadic blocks.
    ///
    /// On the block `[2^k, 2^(k+1))` the function is `ln(n)^10 / n` at
    /// multiples of `min(k, cap)!` and zero elsewhere (and zero for `n < 2`).
    /// The values exceed 1/2 at every desk scale, so the profile is declared
    /// unrestricted and is meant for the scalar criteria only.
    pub fn factorial_blocks(cap: u32) -> Result<Self> {
        if cap as usize >= FACTORIALS.len() {
            return Err(Error::validation(format!(
                "factorial-blocks family: cap {cap} violates cap <= 20"
            )));
        }
        Ok(ApproxProfile {
            family: Family::FactorialBlocks { cap },
            shift: Shift::Constant(0.0),
            range: RangeKind::Unrestricted,
        })
    }

    /// Loads a profile from a plain-text table: lines `n f(n) theta(n)` with
    /// strictly increasing `n`; values at absent `n` default to zero.
    pub fn from_table_str(text: &str) -> Result<Self> {
        let mut max_n = 0u64;
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::validation(format!(
                    "table line {}: expected `n f theta`, got {:?}",
                    idx + 1,
                    line
                )));
            }
            let n: u64 = fields[0].parse().map_err(|_| {
                Error::validation(format!("table line {}: bad n {:?}", idx + 1, fields[0]))
            })?;
            let f: f64 = fields[1].parse().map_err(|_| {
                Error::validation(format!("table line {}: bad f {:?}", idx + 1, fields[1]))
            })?;
            let th: f64 = fields[2].parse().map_err(|_| {
                Error::validation(format!("table line {}: bad theta {:?}", idx + 1, fields[2]))
            })?;
            if n == 0 || n <= max_n {
                return Err(Error::validation(format!(
                    "table line {}: n must be strictly increasing and positive",
                    idx + 1
                )));
            }
            if !(0.0..=0.5).contains(&th) {
                return Err(Error::validation(format!(
                    "table line {}: theta {th} violates 0 <= theta <= 1/2",
                    idx + 1
                )));
            }
            if !f.is_finite() || f < 0.0 {
                return Err(Error::validation(format!(
                    "table line {}: f {f} must be finite and nonnegative",
                    idx + 1
                )));
            }
            max_n = n;
            rows.push((n, f, th));
        }
        let mut f = vec![0.0; max_n as usize + 1];
        let mut shift = vec![0.0; max_n as usize + 1];
        for (n, fv, tv) in rows {
            f[n as usize] = fv;
            shift[n as usize] = tv;
        }
        let data = Arc::new(TableData { f, shift });
        Ok(ApproxProfile {
            family: Family::Table { data: data.clone() },
            shift: Shift::Table(data),
            range: RangeKind::Standard,
        })
    }

    pub fn from_table_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_table_str(&text)
    }

    /// Replaces the shift with a constant sequence.
    pub fn with_constant_shift(mut self, theta: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&theta) {
            return Err(Error::validation(format!(
                "shift {theta} violates 0 <= theta <= 1/2"
            )));
        }
        self.shift = Shift::Constant(theta);
        Ok(self)
    }

    /// Overrides the declared range constraint.
    pub fn with_range(mut self, range: RangeKind) -> Self {
        self.range = range;
        self
    }

    pub fn range(&self) -> RangeKind {
        self.range
    }

    pub fn family_tag(&self) -> &'static str {
        match self.family {
            Family::Constant { .. } => "constant",
            Family::Power { .. } => "power",
            Family::FactorialBlocks { .. } => "factorial-blocks",
            Family::Table { .. } => "table",
        }
    }

    /// Family parameters for manifests and report headers.
    pub fn params(&self) -> serde_json::Value {
        let shift = match &self.shift {
            Shift::Constant(t) => json!(t),
            Shift::Table(_) => json!("table"),
        };
        match &self.family {
            Family::Constant { value } => json!({
                "family": "constant", "value": value, "theta": shift,
                "range": self.range.to_string(),
            }),
            Family::Power { tau } => json!({
                "family": "power", "tau": tau, "theta": shift,
                "range": self.range.to_string(),
            }),
            Family::FactorialBlocks { cap } => json!({
                "family": "factorial-blocks", "cap": cap, "theta": shift,
                "range": self.range.to_string(),
            }),
            Family::Table { data } => json!({
                "family": "table", "rows": data.f.len().saturating_sub(1),
                "theta": shift, "range": self.range.to_string(),
            }),
        }
    }

    fn raw_f(&self, n: u64) -> f64 {
        match &self.family {
            Family::Constant { value } => *value,
            Family::Power { tau } => (n as f64).powf(1.0 - tau),
            Family::FactorialBlocks { cap } => {
                if n < 2 {
                    return 0.0;
                }
                let k = n.ilog2();
                let m = k.min(*cap) as usize;
                if n % FACTORIALS[m] == 0 {
                    (n as f64).ln().powi(10) / n as f64
                } else {
                    0.0
                }
            }
            Family::Table { data } => data.f.get(n as usize).copied().unwrap_or(0.0),
        }
    }

    fn check_range(&self, n: u64, f: f64) -> Result<()> {
        let ok = match self.range {
            RangeKind::Standard => (0.0..=0.5).contains(&f),
            RangeKind::Extended => {
                if n == 1 {
                    (0.0..=1.0).contains(&f)
                } else {
                    f >= 0.0 && f < n as f64 / 2.0
                }
            }
            RangeKind::Unrestricted => f >= 0.0 && f.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "f({n}) = {f} violates the {} range",
                self.range
            )))
        }
    }

    /// Evaluates `f(n)`, enforcing the declared range.
    pub fn f(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::validation("profiles are indexed from n = 1"));
        }
        let f = self.raw_f(n);
        self.check_range(n, f)?;
        Ok(f)
    }

    /// Arc radius `f(n)/n`.
    ///
    /// The power family computes `n^(-tau)` directly instead of dividing, so
    /// the radius compares bit-exactly against thresholds of the same shape.
    pub fn radius(&self, n: u64) -> Result<f64> {
        match &self.family {
            Family::Power { tau } => {
                self.f(n)?;
                Ok((n as f64).powf(-tau))
            }
            _ => Ok(self.f(n)? / n as f64),
        }
    }

    /// Evaluates `theta(n)`.
    pub fn shift(&self, n: u64) -> f64 {
        match &self.shift {
            Shift::Constant(t) => *t,
            Shift::Table(data) => data.shift.get(n as usize).copied().unwrap_or(0.0),
        }
    }

    /// Evaluates and caches `f`, `theta` and the radii densely up to `n_max`.
    pub fn materialize(&self, n_max: u64) -> Result<MaterializedProfile> {
        let len = n_max as usize + 1;
        let mut f = vec![0.0; len];
        let mut radius = vec![0.0; len];
        let mut shift = vec![0.0; len];
        for n in 1..=n_max {
            f[n as usize] = self.f(n)?;
            radius[n as usize] = self.radius(n)?;
            shift[n as usize] = self.shift(n);
        }
        Ok(MaterializedProfile { f, radius, shift })
    }
}

/// Dense, validated evaluation of a profile up to some `n_max`.
#[derive(Clone, Debug)]
pub struct MaterializedProfile {
    f: Vec<f64>,
    radius: Vec<f64>,
    shift: Vec<f64>,
}

impl MaterializedProfile {
    pub fn n_max(&self) -> u64 {
        self.f.len() as u64 - 1
    }

    #[inline]
    pub fn f(&self, n: u64) -> f64 {
        self.f[n as usize]
    }

    #[inline]
    pub fn radius(&self, n: u64) -> f64 {
        self.radius[n as usize]
    }

    #[inline]
    pub fn shift(&self, n: u64) -> f64 {
        self.shift[n as usize]
    }

    /// Replaces the shift column with a constant, for shift-invariance probes.
    pub fn override_shift(&mut self, theta: f64) -> Result<()> {
        if !(0.0..=0.5).contains(&theta) {
            return Err(Error::validation(format!(
                "shift {theta} violates 0 <= theta <= 1/2"
            )));
        }
        for v in self.shift.iter_mut() {
            *v = theta;
        }
        Ok(())
    }
}
