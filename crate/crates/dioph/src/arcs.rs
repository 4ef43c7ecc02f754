//! Approximation sets as exact arc unions on the circle R/Z.
//!
//! All set arithmetic happens on the circle, so wraparound needs no special
//! cases downstream: a wrapping arc is split at 0 during canonicalization.
//! Arcs are stored half-open and sorted; membership at an exact endpoint is
//! resolved as outside, matching the strict inequality that defines the sets.
//! Endpoints are doubles, merged with tolerance 1e-14; measures are good to
//! 1e-12 absolute.

use crate::arith::ArithTables;
use crate::profile::ApproxProfile;
use crate::Result;

/// Endpoint-equality tolerance when merging arcs.
const MERGE_EPS: f64 = 1e-14;

/// One arc `[lo, hi)` with `0 <= lo < hi <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct CircleArc {
    pub lo: f64,
    pub hi: f64,
}

/// A finite union of arcs in canonical form: sorted by left endpoint,
/// pairwise disjoint, all inside `[0, 1]`.
#[derive(Clone, Debug, Default)]
pub struct ArcSet {
    arcs: Vec<CircleArc>,
    total: f64,
}

impl ArcSet {
    pub fn empty() -> ArcSet {
        ArcSet::default()
    }

    pub fn full_circle() -> ArcSet {
        ArcSet {
            arcs: vec![CircleArc { lo: 0.0, hi: 1.0 }],
            total: 1.0,
        }
    }

    /// Builds a canonical set from arcs given as `(center, radius)`, both
    /// interpreted mod 1. Radii of 1/2 or more cover the whole circle.
    pub fn from_centered(items: impl IntoIterator<Item = (f64, f64)>) -> ArcSet {
        let mut raw = Vec::new();
        for (center, radius) in items {
            if radius <= 0.0 {
                continue;
            }
            if radius >= 0.5 {
                return ArcSet::full_circle();
            }
            let c = center.rem_euclid(1.0);
            raw.push((c - radius, c + radius));
        }
        ArcSet::canonicalize(raw)
    }

    /// Builds a canonical set from raw intervals `(lo, hi)` with
    /// `-1 < lo < hi < 2`; pieces sticking out of `[0, 1)` wrap around.
    pub fn from_intervals(raw: Vec<(f64, f64)>) -> ArcSet {
        ArcSet::canonicalize(raw)
    }

    fn canonicalize(raw: Vec<(f64, f64)>) -> ArcSet {
        let mut parts: Vec<(f64, f64)> = Vec::with_capacity(raw.len() + 1);
        for (lo, hi) in raw {
            if !(hi > lo) {
                continue;
            }
            if hi - lo >= 1.0 {
                return ArcSet::full_circle();
            }
            if lo < 0.0 {
                parts.push((lo + 1.0, 1.0));
                if hi > 0.0 {
                    parts.push((0.0, hi));
                }
            } else if hi > 1.0 {
                if lo < 1.0 {
                    parts.push((lo, 1.0));
                }
                parts.push((0.0, hi - 1.0));
            } else {
                parts.push((lo, hi));
            }
        }
        if parts.is_empty() {
            return ArcSet::empty();
        }
        if !parts.windows(2).all(|w| w[0].0 <= w[1].0) {
            parts.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        }

        let mut arcs: Vec<CircleArc> = Vec::with_capacity(parts.len());
        let (mut lo, mut hi) = parts[0];
        for &(a, b) in &parts[1..] {
            if a <= hi + MERGE_EPS {
                if b > hi {
                    hi = b;
                }
            } else {
                arcs.push(CircleArc { lo, hi });
                lo = a;
                hi = b;
            }
        }
        arcs.push(CircleArc { lo, hi });

        let total = sum_lengths(&arcs);
        ArcSet { arcs, total }
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The arcs in canonical order.
    pub fn arcs(&self) -> &[CircleArc] {
        &self.arcs
    }

    /// Lebesgue measure of the union (cached sum of arc lengths).
    pub fn measure(&self) -> f64 {
        self.total
    }

    /// Set intersection, again in canonical form.
    pub fn intersect(&self, other: &ArcSet) -> ArcSet {
        let a = &self.arcs;
        let b = &other.arcs;
        let mut out: Vec<(f64, f64)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let lo = a[i].lo.max(b[j].lo);
            let hi = a[i].hi.min(b[j].hi);
            if hi > lo {
                out.push((lo, hi));
            }
            if a[i].hi <= b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        ArcSet::canonicalize(out)
    }

    /// Whether `x` (mod 1) lies strictly inside some arc.
    pub fn contains(&self, x: f64) -> bool {
        if self.total >= 1.0 {
            return true;
        }
        let x = x.rem_euclid(1.0);
        let idx = self.arcs.partition_point(|a| a.lo < x);
        if idx == 0 {
            return false;
        }
        let arc = &self.arcs[idx - 1];
        arc.lo < x && x < arc.hi
    }
}

fn sum_lengths(arcs: &[CircleArc]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for a in arcs {
        neumaier_add(&mut sum, &mut comp, a.hi - a.lo);
    }
    sum + comp
}

/// One Neumaier-compensated accumulation step.
pub(crate) fn neumaier_add(sum: &mut f64, comp: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *comp += (*sum - t) + v;
    } else {
        *comp += (v - t) + *sum;
    }
    *sum = t;
}

/// Union of several canonical sets, canonical again.
pub fn union(sets: &[ArcSet]) -> ArcSet {
    let raw: Vec<(f64, f64)> = sets
        .iter()
        .flat_map(|s| s.arcs.iter().map(|a| (a.lo, a.hi)))
        .collect();
    ArcSet::canonicalize(raw)
}

/// Measure of the union of several canonical sets, via one merged sweep.
pub fn union_measure(sets: &[ArcSet]) -> f64 {
    union(sets).measure()
}

/// Materializes the approximation set for denominator `n`.
///
/// With `reduced` the arcs sit at `(m + theta(n))/n` for the residues `m`
/// coprime to `n` (there are `phi(n)` of them); otherwise at all residues
/// `m = 1..=n`. For `f(n) <= 1/2` and reduced arcs the union is disjoint and
/// its measure is exactly `2 * (f(n)/n) * phi(n)`.
pub fn arcs_for(
    n: u64,
    profile: &ApproxProfile,
    reduced: bool,
    tables: &ArithTables,
) -> Result<ArcSet> {
    tables.check_capacity(n)?;
    let f = profile.f(n)?;
    let radius = profile.radius(n)?;
    let theta = profile.shift(n);
    debug_assert!(f >= 0.0);
    Ok(arcs_from_values(n, radius, theta, reduced, tables))
}

/// Arc construction from already-validated values; shared with the hot loops.
pub(crate) fn arcs_from_values(
    n: u64,
    radius: f64,
    theta: f64,
    reduced: bool,
    tables: &ArithTables,
) -> ArcSet {
    if radius <= 0.0 {
        return ArcSet::empty();
    }
    if radius >= 0.5 {
        return ArcSet::full_circle();
    }
    let nf = n as f64;
    let primes = if reduced {
        tables.prime_factors(n)
    } else {
        Vec::new()
    };
    let coprime = |m: u64| primes.iter().all(|&p| m % p != 0);

    let mut raw = Vec::with_capacity(if reduced {
        tables.totient(n) as usize
    } else {
        n as usize
    });
    for m in 1..=n {
        if reduced && !coprime(m) {
            continue;
        }
        let mut c = (m as f64 + theta) / nf;
        if c >= 1.0 {
            c -= 1.0;
        }
        raw.push((c - radius, c + radius));
    }
    ArcSet::canonicalize(raw)
}
