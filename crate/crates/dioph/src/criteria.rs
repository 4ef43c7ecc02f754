//! Divergence criteria and classical bound families, traced at finite cutoffs.
//!
//! Nothing here decides a limsup: the traces report partial quotients at
//! checkpoints together with an advisory trend label. The label comes from a
//! fixed, documented rule (last-quarter maximum against first-quarter maximum,
//! thresholds 1.5x for "diverging" and 1.1x for "bounded") and is exactly
//! that — advisory.

use num_integer::gcd;

use crate::arcs::{arcs_for, neumaier_add};
use crate::arith::{ln_guarded, loglog_guarded, ramanujan, ArithTables};
use crate::profile::ApproxProfile;
use crate::{Budgets, Error, Result};

/// Trend thresholds used by [`trend_verdict`].
pub const DIVERGING_FACTOR: f64 = 1.5;
pub const BOUNDED_FACTOR: f64 = 1.1;

/// `e^gamma`, the limit of the Mertens product ratio.
pub const MERTENS_LIMIT: f64 = 1.781_072_417_990_198;

/// Advisory label for a quotient sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictHint {
    DivergingTrend,
    BoundedTrend,
    Inconclusive,
}

/// Last-quarter max vs first-quarter max, with the fixed thresholds.
pub fn trend_verdict(quotients: &[f64]) -> VerdictHint {
    if quotients.is_empty() {
        return VerdictHint::Inconclusive;
    }
    let q = quotients.len().div_ceil(4);
    let head = quotients[..q].iter().cloned().fold(0.0f64, f64::max);
    let tail = quotients[quotients.len() - q..]
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    if head == 0.0 && tail == 0.0 {
        return VerdictHint::BoundedTrend;
    }
    if tail >= DIVERGING_FACTOR * head {
        VerdictHint::DivergingTrend
    } else if tail <= BOUNDED_FACTOR * head {
        VerdictHint::BoundedTrend
    } else {
        VerdictHint::Inconclusive
    }
}

/// No-blow-up rule for the bound suites: the maximum over the last quarter of
/// a value sequence must not exceed 1.1x the maximum over the first three
/// quarters.
pub fn no_blowup(values: &[f64]) -> bool {
    if values.len() < 2 {
        return true;
    }
    let q = values.len().div_ceil(4);
    let head = values[..values.len() - q]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let tail = values[values.len() - q..]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    tail <= BOUNDED_FACTOR * head
}

/// Normalized mean of Ramanujan-sum magnitudes:
/// `(1/(d(k) ln m)) * sum_{n<=m} |c_n(k)| / phi(n)`.
///
/// Bounded by an absolute constant; the bound suites record the empirical
/// maximum as a regression value.
pub fn ramanujan_mean_ratio(k: u64, m: u64, tables: &ArithTables) -> Result<f64> {
    if m < 2 {
        return Err(Error::validation("ramanujan_mean_ratio needs m >= 2"));
    }
    tables.check_capacity(m)?;
    let d_k = if k <= tables.limit() {
        tables.divisor_count(k)
    } else {
        (1..=k).filter(|j| k % j == 0).count() as u64
    };
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=m {
        let c = ramanujan(n, k as i64, tables)?;
        neumaier_add(
            &mut sum,
            &mut comp,
            c.unsigned_abs() as f64 / tables.totient(n) as f64,
        );
    }
    Ok((sum + comp) / (d_k as f64 * (m as f64).ln()))
}

/// `(sum_{k<=n} d(k)^2 / k) / ln(n)^3`.
pub fn divisor_square_log_ratio(n: u64, tables: &ArithTables) -> Result<f64> {
    if n < 2 {
        return Err(Error::validation("divisor_square_log_ratio needs n >= 2"));
    }
    tables.check_capacity(n)?;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for k in 1..=n {
        let d = tables.divisor_count(k) as f64;
        neumaier_add(&mut sum, &mut comp, d * d / k as f64);
    }
    Ok((sum + comp) / (n as f64).ln().powi(3))
}

/// `(sum_{n<=m} d(n) d(m) gcd(n, m)) / (d(m)^3 m ln m)`.
///
/// The inner sum costs one gcd per term, hence the scan budget.
pub fn divisor_gcd_sum_ratio(m: u64, tables: &ArithTables, budgets: &Budgets) -> Result<f64> {
    if m < 2 {
        return Err(Error::validation("divisor_gcd_sum_ratio needs m >= 2"));
    }
    tables.check_capacity(m)?;
    if m > budgets.gcd_scan_limit {
        return Err(Error::Budget {
            what: "gcd scan length",
            required: m,
            budget: budgets.gcd_scan_limit,
        });
    }
    let d_m = tables.divisor_count(m) as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=m {
        neumaier_add(
            &mut sum,
            &mut comp,
            tables.divisor_count(n) as f64 * d_m * gcd(n, m) as f64,
        );
    }
    Ok((sum + comp) / (d_m.powi(3) * m as f64 * (m as f64).ln()))
}

/// Mertens product ratio `(1/ln m) * prod_{p<=m} (1 + 1/(p-1))`, which tends
/// to `e^gamma`. Sieves its own primes.
pub fn mertens_ratio(m: u64) -> Result<f64> {
    if m < 3 {
        return Err(Error::validation("mertens_ratio needs m >= 3"));
    }
    let mut composite = vec![false; m as usize + 1];
    let mut product = 1.0f64;
    for p in 2..=m as usize {
        if !composite[p] {
            let mut q = p * p;
            while q <= m as usize {
                composite[q] = true;
                q += p;
            }
            product *= 1.0 + 1.0 / (p as f64 - 1.0);
        }
    }
    Ok(product / (m as f64).ln())
}

/// Minimum of `phi(n) ln(ln n) / n` over a window `[n_lo, n_hi]`.
pub fn totient_liminf_scan(n_lo: u64, n_hi: u64, tables: &ArithTables) -> Result<f64> {
    if n_lo < 10 || n_lo > n_hi {
        return Err(Error::validation(
            "totient scan needs 10 <= n_lo <= n_hi",
        ));
    }
    tables.check_capacity(n_hi)?;
    let mut min = f64::INFINITY;
    for n in n_lo..=n_hi {
        let v = tables.totient(n) as f64 * (n as f64).ln().ln() / n as f64;
        if v < min {
            min = v;
        }
    }
    Ok(min)
}

/// Checks the LeVeque-style bound for all-fraction sets:
/// `lambda(Ã_n ∩ Ã_m) <= 4 f(n) f(m) + 2 gcd(n,m) min(eps_n, eps_m)`.
///
/// The left side is an exact sweep. `false` means a bug, not bad input.
pub fn leveque_bound_check(
    n: u64,
    m: u64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<bool> {
    let f_n = profile.f(n)?;
    let f_m = profile.f(m)?;
    if f_n > 0.5 || f_m > 0.5 {
        return Err(Error::validation("the bound check requires f <= 1/2"));
    }
    let exact = arcs_for(n, profile, false, tables)?
        .intersect(&arcs_for(m, profile, false, tables)?)
        .measure();
    let bound = 4.0 * f_n * f_m
        + 2.0 * gcd(n, m) as f64 * profile.radius(n)?.min(profile.radius(m)?);
    Ok(exact <= bound + 1e-10)
}

/// Weight in the max term of the dimension-function criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaxWeight {
    /// `max h(eps_n)^(1/2) * n` — the stated, weaker-but-safe form.
    N,
    /// `max h(eps_n)^(1/2) * phi(n)` — the sharper variant.
    Phi,
}

/// Dimension functions accepted by the general criterion.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub enum DimensionFn {
    /// `h(x) = x^exponent` with a positive exponent.
    Power { exponent: f64 },
}

impl DimensionFn {
    fn eval(&self, x: f64) -> f64 {
        match self {
            DimensionFn::Power { exponent } => x.powf(*exponent),
        }
    }
}

/// Which criterion a trace evaluates.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CriterionKind {
    /// Reduced fractions against the second-moment denominator:
    /// `sum phi(n) f(n)/n` over `sqrt(sum f(n) d(n)^3 ln(n)^2)`.
    ReducedSecondMoment,
    /// The same numerator over the explicit slowly-growing denominator
    /// `ln^2 N * lnln N * exp(3 ln2 * ln N / lnln N)`.
    ReducedLogPower,
    /// Dimension-function criterion: `sum phi(n) h(eps_n)` over
    /// `ln(N)^2.5 * max_n h(eps_n)^(1/2) * w(n)`.
    DimensionFunction { h: DimensionFn, weight: MaxWeight },
    /// All fractions: `sum f(n)` over `sqrt(sum f(n) d(n))`.
    AllFractions,
    /// The positive-measure pair: primary quotient
    /// `sum f(n) phi(n)/n / sum f(n)`, secondary
    /// `(sum f(n) phi(n)/n)^2 / sum f(n) d(n)`.
    PositiveMeasurePair,
    /// Growth-envelope condition: checks `f(n) <= coefficient * ln(n)^a / n`
    /// cumulatively and traces `sum phi(n) f(n)/n` over `ln(N)^b`.
    Envelope { a: f64, b: f64, coefficient: f64 },
}

impl CriterionKind {
    pub fn tag(&self) -> &'static str {
        match self {
            CriterionKind::ReducedSecondMoment => "reduced-second-moment",
            CriterionKind::ReducedLogPower => "reduced-log-power",
            CriterionKind::DimensionFunction { .. } => "dimension-function",
            CriterionKind::AllFractions => "all-fractions",
            CriterionKind::PositiveMeasurePair => "positive-measure-pair",
            CriterionKind::Envelope { .. } => "envelope",
        }
    }
}

/// Partial quotients of one criterion over a checkpoint schedule.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CriterionTrace {
    pub kind: String,
    pub params: serde_json::Value,
    pub checkpoints: Vec<u64>,
    pub quotients: Vec<f64>,
    /// Second quotient family, for the pair criterion.
    pub secondary: Option<Vec<f64>>,
    /// Cumulative envelope checks, for the envelope criterion.
    pub bound_ok: Option<Vec<bool>>,
    pub verdict_hint: VerdictHint,
    /// Set when some checkpoint hit 0/0 (reported as quotient 0).
    pub zero_over_zero: bool,
}

/// Evaluates a criterion's partial quotients at the given checkpoints.
pub fn criterion_trace(
    kind: &CriterionKind,
    profile: &ApproxProfile,
    checkpoints: &[u64],
    tables: &ArithTables,
) -> Result<CriterionTrace> {
    if checkpoints.is_empty() {
        return Err(Error::validation("criterion trace needs checkpoints"));
    }
    if !checkpoints.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::validation("checkpoints must be strictly ascending"));
    }
    let n_top = *checkpoints.last().unwrap();
    tables.check_capacity(n_top)?;
    if checkpoints[0] < 2 {
        return Err(Error::validation("checkpoints must start at 2 or later"));
    }

    // Running sums shared by the kinds; only the needed ones move off zero.
    let mut phi_f_over_n = (0.0, 0.0);
    let mut f_d3_log2 = (0.0, 0.0);
    let mut f_sum = (0.0, 0.0);
    let mut f_d = (0.0, 0.0);
    let mut phi_h = (0.0, 0.0);
    let mut max_term = 0.0f64;
    let mut envelope_ok = true;
    let mut zero_over_zero = false;

    let mut quotients = Vec::with_capacity(checkpoints.len());
    let mut secondary: Vec<f64> = Vec::new();
    let mut bound_checks: Vec<bool> = Vec::new();

    let mut next = 0usize;
    for n in 1..=n_top {
        let f = profile.f(n)?;
        let nf = n as f64;
        let phi = tables.totient(n) as f64;
        match kind {
            CriterionKind::ReducedSecondMoment => {
                add(&mut phi_f_over_n, phi * f / nf);
                let d = tables.divisor_count(n) as f64;
                let l = ln_guarded(nf);
                add(&mut f_d3_log2, f * d * d * d * l * l);
            }
            CriterionKind::ReducedLogPower => {
                add(&mut phi_f_over_n, phi * f / nf);
            }
            CriterionKind::DimensionFunction { h, weight } => {
                let hval = h.eval(f / nf);
                add(&mut phi_h, phi * hval);
                let w = match weight {
                    MaxWeight::N => nf,
                    MaxWeight::Phi => phi,
                };
                max_term = max_term.max(hval.sqrt() * w);
            }
            CriterionKind::AllFractions => {
                add(&mut f_sum, f);
                add(&mut f_d, f * tables.divisor_count(n) as f64);
            }
            CriterionKind::PositiveMeasurePair => {
                add(&mut phi_f_over_n, phi * f / nf);
                add(&mut f_sum, f);
                add(&mut f_d, f * tables.divisor_count(n) as f64);
            }
            CriterionKind::Envelope { a, coefficient, .. } => {
                add(&mut phi_f_over_n, phi * f / nf);
                let envelope = coefficient * ln_guarded(nf).powf(*a) / nf;
                if f > envelope * (1.0 + 1e-12) {
                    envelope_ok = false;
                }
            }
        }

        if next < checkpoints.len() && n == checkpoints[next] {
            let big_n = nf;
            match kind {
                CriterionKind::ReducedSecondMoment => {
                    quotients.push(guarded_div(
                        total(phi_f_over_n),
                        total(f_d3_log2).sqrt(),
                        &mut zero_over_zero,
                    ));
                }
                CriterionKind::ReducedLogPower => {
                    let ln_n = big_n.ln();
                    let ll = loglog_guarded(big_n);
                    let denom = ln_n * ln_n
                        * ll
                        * (3.0 * std::f64::consts::LN_2 * ln_n / ll).exp();
                    quotients.push(guarded_div(
                        total(phi_f_over_n),
                        denom,
                        &mut zero_over_zero,
                    ));
                }
                CriterionKind::DimensionFunction { .. } => {
                    quotients.push(guarded_div(
                        total(phi_h),
                        big_n.ln().powf(2.5) * max_term,
                        &mut zero_over_zero,
                    ));
                }
                CriterionKind::AllFractions => {
                    quotients.push(guarded_div(
                        total(f_sum),
                        total(f_d).sqrt(),
                        &mut zero_over_zero,
                    ));
                }
                CriterionKind::PositiveMeasurePair => {
                    let a = total(phi_f_over_n);
                    quotients.push(guarded_div(a, total(f_sum), &mut zero_over_zero));
                    secondary.push(guarded_div(a * a, total(f_d), &mut zero_over_zero));
                }
                CriterionKind::Envelope { b, .. } => {
                    quotients.push(guarded_div(
                        total(phi_f_over_n),
                        big_n.ln().powf(*b),
                        &mut zero_over_zero,
                    ));
                    bound_checks.push(envelope_ok);
                }
            }
            next += 1;
        }
    }

    let verdict = trend_verdict(&quotients);
    Ok(CriterionTrace {
        kind: kind.tag().to_string(),
        params: serde_json::to_value(kind).unwrap_or(serde_json::Value::Null),
        checkpoints: checkpoints.to_vec(),
        quotients,
        secondary: (!secondary.is_empty()).then_some(secondary),
        bound_ok: (!bound_checks.is_empty()).then_some(bound_checks),
        verdict_hint: verdict,
        zero_over_zero,
    })
}

#[inline]
fn add(acc: &mut (f64, f64), v: f64) {
    neumaier_add(&mut acc.0, &mut acc.1, v);
}

#[inline]
fn total(acc: (f64, f64)) -> f64 {
    acc.0 + acc.1
}

fn guarded_div(num: f64, den: f64, flag: &mut bool) -> f64 {
    if den == 0.0 {
        if num != 0.0 {
            return f64::INFINITY;
        }
        *flag = true;
        return 0.0;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables() -> ArithTables {
        ArithTables::build(1 << 14).unwrap()
    }

    #[test]
    fn ramanujan_mean_ratio_hand_value() {
        let t = tables();
        // k = 1, m = 2: (|c_1(1)| + |c_2(1)|) / (d(1) ln 2) = 2 / ln 2.
        let v = ramanujan_mean_ratio(1, 2, &t).unwrap();
        assert!((v - 2.0 / std::f64::consts::LN_2).abs() < 1e-12);
        assert!((v - 2.885).abs() < 1e-3);
    }

    #[test]
    fn ramanujan_mean_ratio_mu_case() {
        let t = tables();
        // c_n(1) = mu(n), so the k = 1 ratio is a Mertens-flavored sum.
        let m = 4096;
        let direct: f64 = (1..=m)
            .map(|n| t.mobius(n).unsigned_abs() as f64 / t.totient(n) as f64)
            .sum();
        let v = ramanujan_mean_ratio(1, m, &t).unwrap();
        assert!((v - direct / (m as f64).ln()).abs() < 1e-9);
    }

    #[test]
    fn divisor_square_log_ratio_hand_values() {
        let t = tables();
        let v2 = divisor_square_log_ratio(2, &t).unwrap();
        assert!((v2 - 3.0 / 2f64.ln().powi(3)).abs() < 1e-12);
        assert!((v2 - 9.0083).abs() < 1e-3);
        let v10 = divisor_square_log_ratio(10, &t).unwrap();
        assert!((v10 - 1.247).abs() < 1e-3);
    }

    #[test]
    fn divisor_square_sum_two_routes() {
        // Direct sum against the route through d(l^2) and harmonic tails.
        let t = tables();
        let n = 10_000u64;
        let direct: f64 = (1..=n)
            .map(|k| {
                let d = t.divisor_count(k) as f64;
                d * d / k as f64
            })
            .sum();
        let mut harmonic = vec![0.0f64; (n + 1) as usize];
        for j in 1..=n as usize {
            harmonic[j] = harmonic[j - 1] + 1.0 / j as f64;
        }
        let via_identity: f64 = (1..=n)
            .map(|l| {
                let d_l2: u64 = t
                    .factorize(l)
                    .iter()
                    .map(|&(_, e)| 2 * e as u64 + 1)
                    .product();
                d_l2 as f64 / l as f64 * harmonic[(n / l) as usize]
            })
            .sum();
        assert!(
            (direct - via_identity).abs() < 1e-9 * direct,
            "{direct} vs {via_identity}"
        );
    }

    #[test]
    fn divisor_gcd_sum_ratio_hand_value() {
        let t = tables();
        let v = divisor_gcd_sum_ratio(2, &t, &Budgets::default()).unwrap();
        // (d(1)d(2)*1 + d(2)d(2)*2) / (8 * 2 * ln 2) = 10 / (16 ln 2).
        assert!((v - 10.0 / (16.0 * 2f64.ln())).abs() < 1e-12);
        assert!((v - 0.902).abs() < 1e-3);
    }

    #[test]
    fn divisor_gcd_sum_ratio_prime_shortcut() {
        let t = tables();
        // For prime m the inner sum is d(m) * (sum_{n<m} d(n) + 2m).
        for p in [101u64, 997, 4099] {
            let generic = divisor_gcd_sum_ratio(p, &t, &Budgets::default()).unwrap();
            let inner: f64 = (1..p).map(|n| t.divisor_count(n) as f64).sum::<f64>() + 2.0 * p as f64;
            let closed = 2.0 * inner / (8.0 * p as f64 * (p as f64).ln());
            assert!((generic - closed).abs() < 1e-9, "p = {p}");
        }
    }

    #[test]
    fn gcd_scan_budget() {
        let t = tables();
        let mut b = Budgets::default();
        b.gcd_scan_limit = 100;
        assert!(matches!(
            divisor_gcd_sum_ratio(1000, &t, &b),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn mertens_ratio_hand_value() {
        // Primes 2, 3: (1+1)(1+1/2) / ln 3 = 3 / ln 3.
        let v = mertens_ratio(3).unwrap();
        assert!((v - 3.0 / 3f64.ln()).abs() < 1e-12);
        assert!((v - 2.731).abs() < 1e-3);
    }

    #[test]
    fn totient_scan_small_windows() {
        let t = tables();
        // Single-point window is just the value at n.
        let v = totient_liminf_scan(12, 12, &t).unwrap();
        let expected = 4.0 / 12.0 * 12f64.ln().ln();
        assert!((v - expected).abs() < 1e-15);
        // The [10, 100] minimum sits at the highly composite n = 12.
        let w = totient_liminf_scan(10, 100, &t).unwrap();
        assert!((w - expected).abs() < 1e-15);
        assert!(w > 0.25);
    }

    #[test]
    fn leveque_bound_diagonal_and_pair() {
        let t = tables();
        let p = ApproxProfile::constant(0.5).unwrap();
        assert!(leveque_bound_check(7, 7, &p, &t).unwrap());
        assert!(leveque_bound_check(2, 3, &p, &t).unwrap());
    }

    #[test]
    fn trace_of_zero_profile_is_flagged_and_bounded() {
        let t = tables();
        let p = ApproxProfile::constant(0.0).unwrap();
        let trace = criterion_trace(
            &CriterionKind::ReducedSecondMoment,
            &p,
            &[16, 64, 256],
            &t,
        )
        .unwrap();
        assert!(trace.quotients.iter().all(|&q| q == 0.0));
        assert!(trace.zero_over_zero);
        assert_eq!(trace.verdict_hint, VerdictHint::BoundedTrend);
    }

    #[test]
    fn log_power_trace_of_half_diverges() {
        let t = ArithTables::build(1 << 16).unwrap();
        let p = ApproxProfile::constant(0.5).unwrap();
        // The denominator grows subpolynomially, so divergence only shows
        // once the checkpoints reach a few tens of thousands.
        let checkpoints: Vec<u64> = (4..=16).map(|j| 1u64 << j).collect();
        let trace =
            criterion_trace(&CriterionKind::ReducedLogPower, &p, &checkpoints, &t).unwrap();
        assert_eq!(trace.verdict_hint, VerdictHint::DivergingTrend);
    }

    #[test]
    fn second_moment_trace_ignores_the_shift() {
        let t = tables();
        let a = ApproxProfile::constant(0.5).unwrap();
        let b = ApproxProfile::constant(0.5)
            .unwrap()
            .with_constant_shift(0.31)
            .unwrap();
        let checkpoints = [16u64, 64, 256, 1024];
        let ta = criterion_trace(&CriterionKind::ReducedSecondMoment, &a, &checkpoints, &t)
            .unwrap();
        let tb = criterion_trace(&CriterionKind::ReducedSecondMoment, &b, &checkpoints, &t)
            .unwrap();
        assert_eq!(ta.quotients, tb.quotients);
    }

    #[test]
    fn envelope_trace_on_the_factorial_family() {
        let t = tables();
        let p = ApproxProfile::factorial_blocks(3).unwrap();
        let checkpoints: Vec<u64> = (4..=14).map(|j| 1u64 << j).collect();
        let kind = CriterionKind::Envelope {
            a: 10.0,
            b: 7.5,
            coefficient: 1.0,
        };
        let trace = criterion_trace(&kind, &p, &checkpoints, &t).unwrap();
        let checks = trace.bound_ok.as_ref().unwrap();
        assert!(checks.iter().all(|&ok| ok), "envelope violated: {checks:?}");
        assert_eq!(trace.verdict_hint, VerdictHint::DivergingTrend);
    }

    #[test]
    fn pair_criterion_emits_both_quotients() {
        let t = tables();
        let p = ApproxProfile::constant(0.5).unwrap();
        let trace = criterion_trace(
            &CriterionKind::PositiveMeasurePair,
            &p,
            &[16, 64, 256],
            &t,
        )
        .unwrap();
        let secondary = trace.secondary.as_ref().unwrap();
        assert_eq!(secondary.len(), trace.quotients.len());
        // (*) compares f phi(n)/n against f: at f = 1/2 it is the mean of
        // phi(n)/n, strictly inside (0, 1).
        for q in &trace.quotients {
            assert!(*q > 0.0 && *q < 1.0);
        }
    }

    #[test]
    fn dimension_function_variants() {
        let t = tables();
        let p = ApproxProfile::constant(0.5).unwrap();
        let kind_n = CriterionKind::DimensionFunction {
            h: DimensionFn::Power { exponent: 1.0 },
            weight: MaxWeight::N,
        };
        let kind_phi = CriterionKind::DimensionFunction {
            h: DimensionFn::Power { exponent: 1.0 },
            weight: MaxWeight::Phi,
        };
        let qa = criterion_trace(&kind_n, &p, &[64, 256], &t).unwrap().quotients;
        let qb = criterion_trace(&kind_phi, &p, &[64, 256], &t)
            .unwrap()
            .quotients;
        // phi(n) <= n, so the phi-weighted denominator is no larger.
        for (a, b) in qa.iter().zip(&qb) {
            assert!(b >= a);
        }
    }

    #[test]
    fn verdict_rule_cases() {
        assert_eq!(
            trend_verdict(&[1.0, 1.0, 1.0, 1.0]),
            VerdictHint::BoundedTrend
        );
        assert_eq!(
            trend_verdict(&[1.0, 2.0, 3.0, 4.0]),
            VerdictHint::DivergingTrend
        );
        assert_eq!(
            trend_verdict(&[1.0, 1.2, 1.3, 1.3]),
            VerdictHint::Inconclusive
        );
        assert_eq!(trend_verdict(&[0.0, 0.0]), VerdictHint::BoundedTrend);
        assert!(no_blowup(&[2.0, 1.0, 1.0, 1.0]));
        assert!(!no_blowup(&[1.0, 1.0, 1.0, 2.0]));
    }
}
