//! Fourier side of the intersection measures.
//!
//! The indicator of an approximation set has Fourier coefficients
//! `g_n^(k) = sin(2 pi eps_n k) c_n(k) e^(2 pi i theta(n) k / n) / (pi k)`
//! for `k != 0` (and `2 eps_n phi(n)` at `k = 0`), where `eps_n = f(n)/n` and
//! `c_n` is the Ramanujan sum. Pairing coefficients gives a series for the
//! measure of a pairwise intersection:
//!
//! ```text
//! lambda(A_n ∩ A_m) = 4 eps_n eps_m phi(n) phi(m)
//!   + (2/pi^2) * sum_{k>=1} sin(2 pi eps_n k) c_n(k) sin(2 pi eps_m k) c_m(k)
//!                           cos(2 pi (theta(n)/n - theta(m)/m) k) / k^2
//! ```
//!
//! Every term is bounded by `phi(n) phi(m) / k^2` in modulus, so truncating
//! after `M` terms certifies the error `(2/pi^2) phi(n) phi(m) / M`. Small
//! truncation points are summed term by term with compensation. Large ones
//! are evaluated through the divisor expansion of the Ramanujan sums: writing
//! `c_n(k) = sum_{d | gcd(n,k)} d mu(n/d)` turns the series into finitely many
//! sums of `cos(x k)/k^2` over arithmetic progressions, each of which is a
//! quadratic polynomial in the fractional part of a rotation number. That
//! route evaluates the *complete* series in `O(d(n) d(m))` operations, and the
//! reported tail bound is then simply slack.

use num_complex::Complex64;
use num_integer::{gcd, lcm};
use rayon::prelude::*;

use crate::arcs::{self, neumaier_add};
use crate::arith::{ln_guarded, ramanujan, ArithTables};
use crate::profile::{ApproxProfile, MaterializedProfile};
use crate::{Budgets, Error, Result};

const TWO_OVER_PI_SQ: f64 = 2.0 / (std::f64::consts::PI * std::f64::consts::PI);

/// How the series value of a [`SeriesResult`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summation {
    /// Term-by-term compensated summation of the first `truncation_m` terms.
    Literal,
    /// Closed-form evaluation of the complete series.
    ClosedForm,
}

/// Result of evaluating the intersection series for one pair `(n, m)`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SeriesResult {
    /// Main term plus series part.
    pub value: f64,
    /// Least `M` whose uniform tail bound meets the requested tolerance.
    pub truncation_m: u64,
    /// Certified bound `(2/pi^2) phi(n) phi(m) / truncation_m` on the tail.
    pub tail_bound: f64,
    /// Series part split into even-k and odd-k contributions; only available
    /// from the literal path.
    pub even_odd_split: Option<(f64, f64)>,
    pub summation: Summation,
}

/// Fourier coefficient of the indicator of the approximation set for `n`.
pub fn coefficient(
    n: u64,
    k: i64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<Complex64> {
    tables.check_capacity(n)?;
    profile.f(n)?;
    let radius = profile.radius(n)?;
    let phi = tables.totient(n) as f64;
    if k == 0 {
        return Ok(Complex64::new(2.0 * radius * phi, 0.0));
    }
    let c = ramanujan(n, k, tables)? as f64;
    let kf = k as f64;
    let magnitude = (std::f64::consts::TAU * radius * kf).sin() * c / (std::f64::consts::PI * kf);
    let phase = std::f64::consts::TAU * profile.shift(n) * kf / n as f64;
    Ok(Complex64::from_polar(1.0, phase) * magnitude)
}

/// `sum_{j>=1} cos(2 pi t j) / j^2` as a function of the rotation number `t`,
/// scaled by `1/pi^2`: returns `1/6 - s + s^2` with `s = frac(t)`.
#[inline]
fn cosine_quadratic(t: f64) -> f64 {
    let s = t.rem_euclid(1.0);
    1.0 / 6.0 - s + s * s
}

/// Complete series part via the divisor expansion, reduced fractions.
fn series_part_closed(
    n: u64,
    m: u64,
    radius_n: f64,
    radius_m: f64,
    shift_turns: f64,
    tables: &ArithTables,
) -> f64 {
    let t1 = radius_n - radius_m - shift_turns;
    let t2 = radius_n - radius_m + shift_turns;
    let t3 = radius_n + radius_m - shift_turns;
    let t4 = radius_n + radius_m + shift_turns;

    let divs_n = tables.divisors(n);
    let divs_m = tables.divisors(m);
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &d in &divs_n {
        let mu_nd = tables.mobius(n / d);
        if mu_nd == 0 {
            continue;
        }
        for &e in &divs_m {
            let mu_me = tables.mobius(m / e);
            if mu_me == 0 {
                continue;
            }
            let l = lcm(d, e) as f64;
            let weight = (d as f64) * (e as f64) * (mu_nd * mu_me) as f64 / (l * l);
            let g = cosine_quadratic(t1 * l) + cosine_quadratic(t2 * l)
                - cosine_quadratic(t3 * l)
                - cosine_quadratic(t4 * l);
            neumaier_add(&mut sum, &mut comp, weight * g * 0.5);
        }
    }
    // The pi^2 factors of the series prefactor and the cosine sums cancel,
    // leaving the bare quadratic combination.
    sum + comp
}

/// Complete series part for the all-fractions variant, where the Ramanujan
/// sums are replaced by full trigonometric sums supported on multiples of n.
fn series_part_closed_full(
    n: u64,
    m: u64,
    radius_n: f64,
    radius_m: f64,
    shift_turns: f64,
) -> f64 {
    let t1 = radius_n - radius_m - shift_turns;
    let t2 = radius_n - radius_m + shift_turns;
    let t3 = radius_n + radius_m - shift_turns;
    let t4 = radius_n + radius_m + shift_turns;
    let l = lcm(n, m) as f64;
    let weight = (n as f64) * (m as f64) / (l * l);
    let g = cosine_quadratic(t1 * l) + cosine_quadratic(t2 * l)
        - cosine_quadratic(t3 * l)
        - cosine_quadratic(t4 * l);
    weight * g * 0.5
}

/// Ramanujan sums of `n` tabulated over one period of `k`.
fn ramanujan_period(n: u64, tables: &ArithTables) -> Vec<f64> {
    let phi_n = tables.totient(n);
    (0..n)
        .map(|r| {
            let g = gcd(n, r);
            let q = n / g;
            let mu = tables.mobius(q);
            if mu == 0 {
                0.0
            } else {
                (mu * (phi_n / tables.totient(q)) as i64) as f64
            }
        })
        .collect()
}

/// First `terms` terms of the series part, summed in ascending `k` with
/// compensation. Returns the partial sum and its even/odd split.
fn series_part_literal(
    n: u64,
    m: u64,
    radius_n: f64,
    radius_m: f64,
    shift_turns: f64,
    tables: &ArithTables,
    terms: u64,
) -> (f64, f64, f64) {
    let cn = ramanujan_period(n, tables);
    let cm = ramanujan_period(m, tables);
    let an = std::f64::consts::TAU * radius_n;
    let am = std::f64::consts::TAU * radius_m;
    let ag = std::f64::consts::TAU * shift_turns;

    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut even = 0.0;
    let mut even_c = 0.0;
    let mut odd = 0.0;
    let mut odd_c = 0.0;
    for k in 1..=terms {
        let kf = k as f64;
        let term = (an * kf).sin()
            * cn[(k % n) as usize]
            * (am * kf).sin()
            * cm[(k % m) as usize]
            * (ag * kf).cos()
            / (kf * kf);
        let term = TWO_OVER_PI_SQ * term;
        neumaier_add(&mut sum, &mut comp, term);
        if k % 2 == 0 {
            neumaier_add(&mut even, &mut even_c, term);
        } else {
            neumaier_add(&mut odd, &mut odd_c, term);
        }
    }
    (sum + comp, even + even_c, odd + odd_c)
}

/// Evaluates the series for `lambda(A_n ∩ A_m)` with certified truncation
/// error at most `tol`.
///
/// `n = m` is allowed and reproduces the measure of a single set (a Parseval
/// check). Requires `f(n), f(m) <= 1/2`.
pub fn intersection_series(
    n: u64,
    m: u64,
    profile: &ApproxProfile,
    tol: f64,
    tables: &ArithTables,
    budgets: &Budgets,
) -> Result<SeriesResult> {
    tables.check_capacity(n)?;
    tables.check_capacity(m)?;
    if !(tol > 0.0) {
        return Err(Error::validation(format!(
            "series tolerance {tol} must be positive"
        )));
    }
    let f_n = profile.f(n)?;
    let f_m = profile.f(m)?;
    if f_n > 0.5 || f_m > 0.5 {
        return Err(Error::validation(
            "intersection series requires f(n) <= 1/2 on both arguments",
        ));
    }
    let radius_n = profile.radius(n)?;
    let radius_m = profile.radius(m)?;
    let shift_turns = profile.shift(n) / n as f64 - profile.shift(m) / m as f64;

    let phi_product = (tables.totient(n) * tables.totient(m)) as f64;
    let uniform = TWO_OVER_PI_SQ * phi_product;
    let required = (uniform / tol).ceil().max(1.0);
    if required > budgets.series_term_budget as f64 {
        return Err(Error::Budget {
            what: "series truncation point",
            required: required as u64,
            budget: budgets.series_term_budget,
        });
    }
    let truncation_m = required as u64;
    let tail_bound = uniform / truncation_m as f64;
    let main = 4.0 * radius_n * radius_m * phi_product;

    if truncation_m <= budgets.literal_series_max {
        let (part, even, odd) =
            series_part_literal(n, m, radius_n, radius_m, shift_turns, tables, truncation_m);
        Ok(SeriesResult {
            value: main + part,
            truncation_m,
            tail_bound,
            even_odd_split: Some((even, odd)),
            summation: Summation::Literal,
        })
    } else {
        let part = series_part_closed(n, m, radius_n, radius_m, shift_turns, tables);
        Ok(SeriesResult {
            value: main + part,
            truncation_m,
            tail_bound,
            even_odd_split: None,
            summation: Summation::ClosedForm,
        })
    }
}

/// Upper-bound variant of the series part: absolute values termwise and the
/// shift cosine dropped. Always at least the signed sum; diagnostic only.
pub fn series_part_absolute(
    n: u64,
    m: u64,
    profile: &ApproxProfile,
    terms: u64,
    tables: &ArithTables,
) -> Result<f64> {
    tables.check_capacity(n)?;
    tables.check_capacity(m)?;
    let radius_n = profile.radius(n)?;
    let radius_m = profile.radius(m)?;
    let cn = ramanujan_period(n, tables);
    let cm = ramanujan_period(m, tables);
    let an = std::f64::consts::TAU * radius_n;
    let am = std::f64::consts::TAU * radius_m;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for k in 1..=terms {
        let kf = k as f64;
        let term = ((an * kf).sin() * cn[(k % n) as usize] * (am * kf).sin()
            * cm[(k % m) as usize])
            .abs()
            / (kf * kf);
        neumaier_add(&mut sum, &mut comp, TWO_OVER_PI_SQ * term);
    }
    Ok(sum + comp)
}

/// The conservative analytic truncation point `d(n) d(m) gcd(n,m) n^4 m^4`.
///
/// Far too large to sum to in practice; exposed as a diagnostic for how much
/// slack the uniform bound actually leaves.
pub fn conservative_truncation(n: u64, m: u64, tables: &ArithTables) -> Result<u128> {
    tables.check_capacity(n)?;
    tables.check_capacity(m)?;
    let d = tables.divisor_count(n) as u128 * tables.divisor_count(m) as u128;
    let g = gcd(n, m) as u128;
    Ok(d * g * (n as u128).pow(4) * (m as u128).pow(4))
}

/// The constant-free second-moment sum `sum_{n<=N} eps_n n d(n)^3 ln(n)^2`,
/// with the guarded logarithm (so the `n = 1` term contributes `4 eps_1`).
///
/// This is the quantity that controls both the pairwise-intersection second
/// moment and the counting variance; [`crate::counting::variance_budget`]
/// returns exactly this value.
pub fn second_moment_bound(
    n_max: u64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<f64> {
    tables.check_capacity(n_max)?;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=n_max {
        let radius = profile.radius(n)?;
        if radius == 0.0 {
            continue;
        }
        let d = tables.divisor_count(n) as f64;
        let log = ln_guarded(n as f64);
        neumaier_add(&mut sum, &mut comp, radius * n as f64 * d * d * d * log * log);
    }
    Ok(sum + comp)
}

/// Which route `borel_cantelli_ratio` uses for the pairwise measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectionMode {
    /// Exact arc sweeps.
    Exact,
    /// The series at tolerance 1e-9.
    Series,
}

/// The second-moment ratio `(sum_n lambda(A_n))^2 / sum_{n,m} lambda(A_n ∩ A_m)`
/// over `n, m <= N`, the quantity that lower-bounds the measure of the limsup
/// set.
///
/// Rejects profiles with `sum lambda(A_n) = 0` as degenerate, and `N` beyond
/// the pair-scan budget.
pub fn borel_cantelli_ratio(
    n_max: u64,
    profile: &ApproxProfile,
    reduced: bool,
    tables: &ArithTables,
    mode: IntersectionMode,
    budgets: &Budgets,
) -> Result<f64> {
    tables.check_capacity(n_max)?;
    if n_max > budgets.pair_scan_limit {
        return Err(Error::Budget {
            what: "pair scan size",
            required: n_max,
            budget: budgets.pair_scan_limit,
        });
    }

    match mode {
        IntersectionMode::Exact => {
            let sets = (1..=n_max)
                .map(|n| arcs::arcs_for(n, profile, reduced, tables))
                .collect::<Result<Vec<_>>>()?;
            let mut num = 0.0;
            let mut num_c = 0.0;
            for s in &sets {
                neumaier_add(&mut num, &mut num_c, s.measure());
            }
            let num = num + num_c;
            if num == 0.0 {
                return Err(Error::degenerate(
                    "all approximation sets are empty; the ratio is 0/0",
                ));
            }
            // Row sums in parallel, reduced in index order for determinism.
            let rows: Vec<f64> = (0..sets.len())
                .into_par_iter()
                .map(|i| {
                    let mut row = sets[i].measure();
                    let mut row_c = 0.0;
                    for j in 0..i {
                        neumaier_add(
                            &mut row,
                            &mut row_c,
                            2.0 * sets[i].intersect(&sets[j]).measure(),
                        );
                    }
                    row + row_c
                })
                .collect();
            let mut den = 0.0;
            let mut den_c = 0.0;
            for r in rows {
                neumaier_add(&mut den, &mut den_c, r);
            }
            Ok(num * num / (den + den_c))
        }
        IntersectionMode::Series => {
            let mp = profile.materialize(n_max)?;
            for n in 1..=n_max {
                if mp.f(n) > 0.5 {
                    return Err(Error::validation(
                        "series mode requires f(n) <= 1/2 up to N",
                    ));
                }
            }
            let mut num = 0.0;
            let mut num_c = 0.0;
            for n in 1..=n_max {
                let measure = if reduced {
                    2.0 * mp.radius(n) * tables.totient(n) as f64
                } else {
                    2.0 * mp.f(n)
                };
                neumaier_add(&mut num, &mut num_c, measure);
            }
            let num = num + num_c;
            if num == 0.0 {
                return Err(Error::degenerate(
                    "all approximation sets are empty; the ratio is 0/0",
                ));
            }
            let rows: Vec<f64> = (1..=n_max)
                .into_par_iter()
                .map(|n| {
                    let mut row = 0.0;
                    let mut row_c = 0.0;
                    for m in 1..=n {
                        let weight = if m == n { 1.0 } else { 2.0 };
                        let value =
                            pair_measure_closed(n, m, &mp, reduced, tables);
                        neumaier_add(&mut row, &mut row_c, weight * value);
                    }
                    row + row_c
                })
                .collect();
            let mut den = 0.0;
            let mut den_c = 0.0;
            for r in rows {
                neumaier_add(&mut den, &mut den_c, r);
            }
            Ok(num * num / (den + den_c))
        }
    }
}

/// Closed-form pair measure used by the series-mode pair scan.
fn pair_measure_closed(
    n: u64,
    m: u64,
    mp: &MaterializedProfile,
    reduced: bool,
    tables: &ArithTables,
) -> f64 {
    let radius_n = mp.radius(n);
    let radius_m = mp.radius(m);
    if radius_n == 0.0 || radius_m == 0.0 {
        return 0.0;
    }
    let shift_turns = mp.shift(n) / n as f64 - mp.shift(m) / m as f64;
    if reduced {
        let main =
            4.0 * radius_n * radius_m * (tables.totient(n) * tables.totient(m)) as f64;
        main + series_part_closed(n, m, radius_n, radius_m, shift_turns, tables)
    } else {
        let main = 4.0 * mp.f(n) * mp.f(m);
        main + series_part_closed_full(n, m, radius_n, radius_m, shift_turns)
    }
}

/// Series evaluation of `lambda(Ã_n ∩ Ã_m)` for the all-fractions sets; used
/// to cross-check the LeVeque-style bound.
pub fn full_intersection_value(
    n: u64,
    m: u64,
    profile: &ApproxProfile,
    tables: &ArithTables,
) -> Result<f64> {
    tables.check_capacity(n)?;
    tables.check_capacity(m)?;
    let f_n = profile.f(n)?;
    let f_m = profile.f(m)?;
    if f_n > 0.5 || f_m > 0.5 {
        return Err(Error::validation(
            "the all-fractions series requires f <= 1/2",
        ));
    }
    let radius_n = profile.radius(n)?;
    let radius_m = profile.radius(m)?;
    let shift_turns = profile.shift(n) / n as f64 - profile.shift(m) / m as f64;
    Ok(4.0 * f_n * f_m + series_part_closed_full(n, m, radius_n, radius_m, shift_turns))
}
