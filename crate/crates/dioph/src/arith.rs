//! Exact arithmetic-function layer: sieved tables, Ramanujan sums, gcd sums
//! and the divisor identities the rest of the crate leans on.
//!
//! Everything here is integer arithmetic. Ramanujan sums are evaluated through
//! the Möbius/totient closed form
//! `c_n(k) = mu(n/g) * phi(n) / phi(n/g)` with `g = gcd(n, k)`; the defining
//! exponential sum exists only as a floating-point oracle
//! ([`ramanujan_direct`]) used to cross-check the closed form.

use num_integer::gcd;
use num_rational::Ratio;

use crate::{Error, Result};

/// Default cap on sieve size, in table entries.
pub const DEFAULT_TABLE_CEILING: u64 = 1 << 26;

/// Natural logarithm with `ln(x) := 2` for `x <= 1`.
///
/// Log-weighted sums must stay finite at `n = 1`; the convention makes the
/// `n = 1` term harmless without special-casing every summation loop.
pub fn ln_guarded(x: f64) -> f64 {
    if x <= 1.0 {
        2.0
    } else {
        x.ln()
    }
}

/// `ln ln x` under the same guard, applied at both levels.
pub fn loglog_guarded(x: f64) -> f64 {
    ln_guarded(ln_guarded(x))
}

/// Sieved tables of the Euler totient, divisor-count and Möbius functions up
/// to a fixed limit, plus smallest prime factors and the prime list.
///
/// Built in one linear-sieve pass and immutable afterwards, so a single table
/// can be shared freely across threads.
#[derive(Clone)]
pub struct ArithTables {
    limit: u32,
    totient: Vec<u32>,
    divisor_count: Vec<u32>,
    mobius: Vec<i8>,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl ArithTables {
    /// Builds tables for `1..=limit` under the default ceiling.
    pub fn build(limit: u64) -> Result<ArithTables> {
        Self::build_with_ceiling(limit, DEFAULT_TABLE_CEILING)
    }

    /// Builds tables for `1..=limit`, rejecting limits of 0 or above `ceiling`.
    pub fn build_with_ceiling(limit: u64, ceiling: u64) -> Result<ArithTables> {
        if limit == 0 || limit > ceiling {
            return Err(Error::Capacity {
                requested: limit,
                ceiling,
            });
        }
        let n = limit as usize;
        let mut totient = vec![0u32; n + 1];
        let mut divisor_count = vec![0u32; n + 1];
        let mut mobius = vec![0i8; n + 1];
        let mut spf = vec![0u32; n + 1];
        // Exponent of the smallest prime factor; only needed during the sieve.
        let mut low_exp = vec![0u8; n + 1];
        let mut primes = Vec::new();

        totient[1] = 1;
        divisor_count[1] = 1;
        mobius[1] = 1;
        spf[1] = 1;

        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
                totient[i] = i as u32 - 1;
                divisor_count[i] = 2;
                mobius[i] = -1;
                low_exp[i] = 1;
            }
            for &p in &primes {
                if p > spf[i] {
                    break;
                }
                let ip = i as u64 * p as u64;
                if ip > limit {
                    break;
                }
                let ip = ip as usize;
                spf[ip] = p;
                if p == spf[i] {
                    // p divides i: extend the power of the smallest prime.
                    totient[ip] = totient[i] * p;
                    mobius[ip] = 0;
                    let e = low_exp[i];
                    low_exp[ip] = e + 1;
                    divisor_count[ip] = divisor_count[i] / (e as u32 + 1) * (e as u32 + 2);
                    break;
                } else {
                    totient[ip] = totient[i] * (p - 1);
                    mobius[ip] = -mobius[i];
                    low_exp[ip] = 1;
                    divisor_count[ip] = divisor_count[i] * 2;
                }
            }
        }

        Ok(ArithTables {
            limit: limit as u32,
            totient,
            divisor_count,
            mobius,
            spf,
            primes,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    pub(crate) fn check_capacity(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit as u64 {
            Err(Error::Capacity {
                requested: n,
                ceiling: self.limit as u64,
            })
        } else {
            Ok(())
        }
    }

    /// Euler totient. Panics if `n` is 0 or beyond the table limit.
    pub fn totient(&self, n: u64) -> u64 {
        self.totient[n as usize] as u64
    }

    /// Number of positive divisors. Panics outside the table range.
    pub fn divisor_count(&self, n: u64) -> u64 {
        self.divisor_count[n as usize] as u64
    }

    /// Möbius function, in {-1, 0, 1}. Panics outside the table range.
    pub fn mobius(&self, n: u64) -> i64 {
        self.mobius[n as usize] as i64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }

    /// Prime factorization as (prime, exponent) pairs in ascending order.
    pub fn factorize(&self, n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut x = n as usize;
        while x > 1 {
            let p = self.spf[x] as usize;
            let mut e = 0u32;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    /// Distinct prime factors in ascending order.
    pub fn prime_factors(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut x = n as usize;
        while x > 1 {
            let p = self.spf[x] as usize;
            out.push(p as u64);
            while x % p == 0 {
                x /= p;
            }
        }
        out
    }

    /// All positive divisors, sorted ascending.
    pub fn divisors(&self, n: u64) -> Vec<u64> {
        let factors = self.factorize(n);
        let mut out = vec![1u64];
        for (p, e) in factors {
            let len = out.len();
            let mut pw = 1u64;
            for _ in 0..e {
                pw *= p;
                for i in 0..len {
                    out.push(out[i] * pw);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Ramanujan sum `c_n(k)` by the Möbius/totient closed form.
///
/// `k` may be any integer; `c_n(-k) = c_n(k)` and `c_n(0) = phi(n)`.
pub fn ramanujan(n: u64, k: i64, tables: &ArithTables) -> Result<i64> {
    tables.check_capacity(n)?;
    let g = gcd(n, k.unsigned_abs());
    let q = n / g;
    let mu = tables.mobius(q);
    if mu == 0 {
        return Ok(0);
    }
    let phi_n = tables.totient(n);
    let phi_q = tables.totient(q);
    debug_assert_eq!(phi_n % phi_q, 0, "phi(q) must divide phi(n) for q | n");
    Ok(mu * (phi_n / phi_q) as i64)
}

/// Ramanujan sum by its definition: the exponential sum over residues coprime
/// to `n`, evaluated in floating point and rounded.
///
/// This is the oracle for [`ramanujan`]. It returns [`Error::Consistency`]
/// when the imaginary part or the distance to the nearest integer exceeds
/// `1e-6 * n`, which would indicate a bug rather than bad input.
pub fn ramanujan_direct(n: u64, k: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::validation("ramanujan_direct: n must be positive"));
    }
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    for a in 1..=n {
        if gcd(a, n) == 1 {
            // Reduce a*k mod n before going to floats so the angle stays small.
            let r = (a as i128 * k as i128).rem_euclid(n as i128) as f64;
            let angle = std::f64::consts::TAU * r / n as f64;
            re += angle.cos();
            im += angle.sin();
        }
    }
    let tol = 1e-6 * n as f64;
    let rounded = re.round();
    if im.abs() > tol || (re - rounded).abs() > tol {
        return Err(Error::consistency(format!(
            "ramanujan_direct({n}, {k}): sum {re}+{im}i is not close to an integer"
        )));
    }
    Ok(rounded as i64)
}

/// Full trigonometric sum over all residues mod `n`: equals `n` when `n | k`
/// and 0 otherwise.
pub fn full_trig_sum(n: u64, k: i64) -> u64 {
    if k.rem_euclid(n as i64) == 0 {
        n
    } else {
        0
    }
}

/// The divisor-weighted totient sum `sum_{s | n} phi(s)/s`, exact.
///
/// Returned as a reduced rational; equals [`gcd_sum`]`(n) / n`.
pub fn dtilde(n: u64, tables: &ArithTables) -> Result<Ratio<i64>> {
    tables.check_capacity(n)?;
    // Common denominator n: sum phi(s)/s = (1/n) * sum phi(s) * (n/s).
    let mut numer = 0u64;
    for s in tables.divisors(n) {
        numer += tables.totient(s) * (n / s);
    }
    Ok(Ratio::new(numer as i64, n as i64))
}

/// `sum_{m=1..n} gcd(n, m)`, exact, via the multiplicative closed form.
///
/// For a prime power the sum is `(e+1) p^e - e p^(e-1)`; the full value is the
/// product over prime powers. Equals `n * dtilde(n)` and is at most `n * d(n)`.
pub fn gcd_sum(n: u64) -> u64 {
    debug_assert!(n > 0);
    let mut x = n;
    let mut acc: u128 = 1;
    let mut p = 2u64;
    while p * p <= x {
        if x % p == 0 {
            let mut e = 0u32;
            let mut pe = 1u64;
            while x % p == 0 {
                x /= p;
                e += 1;
                pe *= p;
            }
            let term = (e as u128 + 1) * pe as u128 - e as u128 * (pe / p) as u128;
            acc *= term;
        }
        p += 1;
    }
    if x > 1 {
        // Remaining prime to the first power: 2p - 1.
        acc *= 2 * x as u128 - 1;
    }
    u64::try_from(acc).expect("gcd_sum overflow; n out of supported range")
}

/// Checks `d(k)^2 = sum_{l | k} d(l^2)` by two independent routes.
///
/// The left side counts divisors of `k` by trial division; the right side
/// factorizes each divisor `l` separately to get `d(l^2)`. Returning `false`
/// signals an implementation bug, not bad input.
pub fn divisor_square_identity(k: u64) -> bool {
    debug_assert!(k > 0);
    let mut divisors = Vec::new();
    let mut d = 1u64;
    while d * d <= k {
        if k % d == 0 {
            divisors.push(d);
            if d != k / d {
                divisors.push(k / d);
            }
        }
        d += 1;
    }
    let count = divisors.len() as u64;

    let mut rhs = 0u64;
    for &l in &divisors {
        rhs += divisor_count_of_square(l);
    }
    count * count == rhs
}

/// `d(l^2)` via trial-division factorization of `l`.
fn divisor_count_of_square(l: u64) -> u64 {
    let mut x = l;
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= x {
        if x % p == 0 {
            let mut e = 0u64;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            out *= 2 * e + 1;
        }
        p += 1;
    }
    if x > 1 {
        out *= 3;
    }
    out
}
