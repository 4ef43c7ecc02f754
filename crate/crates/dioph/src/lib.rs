//! A workbench for metric Diophantine approximation on the unit circle.
//!
//! The crate studies sets of well-approximable numbers: points `x` that admit
//! infinitely many rational approximations `|x - (m + theta(n))/n| < f(n)/n`,
//! where `f` is an approximation function and `theta` an inhomogeneous shift.
//! It provides the computable layer for experiments with such sets:
//!
//! * [`arith`] — linear sieves for the totient, divisor-count and Möbius
//!   functions, Ramanujan sums, gcd-sum identities;
//! * [`profile`] — approximation functions and shifts as evaluable families;
//! * [`arcs`] — the approximation sets materialized as exact arc unions, with
//!   measures, intersections and unions;
//! * [`fourier`] — the Fourier series for pairwise intersection measures, with
//!   certified truncation error, plus second-moment sums;
//! * [`counting`] — counting approximation solutions and Monte Carlo tails;
//! * [`dimension`] — dimension estimation from counting functions and box
//!   counting;
//! * [`criteria`] — divergence criteria and classical bound families traced at
//!   finite cutoffs.
//!
//! # Quick start
//!
//! ```
//! use dioph::{arcs, ArithTables, ApproxProfile};
//!
//! let tables = ArithTables::build(100)?;
//! let profile = ApproxProfile::constant(0.5)?;
//!
//! // The approximation set for n = 4: two arcs around 1/4 and 3/4.
//! let set = arcs::arcs_for(4, &profile, true, &tables)?;
//! assert_eq!(set.arcs().len(), 2);
//! assert!((set.measure() - 0.5).abs() < 1e-12);
//! # Ok::<(), dioph::Error>(())
//! ```

pub mod arcs;
pub mod arith;
pub mod counting;
pub mod criteria;
pub mod dimension;
mod error;
pub mod fourier;
pub mod profile;

#[cfg(doctest)]
pub mod book;

pub use arith::ArithTables;
pub use error::{Error, Result};
pub use profile::{ApproxProfile, RangeKind};

/// Resource guards for the expensive code paths.
///
/// Budgets exist so that a stray flag cannot wedge a desk machine: oversized
/// requests are rejected with [`Error::Budget`] or [`Error::Capacity`] instead
/// of being attempted. All fields have safe defaults and can be overridden
/// from the CLI config file.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Budgets {
    /// Largest sieve size `ArithTables::build_with_ceiling` will accept.
    pub table_ceiling: u64,
    /// Largest `N` for the O(N^2) pair scans in `borel_cantelli_ratio`.
    pub pair_scan_limit: u64,
    /// Cap on the truncation point a series tolerance may demand.
    pub series_term_budget: u64,
    /// Truncation points at or below this are summed term by term;
    /// larger ones switch to the closed-form evaluation.
    pub literal_series_max: u64,
    /// Largest argument for the O(m) gcd scans in the bound suites.
    pub gcd_scan_limit: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            table_ceiling: 1 << 26,
            pair_scan_limit: 4096,
            series_term_budget: 1 << 50,
            literal_series_max: 1 << 21,
            gcd_scan_limit: 1 << 24,
        }
    }
}
