//! Real Lambert W branches and the W-based bounds and asymptotic estimates
//! for the prime counting function `π(x)` and the `n`'th prime `pₙ`.
//!
//! * [`lambert_w`]: `W₀`, `W₋₁`, their leading asymptotics and the
//!   log-linear solver `ln(a + bx) + cx = ln d`.
//! * [`prime_engine`]: exact `π(x)` and `pₙ` from a segmented sieve.
//! * [`bounds`]: every bound as a function, plus range verification,
//!   threshold search and crossover location.
//! * [`asymptotics`]: convergence tables for the W-based estimates.

pub mod asymptotics;
pub mod bounds;
mod error;
pub mod lambert_w;
pub mod prime_engine;

pub use asymptotics::{
    cesaro_cipolla, expansion_error_report, pi_ratio_table, pn_estimate, pn_estimate_table,
    ConvergenceRow, PnVariant,
};
pub use bounds::{
    find_crossover, find_threshold, pi_lower_linear, pi_lower_power, pi_upper, pn_band, pn_lower,
    pn_upper, u_of, verify_range, verify_range_sharded, Band, BoundFamily, BoundSpec, Direction,
    Subject, ValidityReport, Violation, ViolationKind,
};
pub use error::{Error, Result};
pub use lambert_w::{
    asymptotic_estimate, lambert_w, solve_log_linear, w0, wm1, Branch, LogLinearProblem, WResult,
};
pub use prime_engine::PrimeTable;
