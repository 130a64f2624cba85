//! Arbitrary-precision computation of Catalan's constant
//! `G = 0.9159655941...` through four rapidly converging central binomial
//! series, with verification oracles for the hypergeometric identities
//! behind them and asymptotic convergence-rate estimators.
//!
//! The crate is organized around four modules:
//!
//! - [`kernels`]: exact rational description of each series (terms, ratios,
//!   prefactors, additive constants) — the single source of truth.
//! - [`engine`]: incremental and binary-splitting summation at arbitrary
//!   precision, rigorous tail bounds, digit-string production, and a
//!   cross-checked reference value of `G`.
//! - [`asymptotics`]: Stirling and central-binomial estimates, per-series
//!   term-magnitude estimates, digits-per-term rates, and a terms-for-digits
//!   predictor.
//! - [`oracles`]: independent numerical verification of the identity chain
//!   (hypergeometric special values, the Euler transformation, the
//!   `theta/sin(theta)` integral, dilogarithm checks, and the two
//!   representations of the generating function behind the fastest series).

pub mod asymptotics;
pub mod engine;
mod error;
pub mod kernels;
pub mod oracles;
pub(crate) mod real;

pub use error::{Error, Result};
pub use kernels::SeriesId;

// `BigFloat` appears throughout the public API; re-export the arithmetic
// layer so downstream code can operate on returned values.
pub use astro_float;
pub use astro_float::BigFloat;

/// Decimal digit helpers shared with the CLI: they re-export the small part
/// of the internal float layer that consumers need for rendering values.
pub mod render {
    pub use crate::real::{
        agreement_digits, decimal_parts, from_rational, gt, le, lt, parse_decimal, pow10,
        sci_string, to_f64,
    };
}
