//! Convergence-rate estimators for the series kernels.
//!
//! Everything here works in `log10` space so that magnitudes far below the
//! `f64` underflow threshold (the deviation table reaches `1e-906`) remain
//! representable; results are returned as [`Magnitude`] pairs of a decimal
//! mantissa and exponent.
//!
//! Two flavors of per-term estimate exist side by side:
//!
//! - [`nth_term_simplified_estimate`] evaluates the conventional simplified
//!   magnitude formulas. Those formulas describe the summand of each series
//!   *without* its outer scalar prefactor, and their derivation drops
//!   bounded factors along the way, so they are order estimates only.
//! - [`nth_term_exact_leading`] recomposes the same leading-order shape from
//!   the improved Stirling estimate while keeping every constant; its ratio
//!   to the true term magnitude tends to 1.
//!
//! These estimates are advisory: stopping criteria in the engine use
//! rigorous rational tail bounds instead.

use crate::error::{Error, Result};
use crate::kernels::{self, SeriesId};

const LOG10_2: f64 = core::f64::consts::LOG10_2;

/// A positive magnitude as `mantissa * 10^exp10` with `mantissa` in `[1, 10)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnitude {
    pub mantissa: f64,
    pub exp10: i64,
}

impl Magnitude {
    /// From a base-10 logarithm.
    pub fn from_log10(lg: f64) -> Self {
        let mut exp10 = lg.floor() as i64;
        let mut mantissa = 10f64.powf(lg - exp10 as f64);
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exp10 += 1;
        }
        Magnitude { mantissa, exp10 }
    }

    /// The base-10 logarithm.
    pub fn log10(&self) -> f64 {
        self.mantissa.log10() + self.exp10 as f64
    }

    /// Lossy `f64` value (zero if it underflows, infinity if it overflows).
    pub fn to_f64(&self) -> f64 {
        self.mantissa * 10f64.powi(self.exp10 as i32)
    }
}

impl core::fmt::Display for Magnitude {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:.4}e{}", self.mantissa, self.exp10)
    }
}

/// Pair of term-magnitude estimates for one series index.
#[derive(Debug, Clone, Copy)]
pub struct TermEstimate {
    pub id: SeriesId,
    pub n: u64,
    /// The simplified closed-form magnitude, where one exists
    /// (none for `sun` and the baseline).
    pub simplified_form: Option<Magnitude>,
    /// Leading-order magnitude with all constants kept.
    pub exact_leading: Magnitude,
}

/// Both magnitude estimates for `t(n)`.
pub fn term_estimate(id: SeriesId, n: u64) -> Result<TermEstimate> {
    let exact_leading = nth_term_exact_leading(id, n)?;
    let simplified_form = match nth_term_simplified_estimate(id, n) {
        Ok(m) => Some(m),
        Err(Error::UnsupportedSeries { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(TermEstimate {
        id,
        n,
        simplified_form,
        exact_leading,
    })
}

fn lg_linear(a: f64, b: f64, n: u64) -> f64 {
    (a * n as f64 + b).log10()
}

/// log10 of the improved Stirling estimate `(n/e)^n sqrt(2 pi (n + 1/6))`.
fn lg_stirling(n: u64) -> f64 {
    let x = n as f64;
    x * (x.log10() - core::f64::consts::E.log10())
        + 0.5 * (2.0 * core::f64::consts::PI * (x + 1.0 / 6.0)).log10()
}

/// log10 of the central-binomial estimate
/// `2^(2n) sqrt(2n + 1/6) / (sqrt(2 pi) (n + 1/6))`.
fn lg_central_binomial(n: u64) -> f64 {
    let x = n as f64;
    2.0 * x * LOG10_2 + 0.5 * (2.0 * x + 1.0 / 6.0).log10()
        - 0.5 * (2.0 * core::f64::consts::PI).log10()
        - (x + 1.0 / 6.0).log10()
}

/// Improved Stirling estimate of `n!`: `(n/e)^n sqrt(2 pi (n + 1/6))`.
/// Evaluated in log space; does not overflow for any admissible `n`.
pub fn stirling_factorial(n: u64) -> Result<Magnitude> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            reason: "stirling_factorial requires n >= 1".into(),
        });
    }
    Ok(Magnitude::from_log10(lg_stirling(n)))
}

/// Estimate of the central binomial coefficient `binom(2n, n)`:
/// `2^(2n) sqrt(2n + 1/6) / (sqrt(2 pi) (n + 1/6))`.
pub fn central_binomial_estimate(n: u64) -> Result<Magnitude> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            reason: "central_binomial_estimate requires n >= 1".into(),
        });
    }
    Ok(Magnitude::from_log10(lg_central_binomial(n)))
}

/// The simplified n-th-term magnitude formulas:
///
/// - ramanujan: `3 / (2^(2n) (2n+1) sqrt(12n+1))`
/// - lupas:     `5 sqrt(12n+1) (6n+1) / (2^(2n-1) n^2)`
/// - theorem1:  `(5/sqrt(3)) / (2^(3n) sqrt(2n+1))`
///
/// These describe the summand of each series without its scalar prefactor.
/// No simplified form exists for `sun` or the baseline; those are rejected.
pub fn nth_term_simplified_estimate(id: SeriesId, n: u64) -> Result<Magnitude> {
    let n0 = kernels::spec(id).start_index.max(1);
    if n < n0 {
        return Err(Error::IndexBelowStart {
            series: id,
            index: n,
            start: n0,
        });
    }
    let x = n as f64;
    let lg = match id {
        SeriesId::Ramanujan => {
            3f64.log10() - 2.0 * x * LOG10_2 - lg_linear(2.0, 1.0, n) - 0.5 * lg_linear(12.0, 1.0, n)
        }
        SeriesId::Lupas => {
            5f64.log10() + 0.5 * lg_linear(12.0, 1.0, n) + lg_linear(6.0, 1.0, n)
                - (2.0 * x - 1.0) * LOG10_2
                - 2.0 * x.log10()
        }
        SeriesId::Theorem1 => {
            (5.0 / 3f64.sqrt()).log10() - 3.0 * x * LOG10_2 - 0.5 * lg_linear(2.0, 1.0, n)
        }
        SeriesId::Sun | SeriesId::Beta2Naive => {
            return Err(Error::UnsupportedSeries {
                series: id,
                operation: "nth_term_simplified_estimate",
            })
        }
    };
    Ok(Magnitude::from_log10(lg))
}

/// Leading-order magnitude of `|t(n)|` (scalar prefactor included) obtained
/// by substituting the central-binomial estimate into the exact term formula
/// and keeping every constant. The ratio to `|t(n)|` tends to 1.
pub fn nth_term_exact_leading(id: SeriesId, n: u64) -> Result<Magnitude> {
    if !id.is_geometric() {
        return Err(Error::UnsupportedSeries {
            series: id,
            operation: "nth_term_exact_leading",
        });
    }
    kernels::spec(id).check_index(n)?;
    let x = n as f64;
    let lg = match id {
        SeriesId::Ramanujan => {
            // (3/8) / ((2n+1)^2 C(2n,n))
            (3f64 / 8.0).log10() - 2.0 * lg_linear(2.0, 1.0, n) - lg_central_binomial(n)
        }
        SeriesId::Lupas => {
            // (1/64) 2^(8n) (40n^2-24n+3) / (n^3 (2n-1) C(2n,n) C(4n,2n)^2),
            // with C(4n,2n) estimated as 2^(4n) sqrt(4n+1/6)/(sqrt(2 pi)(2n+1/6)).
            let lg_c4 = 4.0 * x * LOG10_2 + 0.5 * (4.0 * x + 1.0 / 6.0).log10()
                - 0.5 * (2.0 * core::f64::consts::PI).log10()
                - (2.0 * x + 1.0 / 6.0).log10();
            -(64f64.log10()) + 8.0 * x * LOG10_2 + (40.0 * x * x - 24.0 * x + 3.0).log10()
                - 3.0 * x.log10()
                - lg_linear(2.0, -1.0, n)
                - lg_central_binomial(n)
                - 2.0 * lg_c4
        }
        SeriesId::Sun => {
            -(2f64.log10()) + lg_linear(3.0, -1.0, n) + 3.0 * x * LOG10_2
                - 3.0 * x.log10()
                - 3.0 * lg_central_binomial(n)
        }
        SeriesId::Theorem1 => {
            -(2f64.log10()) + lg_linear(3.0, 2.0, n) + 3.0 * x * LOG10_2
                - 3.0 * lg_linear(2.0, 1.0, n)
                - 3.0 * lg_central_binomial(n)
        }
        SeriesId::Beta2Naive => unreachable!(),
    };
    Ok(Magnitude::from_log10(lg))
}

/// Decimal digits gained per term: `log10(1/rho)`. About `0.60206` for the
/// `4^-n` kernels (ramanujan, lupas) and `0.90309` for the `8^-n` kernels
/// (sun, theorem1).
pub fn digits_per_term(id: SeriesId) -> Result<f64> {
    if !id.is_geometric() {
        return Err(Error::UnsupportedSeries {
            series: id,
            operation: "digits_per_term",
        });
    }
    let (num, den) = kernels::spec(id).geometric_limit;
    Ok((den as f64 / num as f64).log10())
}

/// Smallest `N` whose estimated next term drops below `10^-digits`, i.e.
/// `nth_term_exact_leading(id, N+1) < 10^-digits`, found by forward scan.
pub fn predict_terms_for_digits(id: SeriesId, digits: u32) -> Result<u64> {
    if digits < 1 {
        return Err(Error::InvalidPrecision {
            reason: "digit count must be at least 1".into(),
        });
    }
    if !id.is_geometric() {
        return Err(Error::UnsupportedSeries {
            series: id,
            operation: "predict_terms_for_digits",
        });
    }
    let n0 = kernels::spec(id).start_index;
    let mut n = n0;
    loop {
        let lg = nth_term_exact_leading(id, n + 1)?.log10();
        if lg < -(digits as f64) {
            return Ok(n);
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn exact_factorial(n: u64) -> f64 {
        let mut lg = 0f64;
        for k in 2..=n {
            lg += (k as f64).log10();
        }
        lg
    }

    fn exact_binomial_log10(n: u64, k: u64) -> f64 {
        exact_factorial(n) - exact_factorial(k) - exact_factorial(n - k)
    }

    #[test]
    fn stirling_values() {
        let m = stirling_factorial(1).unwrap();
        assert!((m.to_f64() - 0.9960218071765053).abs() < 1e-12);
        let m10 = stirling_factorial(10).unwrap();
        assert!((m10.to_f64() - 3_628_800.0).abs() / 3_628_800.0 < 1e-3);
        let m100 = stirling_factorial(100).unwrap();
        let rel = (m100.log10() - exact_factorial(100)).abs() * core::f64::consts::LN_10;
        assert!(rel < 1e-5, "relative error {rel}");
        assert!(stirling_factorial(0).is_err());
    }

    #[test]
    fn stirling_error_decreases() {
        let mut prev = f64::MAX;
        for n in 1..=200 {
            let rel =
                ((stirling_factorial(n).unwrap().log10() - exact_factorial(n)).abs()) * core::f64::consts::LN_10;
            if n >= 5 {
                assert!(rel < 1e-3, "n={n}: {rel}");
            }
            assert!(rel < prev, "n={n}");
            prev = rel;
        }
    }

    #[test]
    fn central_binomial_values() {
        let m = central_binomial_estimate(10).unwrap();
        assert!((m.to_f64() - 184_777.230_909_255).abs() < 1e-6);
        assert!((m.to_f64() - 184756.0).abs() / 184756.0 < 1.5e-4);
        let m1 = central_binomial_estimate(1).unwrap();
        assert!((m1.to_f64() - 2.0).abs() / 2.0 < 0.02);
        let m50 = central_binomial_estimate(50).unwrap();
        let rel = (m50.log10() - exact_binomial_log10(100, 50)).abs() * core::f64::consts::LN_10;
        assert!(rel < 1e-4);
        assert!(central_binomial_estimate(0).is_err());
    }

    #[test]
    fn central_binomial_accuracy_range() {
        for n in 10..=2000 {
            let rel = (central_binomial_estimate(n).unwrap().log10()
                - exact_binomial_log10(2 * n, n))
            .abs()
                * core::f64::consts::LN_10;
            assert!(rel < 1e-3, "n={n}: {rel}");
        }
    }

    #[test]
    fn simplified_form_spot_values() {
        let v = nth_term_simplified_estimate(SeriesId::Theorem1, 10).unwrap().to_f64();
        assert!((v - 5.866780768602267e-10).abs() / v < 1e-10);
        let v = nth_term_simplified_estimate(SeriesId::Ramanujan, 10).unwrap().to_f64();
        assert!((v - 1.2385380732548702e-8).abs() / v < 1e-10);
        let v = nth_term_simplified_estimate(SeriesId::Lupas, 10).unwrap().to_f64();
        assert!((v - 6.399154663085937e-5).abs() / v < 1e-10);
        assert!(nth_term_simplified_estimate(SeriesId::Sun, 10).is_err());
        assert!(nth_term_simplified_estimate(SeriesId::Beta2Naive, 10).is_err());
    }

    fn lg_true_term(id: SeriesId, n: u64) -> f64 {
        let t = kernels::term_exact(id, n).unwrap();
        let num = t.numer().magnitude();
        let den = t.denom().magnitude();
        // log10 via bit lengths plus top-bits correction, safe for huge values.
        fn lg(x: &num_bigint::BigUint) -> f64 {
            let bits = x.bits();
            if bits <= 900 {
                x.to_f64().unwrap().log10()
            } else {
                let top = (x >> (bits - 512)).to_f64().unwrap();
                top.log10() + (bits - 512) as f64 * core::f64::consts::LOG10_2
            }
        }
        lg(num) - lg(den)
    }

    #[test]
    fn exact_leading_tracks_true_terms() {
        for id in SeriesId::GEOMETRIC {
            for n in [20u64, 50, 100, 200, 500] {
                let est = nth_term_exact_leading(id, n).unwrap().log10();
                let truth = lg_true_term(id, n);
                let ratio = 10f64.powf(est - truth);
                assert!(
                    (0.9..=1.1).contains(&ratio),
                    "series {id}, n={n}: ratio {ratio}"
                );
            }
        }
    }

    #[test]
    fn exact_leading_examples() {
        let r50 = 10f64.powf(
            nth_term_exact_leading(SeriesId::Theorem1, 50).unwrap().log10()
                - lg_true_term(SeriesId::Theorem1, 50),
        );
        assert!((r50 - 1.0).abs() < 0.05);
        let s50 = 10f64.powf(
            nth_term_exact_leading(SeriesId::Sun, 50).unwrap().log10()
                - lg_true_term(SeriesId::Sun, 50),
        );
        assert!((s50 - 1.0).abs() < 0.05);
        let m100 = 10f64.powf(
            nth_term_exact_leading(SeriesId::Ramanujan, 100).unwrap().log10()
                - lg_true_term(SeriesId::Ramanujan, 100),
        );
        assert!((m100 - 1.0).abs() < 0.02);
        assert!(nth_term_exact_leading(SeriesId::Beta2Naive, 5).is_err());
    }

    #[test]
    fn simplified_form_within_factor_four_of_true_terms() {
        // The simplified forms estimate the summand without the scalar
        // prefactor; bridge it back before comparing.
        for id in [SeriesId::Ramanujan, SeriesId::Lupas, SeriesId::Theorem1] {
            let (sn, sd) = kernels::spec(id).scalar;
            let lg_scale = (sn.abs() as f64 / sd.abs() as f64).log10();
            for n in 10..=100u64 {
                let pf = nth_term_simplified_estimate(id, n).unwrap().log10() + lg_scale;
                let truth = lg_true_term(id, n);
                let factor = 10f64.powf((pf - truth).abs());
                assert!(factor < 4.0, "series {id}, n={n}: factor {factor}");
            }
        }
    }

    #[test]
    fn digit_rates() {
        assert!((digits_per_term(SeriesId::Theorem1).unwrap() - 0.9030899869919435).abs() < 1e-12);
        assert!((digits_per_term(SeriesId::Sun).unwrap() - 0.9030899869919435).abs() < 1e-12);
        assert!((digits_per_term(SeriesId::Ramanujan).unwrap() - 0.6020599913279624).abs() < 1e-12);
        assert!((digits_per_term(SeriesId::Lupas).unwrap() - 0.6020599913279624).abs() < 1e-12);
        assert!(digits_per_term(SeriesId::Beta2Naive).is_err());
    }

    #[test]
    fn predictor_pins() {
        let n = predict_terms_for_digits(SeriesId::Theorem1, 906).unwrap();
        assert!((995..=1005).contains(&n), "theorem1: {n}");
        let n = predict_terms_for_digits(SeriesId::Ramanujan, 307).unwrap();
        assert!((495..=505).contains(&n), "ramanujan: {n}");
        let n = predict_terms_for_digits(SeriesId::Theorem1, 1).unwrap();
        assert!(n <= 4, "theorem1 one digit: {n}");
        assert!(predict_terms_for_digits(SeriesId::Beta2Naive, 10).is_err());
    }

    #[test]
    fn predictor_close_to_true_minimal_n() {
        use crate::engine;
        for id in SeriesId::GEOMETRIC {
            for d in [20u32, 50, 100] {
                let predicted = predict_terms_for_digits(id, d).unwrap() as i64;
                // True minimal N with tail_bound < 10^-d, by exact scan.
                let n0 = kernels::spec(id).start_index;
                let mut n = n0;
                let threshold = num_rational::BigRational::new(
                    num_bigint::BigInt::from(1),
                    num_bigint::BigInt::from(10u32).pow(d),
                );
                while engine::tail_bound(id, n).unwrap() >= threshold {
                    n += 1;
                }
                assert!(
                    (predicted - n as i64).abs() <= 3,
                    "series {id}, d={d}: predicted {predicted}, true {n}"
                );
            }
        }
    }

    #[test]
    fn magnitude_representation() {
        let m = Magnitude::from_log10(-905.5376);
        assert_eq!(m.exp10, -906);
        assert!((m.mantissa - 2.9).abs() < 0.1);
        assert!(m.to_f64() == 0.0); // underflows f64
        let e = term_estimate(SeriesId::Sun, 10).unwrap();
        assert!(e.simplified_form.is_none());
        assert!(e.exact_leading.mantissa > 0.0);
        let e = term_estimate(SeriesId::Theorem1, 10).unwrap();
        assert!(e.simplified_form.is_some());
    }
}
