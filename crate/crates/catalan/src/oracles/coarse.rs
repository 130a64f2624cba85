//! Coarse `f64` consistency checks: dilogarithm values on the unit circle,
//! the Dirichlet-beta partial sums, the antiderivative of `theta/sin(theta)`
//! and the two representations of Guillera's generating function.
//!
//! Everything here exists to confirm structure, not to deliver precision:
//! the dilogarithm uses its defining series with the crude `1/N` tail bound,
//! and the function-level residuals are expected to be of that order.

use num_complex::Complex64;

use crate::engine;
use crate::error::{Error, Result};
use crate::real;

use super::hypergeometric::CoarseSum;

const PI: f64 = core::f64::consts::PI;

/// `sum_{n=1..N} e^(i n phi) / n^2` without domain checks.
fn dilog_series(phi: f64, n_terms: u64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=n_terms {
        let (s, c) = (n as f64 * phi).sin_cos();
        let n2 = (n as f64) * (n as f64);
        acc += Complex64::new(c / n2, s / n2);
    }
    acc
}

/// Truncated dilogarithm `Li2(e^(i theta))` on the unit circle, for
/// `0 < theta <= pi`. The truncation error is below `1/N` in modulus
/// (`sum_{n>N} 1/n^2 <= 1/N`).
pub fn dilog_unit_circle(theta: f64, n_terms: u64) -> Result<Complex64> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::InvalidArgument {
            reason: format!("theta {theta} outside (0, pi]"),
        });
    }
    if n_terms < 1_000 {
        return Err(Error::InvalidArgument {
            reason: "dilogarithm series needs at least 1000 terms".into(),
        });
    }
    Ok(dilog_series(theta, n_terms))
}

/// Composite Simpson rule; panels must be even.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: u32) -> f64 {
    let h = (b - a) / f64::from(panels);
    let mut acc = f(a) + f(b);
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * f64::from(k));
    }
    acc * h / 3.0
}

fn theta_over_sin(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        t / t.sin()
    }
}

/// Residual between the antiderivative
/// `F(theta) = theta ln((1-e^(i theta))/(1+e^(i theta))) + i (Li2(-e^(i theta)) - Li2(e^(i theta)))`
/// evaluated at the interval ends and a quadrature of `theta/sin(theta)`
/// over `[a, b]`, for `0 < a <= b <= pi/2`. The residual is dominated by the
/// dilogarithm truncation, hence `O(1/n_terms)`.
///
/// Intervals touching zero are rejected: the logarithmic factor needs a
/// limit treatment there that the full-integral oracle covers instead.
pub fn antiderivative_check(a: f64, b: f64, n_terms: u64) -> Result<f64> {
    if !(a > 0.0 && a <= b && b <= PI / 2.0) {
        return Err(Error::InvalidArgument {
            reason: format!("interval [{a}, {b}] outside (0, pi/2]"),
        });
    }
    if n_terms < 1_000 {
        return Err(Error::InvalidArgument {
            reason: "antiderivative check needs at least 1000 dilogarithm terms".into(),
        });
    }
    let f = |theta: f64| -> Complex64 {
        let e = Complex64::new(0.0, theta).exp();
        let one = Complex64::new(1.0, 0.0);
        // Principal branch, Arg in (-pi, pi].
        let log_term = ((one - e) / (one + e)).ln() * theta;
        // Li2(-e^(i theta)) = Li2(e^(i (theta + pi))).
        let li = dilog_series(theta + PI, n_terms) - dilog_series(theta, n_terms);
        log_term + Complex64::new(0.0, 1.0) * li
    };
    let integral = simpson(theta_over_sin, a, b, 4096);
    let diff = f(b) - f(a) - Complex64::new(integral, 0.0);
    Ok(diff.norm())
}

/// Residual of the defining series against the reference value:
/// `|sum_{n=0..N} (-1)^n/(2n+1)^2 - G|`, which the alternating remainder
/// bound keeps below `1/(2N+3)^2`.
pub fn clausen_beta_check(n_terms: u64) -> Result<f64> {
    if n_terms < 100 {
        return Err(Error::InvalidArgument {
            reason: "beta series check needs at least 100 terms".into(),
        });
    }
    let mut sum = 0f64;
    for n in 0..=n_terms {
        let d = (2 * n + 1) as f64;
        let t = 1.0 / (d * d);
        sum += if n % 2 == 0 { t } else { -t };
    }
    let g = real::to_f64(&engine::reference_g(15)?);
    Ok((sum - g).abs())
}

/// Direct partial sum of
/// `f(x) = sum (-1)^n (x+1/2)_n^3 / (8^n (x+1)_n^3) [6(x+n)+1]`
/// for `x` in `(0, 1)`. Geometric decay at ratio `1/8`; around 60 terms
/// exhaust `f64` resolution.
pub fn guillera_f_series(x: f64, n_terms: u64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidArgument {
            reason: format!("x = {x} outside (0, 1)"),
        });
    }
    if n_terms == 0 {
        return Err(Error::InvalidArgument {
            reason: "at least one term required".into(),
        });
    }
    let mut base = 1f64; // (-1)^n (x+1/2)_n^3 / (8^n (x+1)_n^3)
    let mut sum = 0f64;
    for n in 0..n_terms {
        let nf = n as f64;
        sum += base * (6.0 * (x + nf) + 1.0);
        let r = (x + 0.5 + nf) / (x + 1.0 + nf);
        base *= -(r * r * r) / 8.0;
    }
    Ok(sum)
}

/// The hypergeometric representation of the same function:
/// `f(x) = 4x sum (x/2+1/4)_n (x/2+3/4)_n / ((x+1)_n)^2`, summed directly at
/// the unit argument with the algebraic tail estimate `C N^(-x)/x`
/// (terms decay like `n^(-1-x)`; slow for small `x`).
pub fn guillera_f_hyp(x: f64, n_terms: u64) -> Result<CoarseSum> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidArgument {
            reason: format!("x = {x} outside (0, 1): the series needs excess x > 0"),
        });
    }
    if n_terms == 0 {
        return Err(Error::InvalidArgument {
            reason: "at least one term required".into(),
        });
    }
    let a = x / 2.0 + 0.25;
    let b = x / 2.0 + 0.75;
    let c = x + 1.0;
    let mut term = 1f64;
    let mut sum = 0f64;
    for n in 0..n_terms {
        sum += term;
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (c + nf));
    }
    // First omitted term t_N ~ C N^(-1-x): tail ~ C N^(-x)/x = t_N N / x.
    let tail = 4.0 * x * (term.abs() * n_terms as f64 / x);
    Ok(CoarseSum {
        value: 4.0 * x * sum,
        tail_estimate: tail,
    })
}
