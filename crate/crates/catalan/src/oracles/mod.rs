//! Independent numerical verification of the identity chain behind the
//! series kernels.
//!
//! The chain is exercised at two rigor levels, kept deliberately separate:
//!
//! - High precision: the `theta/sin(theta)` integral (and the equivalent
//!   `arcsin` form) evaluated by quadrature against the cross-checked
//!   reference value of `2G`, plus the `2F1` special values and the Euler
//!   transformation inside the unit disk.
//! - Coarse `f64`: the `3F2` series at the unit argument (which converges
//!   only like `n^(-3/2)`), dilogarithm values on the unit circle, and the
//!   two representations of Guillera's generating function, each with an
//!   explicit tail estimate.

mod coarse;
mod hypergeometric;
pub mod quadrature;

pub use coarse::{
    antiderivative_check, clausen_beta_check, dilog_unit_circle, guillera_f_hyp,
    guillera_f_series,
};
pub use hypergeometric::{
    euler_transform_check, hyp2f1, hyp3f2_unit_coarse, pochhammer, CoarseSum, HypParams,
};
pub use quadrature::{QuadratureRule, QuadratureSpec};

use astro_float::BigFloat;

use crate::engine::PrecisionContext;
use crate::error::Result;
use crate::real::{self, RM};

/// Parameters of the `3F2` special value at unit argument that equals `2G`.
pub fn special_3f2_params() -> HypParams {
    HypParams::from_parts(&[(1, 2), (1, 1), (1, 1)], &[(3, 2), (3, 2)], (1, 1))
        .expect("valid parameters")
}

/// High-precision quadrature of `theta/sin(theta)` over the interval given
/// by `quad` (endpoints in units of pi, default `[0, pi/2]`), with the
/// integrand taken as 1 at the removable singularity. Over the full default
/// interval the value equals `2G`.
pub fn integral_theta_over_sin(ctx: &PrecisionContext, quad: &QuadratureSpec) -> Result<BigFloat> {
    ctx.validate()?;
    quad.validate()?;
    let digits = ctx.target_digits();
    let p_work = crate::engine::bits_for_digits(digits as u64 + 10);
    if quad.is_degenerate() {
        return Ok(BigFloat::new(ctx.working_bits()));
    }
    let (a, b) = quad.endpoints(p_work)?;
    let f = |x: &BigFloat, _lo: &BigFloat, _hi: &BigFloat, p: usize| -> Result<BigFloat> {
        if x.is_zero() {
            return Ok(BigFloat::from_word(1, p));
        }
        let s = real::with_consts(|cc| real::checked(x.sin(p, RM, cc)))?;
        real::checked(x.div(&s, p, RM))
    };
    quadrature::integrate(&f, &a, &b, digits, quad.rule, quad.levels)
}

/// High-precision quadrature of `arcsin(x) / (x sqrt(1 - x^2))` over
/// `[0, 1]`, the closed form of the integrand whose integral also equals
/// `2G`. The `x = 1` endpoint carries an integrable singularity, handled by
/// the double-exponential rule through the exact endpoint distances.
pub fn integral_arcsin_form(ctx: &PrecisionContext, levels: u32) -> Result<BigFloat> {
    ctx.validate()?;
    let digits = ctx.target_digits();
    let p_work = crate::engine::bits_for_digits(digits as u64 + 10);
    let a = BigFloat::new(p_work);
    let b = BigFloat::from_word(1, p_work);
    let f = |x: &BigFloat, _lo: &BigFloat, hi: &BigFloat, p: usize| -> Result<BigFloat> {
        if x.is_zero() {
            return Ok(BigFloat::from_word(1, p));
        }
        // 1 - x^2 = (1 - x)(1 + x); 1 - x comes in exactly as the endpoint
        // distance, immune to cancellation near x = 1.
        let one_plus = real::checked(x.add(&BigFloat::from_word(1, p), p, RM))?;
        let prod = real::checked(hi.mul(&one_plus, p, RM))?;
        let root = real::checked(prod.sqrt(p, RM))?;
        let asin = real::with_consts(|cc| real::checked(x.asin(p, RM, cc)))?;
        let den = real::checked(x.mul(&root, p, RM))?;
        real::checked(asin.div(&den, p, RM))
    };
    quadrature::tanh_sinh(&f, &a, &b, digits, levels)
}
