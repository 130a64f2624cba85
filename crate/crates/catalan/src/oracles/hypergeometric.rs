//! Generalized hypergeometric evaluation for the identity chain.
//!
//! Not a general-purpose engine: only the parameter instances the proof
//! chain needs (plus small generalizations) are supported, with two rigor
//! levels kept deliberately separate. Inside the unit disk, direct
//! summation with a geometric tail bound delivers working-precision values;
//! at the unit argument the series converges only algebraically, so the
//! coarse evaluator returns an `f64` partial sum with a fitted tail
//! estimate and nothing stronger is claimed for it.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::engine::PrecisionContext;
use crate::error::{Error, Result};
use crate::real::{self, RM};

/// Parameters of a generalized hypergeometric series: upper and lower
/// Pochhammer parameters plus the argument, all exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypParams {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub argument: BigRational,
}

impl HypParams {
    /// Validates that no lower parameter is a nonpositive integer (which
    /// would zero a denominator) and, for `p = q + 1` at the unit argument,
    /// that the convergence excess `sum(lower) - sum(upper)` is positive.
    pub fn new(
        upper: Vec<BigRational>,
        lower: Vec<BigRational>,
        argument: BigRational,
    ) -> Result<Self> {
        for b in &lower {
            if b.is_integer() && !b.is_positive() {
                return Err(Error::InvalidArgument {
                    reason: format!("lower parameter {b} is a nonpositive integer"),
                });
            }
        }
        let params = HypParams {
            upper,
            lower,
            argument,
        };
        if params.argument.is_one()
            && params.upper.len() == params.lower.len() + 1
            && !params.excess().is_positive()
        {
            return Err(Error::InvalidArgument {
                reason: "series at unit argument needs positive convergence excess".into(),
            });
        }
        Ok(params)
    }

    /// Convenience constructor from small integer fractions.
    pub fn from_parts(
        upper: &[(i64, i64)],
        lower: &[(i64, i64)],
        argument: (i64, i64),
    ) -> Result<Self> {
        let conv = |&(n, d): &(i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        Self::new(
            upper.iter().map(conv).collect(),
            lower.iter().map(conv).collect(),
            conv(&argument),
        )
    }

    /// Convergence excess `sum(lower) - sum(upper)` for `p = q + 1`.
    pub fn excess(&self) -> BigRational {
        let up: BigRational = self.upper.iter().sum();
        let lo: BigRational = self.lower.iter().sum();
        lo - up
    }

    /// Series coefficient ratio `c(n+1)/c(n)` including the `n!` factor,
    /// excluding the argument.
    fn coefficient_ratio(&self, n: u64) -> BigRational {
        let nn = BigRational::from(BigInt::from(n));
        let mut num = BigRational::one();
        for a in &self.upper {
            num *= a + &nn;
        }
        let mut den = &nn + BigRational::one();
        for b in &self.lower {
            den *= b + &nn;
        }
        num / den
    }
}

/// Pochhammer symbol `(a)_n = a (a+1) ... (a+n-1)` at working precision;
/// the empty product is 1. Exact rational product, converted once.
pub fn pochhammer(a: &BigRational, n: u64, ctx: &PrecisionContext) -> Result<BigFloat> {
    ctx.validate()?;
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    real::from_rational(&acc, ctx.working_bits())
}

/// Gauss hypergeometric function by direct term summation with a ratio
/// recurrence, for `|z| <= 0.99`. Stops once the geometric tail bound drops
/// below the working target.
pub fn hyp2f1(params: &HypParams, ctx: &PrecisionContext) -> Result<BigFloat> {
    ctx.validate()?;
    if params.upper.len() != 2 || params.lower.len() != 1 {
        return Err(Error::InvalidArgument {
            reason: "hyp2f1 takes exactly two upper and one lower parameter".into(),
        });
    }
    let z = &params.argument;
    let limit = BigRational::new(BigInt::from(99), BigInt::from(100));
    if z.abs() > limit {
        return Err(Error::InvalidArgument {
            reason: format!("argument {z} is outside the summation domain |z| <= 0.99"),
        });
    }
    let p = ctx.working_bits();
    let one = BigFloat::from_word(1, p);
    if z.is_zero() {
        return Ok(one);
    }

    let z_f = z.to_f64().unwrap_or(0.0);
    let eps = real::pow10(-(ctx.working_digits() as i64), p);
    let mut term = one.clone();
    let mut sum = one;
    let cap = (ctx.working_digits() as u64) * 600 + 1_000;
    for n in 0..cap {
        let factor = params.coefficient_ratio(n) * z;
        let fnum = real::from_bigint(factor.numer(), p);
        let fden = real::from_bigint(factor.denom(), p);
        term = real::checked(term.mul(&fnum, p, RM))?;
        term = real::checked(term.div(&fden, p, RM))?;
        sum = real::checked(sum.add(&term, p, RM))?;

        // Tail majorant: later ratios stay below r = |z| * max(1, current
        // coefficient ratio, next coefficient ratio); the coefficient ratio
        // approaches 1 monotonically for the supported parameter ranges.
        let c_now = factor.to_f64().unwrap_or(1.0).abs() / z_f.abs().max(f64::MIN_POSITIVE);
        let c_next = params
            .coefficient_ratio(n + 1)
            .to_f64()
            .unwrap_or(1.0)
            .abs();
        let r = z_f.abs() * c_now.max(c_next).max(1.0) * 1.000001;
        if r < 1.0 {
            let tail_scale = real::checked(BigFloat::from_f64(r / (1.0 - r), p))?;
            let tail = real::checked(term.abs().mul(&tail_scale, p, RM))?;
            if real::lt(&tail, &eps) {
                return Ok(sum);
            }
        }
    }
    Err(Error::NotConverged {
        reason: "hyp2f1 summation exceeded its term budget".into(),
    })
}

/// Residual `|lhs - rhs|` of the Euler (Pfaff) transformation
/// `2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))`, with both sides
/// summed directly. Requires `|z| < 1` and `|z/(z-1)| < 1`.
pub fn euler_transform_check(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
    ctx: &PrecisionContext,
) -> Result<BigFloat> {
    ctx.validate()?;
    let one = BigRational::one();
    let w = z / (z - &one);
    if z.abs() >= one || w.abs() >= one {
        return Err(Error::InvalidArgument {
            reason: "both z and z/(z-1) must lie inside the unit disk".into(),
        });
    }
    let p = ctx.working_bits();
    let lhs = hyp2f1(
        &HypParams::new(vec![a.clone(), b.clone()], vec![c.clone()], z.clone())?,
        ctx,
    )?;
    let rhs_series = hyp2f1(
        &HypParams::new(vec![a.clone(), c - b], vec![c.clone()], w)?,
        ctx,
    )?;
    // (1-z)^(-a) via pow; 1-z is positive since z < 1.
    let base = real::from_rational(&(&one - z), p)?;
    let expo = real::from_rational(&(-a), p)?;
    let scale = real::with_consts(|cc| real::checked(base.pow(&expo, p, RM, cc)))?;
    let rhs = real::checked(scale.mul(&rhs_series, p, RM))?;
    Ok(real::checked(lhs.sub(&rhs, p, RM))?.abs())
}

/// Partial sum plus fitted tail estimate from a coarse `f64` evaluation.
#[derive(Debug, Clone, Copy)]
pub struct CoarseSum {
    pub value: f64,
    /// Integral-comparison tail estimate; an estimate, not a bound.
    pub tail_estimate: f64,
}

/// Coarse `3F2` at the unit argument: a direct `f64` partial sum of
/// `n_terms` terms plus the tail estimate `C N^(-excess) / excess` with `C`
/// fitted from the first omitted term. The supported instances decay like
/// `n^(-1-excess)`, far too slowly for high precision; this oracle is
/// deliberately coarse.
pub fn hyp3f2_unit_coarse(params: &HypParams, n_terms: u64) -> Result<CoarseSum> {
    if params.upper.len() != 3 || params.lower.len() != 2 {
        return Err(Error::InvalidArgument {
            reason: "hyp3f2_unit_coarse takes exactly three upper and two lower parameters".into(),
        });
    }
    if !params.argument.is_one() {
        return Err(Error::InvalidArgument {
            reason: "hyp3f2_unit_coarse evaluates the series at z = 1 only".into(),
        });
    }
    let excess = params.excess();
    if !excess.is_positive() {
        return Err(Error::InvalidArgument {
            reason: "nonpositive convergence excess".into(),
        });
    }
    if n_terms < 1_000 {
        return Err(Error::InvalidArgument {
            reason: "coarse 3F2 needs at least 1000 terms".into(),
        });
    }
    let ups: Vec<f64> = params.upper.iter().map(|r| r.to_f64().unwrap()).collect();
    let los: Vec<f64> = params.lower.iter().map(|r| r.to_f64().unwrap()).collect();
    let x = excess.to_f64().unwrap();

    let mut term = 1f64;
    let mut sum = 0f64;
    for n in 0..n_terms {
        sum += term;
        let nf = n as f64;
        term *= (ups[0] + nf) * (ups[1] + nf) * (ups[2] + nf)
            / ((los[0] + nf) * (los[1] + nf) * (1.0 + nf));
    }
    // term now holds the first omitted term t_N ~ C N^(-1-x); the tail is
    // approximately the integral C N^(-x)/x = t_N * N / x.
    let tail_estimate = term.abs() * n_terms as f64 / x;
    Ok(CoarseSum {
        value: sum,
        tail_estimate,
    })
}
