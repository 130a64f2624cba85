//! Thin helpers over the arbitrary-precision float layer.
//!
//! The underlying layer supplies `+ - * / sqrt ln exp sin pi ...` with at
//! most 1 ulp error per operation at the requested precision; everything
//! here is plumbing between that layer and the exact big-integer/rational
//! world: conversions, decimal rendering, and a process-wide constants
//! cache.

use std::sync::{Mutex, OnceLock};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Rounding mode for all big-real arithmetic (round to nearest, ties to even).
pub const RM: RoundingMode = RoundingMode::ToEven;

/// log2(10), used to size binary working precision from decimal digits.
pub const LOG2_10: f64 = core::f64::consts::LOG2_10;

static CONSTS: OnceLock<Mutex<Consts>> = OnceLock::new();

/// Runs `f` with the process-wide constants cache (pi, ln 2, ...).
pub fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    let cc = CONSTS.get_or_init(|| {
        Mutex::new(Consts::new().expect("constants cache allocation"))
    });
    let mut guard = cc.lock().unwrap_or_else(|e| e.into_inner());
    f(&mut guard)
}

/// Maps non-finite results from the arithmetic layer to errors.
pub fn checked(v: BigFloat) -> Result<BigFloat> {
    if v.is_nan() {
        Err(v
            .err()
            .map(Error::Arithmetic)
            .unwrap_or_else(|| Error::InvalidArgument {
                reason: "arithmetic produced NaN".into(),
            }))
    } else if v.is_inf() {
        Err(Error::Arithmetic(astro_float::Error::ExponentOverflow(
            v.sign().unwrap_or(Sign::Pos),
        )))
    } else {
        Ok(v)
    }
}

/// Converts a big integer to a float with `p` bits of precision.
///
/// Integers wider than `p + 64` bits are truncated toward zero first, so the
/// result is exact when the integer fits and within 1 ulp otherwise.
pub fn from_bigint(x: &BigInt, p: usize) -> BigFloat {
    let (sign, mag) = (x.sign(), x.magnitude());
    if mag.is_zero() {
        return BigFloat::new(p);
    }
    let bits = mag.bits() as usize;
    let keep = p + 64;
    let (t, dropped) = if bits > keep {
        (mag >> (bits - keep), bits - keep)
    } else {
        (mag.clone(), 0)
    };
    let bytes = t.to_bytes_le();
    let mut words: Vec<astro_float::Word> = Vec::with_capacity(bytes.len() / 8 + 1);
    for chunk in bytes.chunks(8) {
        let mut w = [0u8; 8];
        w[..chunk.len()].copy_from_slice(chunk);
        words.push(astro_float::Word::from_le_bytes(w));
    }
    // from_words treats the words as a fraction in [1/2, 1) times 2^e.
    let e = dropped as i64 + words.len() as i64 * 64;
    let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
    BigFloat::from_words(&words, s, e as astro_float::Exponent)
}

/// Converts an exact rational to a float with `p` bits of precision.
pub fn from_rational(r: &BigRational, p: usize) -> Result<BigFloat> {
    let num = from_bigint(r.numer(), p + 64);
    let den = from_bigint(r.denom(), p + 64);
    checked(num.div(&den, p, RM))
}

/// `10^k` at `p` bits (exact big-integer power, one rounding for k < 0).
pub fn pow10(k: i64, p: usize) -> BigFloat {
    let mag = BigInt::from(10u32).pow(k.unsigned_abs() as u32);
    let f = from_bigint(&mag, p + 64);
    if k >= 0 {
        f
    } else {
        BigFloat::from_word(1, p).div(&f, p, RM)
    }
}

/// Parses a decimal literal at `p` bits. Panics on malformed input; intended
/// for verified in-source constants.
pub fn parse_decimal(s: &str, p: usize) -> BigFloat {
    with_consts(|cc| {
        let v = BigFloat::parse(s, Radix::Dec, p, RM, cc);
        assert!(!v.is_nan(), "malformed decimal literal {s}");
        v
    })
}

/// Decimal mantissa digits and exponent of `v`: the value equals
/// `0.d1 d2 ... * 10^e10` (sign returned separately).
pub fn decimal_parts(v: &BigFloat) -> Result<(bool, Vec<u8>, i64)> {
    let (s, digits, e) = with_consts(|cc| v.convert_to_radix(Radix::Dec, RoundingMode::None, cc))
        .map_err(Error::Arithmetic)?;
    Ok((s == Sign::Neg, digits, e as i64))
}

/// Scientific-notation string with `sig` significant digits, e.g. `-1.23e-45`.
/// Used for human-readable residual reporting.
pub fn sci_string(v: &BigFloat, sig: usize) -> String {
    if v.is_zero() {
        return "0".into();
    }
    match decimal_parts(v) {
        Ok((neg, digits, e10)) => {
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            let shown: Vec<u8> = digits.iter().copied().take(sig.max(1)).collect();
            out.push((b'0' + shown[0]) as char);
            if shown.len() > 1 {
                out.push('.');
                for d in &shown[1..] {
                    out.push((b'0' + d) as char);
                }
            }
            out.push('e');
            out.push_str(&(e10 - 1).to_string());
            out
        }
        Err(_) => format!("{v}"),
    }
}

/// Number of decimal digits after the point on which `a` and `b` agree,
/// i.e. the largest `d` with `|a - b| < 10^-d` (saturated at `cap`).
pub fn agreement_digits(a: &BigFloat, b: &BigFloat, p: usize, cap: i64) -> i64 {
    let diff = a.sub(b, p, RM).abs();
    if diff.is_zero() {
        return cap;
    }
    // |diff| = 0.d1 d2 ... * 10^e10 < 10^e10, so the values agree to -e10
    // decimal places (exactly, unlike the binary-exponent estimate).
    match decimal_parts(&diff) {
        Ok((_, _, e10)) => (-e10).min(cap),
        Err(_) => {
            let e = diff.exponent().unwrap_or(0) as f64;
            ((-e * core::f64::consts::LOG10_2).floor() as i64).min(cap)
        }
    }
}

/// `a < b` for finite values (`cmp` yields an arbitrary signed magnitude).
pub fn lt(a: &BigFloat, b: &BigFloat) -> bool {
    a.cmp(b).is_some_and(|s| s < 0)
}

/// `a <= b` for finite values.
pub fn le(a: &BigFloat, b: &BigFloat) -> bool {
    a.cmp(b).is_some_and(|s| s <= 0)
}

/// `a > b` for finite values.
pub fn gt(a: &BigFloat, b: &BigFloat) -> bool {
    a.cmp(b).is_some_and(|s| s > 0)
}

/// Lossy conversion to `f64` (overflows to infinity, underflows to zero).
pub fn to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, e, _)) = v.as_raw_parts() else {
        return f64::NAN;
    };
    // The mantissa is a binary fraction in [1/2, 1); the top two words are
    // more than enough for an f64.
    let k = words.len();
    let mut frac = 0.0f64;
    for i in 0..k.min(2) {
        frac += words[k - 1 - i] as f64 * (2f64).powi(-64 * (i as i32 + 1));
    }
    let val = frac * (2f64).powi(e);
    if sign == Sign::Neg {
        -val
    } else {
        val
    }
}

/// `v * 2^k` (exact exponent shift).
pub fn scale2(v: &BigFloat, k: i32) -> BigFloat {
    let mut out = v.clone();
    if let Some(e) = out.exponent() {
        if !out.is_zero() {
            out.set_exponent(e + k);
        }
    }
    out
}
