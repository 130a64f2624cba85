//! Arbitrary-precision summation of the series kernels.
//!
//! Two summation routes are kept: incremental big-real recurrence summation
//! ([`sum_incremental`]) and big-integer binary splitting
//! ([`sum_binary_splitting`]). They share the kernel specs and are pinned
//! against each other by the consistency tests. Stopping criteria use
//! rigorous rational tail bounds, never the asymptotic estimates, which are
//! advisory only.
//!
//! Elementary big-real operations (`+ - * / sqrt ln pi`) come from the
//! underlying arbitrary-precision layer with at most 1 ulp error each at the
//! working precision; that contract is assumed here, not re-verified.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use astro_float::BigFloat;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::kernels::{self, SeriesId, SeriesSpec};
use crate::real::{self, RM};

/// Minimum admissible guard digits.
pub const MIN_GUARD_DIGITS: u32 = 5;

/// Default guard digits for a fresh context.
pub const DEFAULT_GUARD_DIGITS: u32 = 20;

/// Target digits, guard digits and rounding policy for big-real arithmetic.
///
/// Working precision is `ceil((target + guard) * log2(10))` bits or more;
/// rounding is fixed to round-to-nearest (ties to even).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    /// Context for `target_digits` decimal digits with the default guard.
    pub fn new(target_digits: u32) -> Result<Self> {
        Self::with_guard(target_digits, DEFAULT_GUARD_DIGITS)
    }

    /// Context with an explicit guard.
    pub fn with_guard(target_digits: u32, guard_digits: u32) -> Result<Self> {
        let ctx = PrecisionContext {
            target_digits,
            guard_digits,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_digits < 1 {
            return Err(Error::InvalidPrecision {
                reason: "target digits must be at least 1".into(),
            });
        }
        if self.guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::InvalidPrecision {
                reason: format!("guard digits must be at least {MIN_GUARD_DIGITS}"),
            });
        }
        Ok(())
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Total decimal digits carried by the working precision.
    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Working precision in bits.
    pub fn working_bits(&self) -> usize {
        bits_for_digits(self.working_digits() as u64)
    }

    /// The fixed rounding policy.
    pub fn rounding(&self) -> astro_float::RoundingMode {
        RM
    }
}

/// Binary precision comfortably covering `digits` decimal digits.
pub fn bits_for_digits(digits: u64) -> usize {
    (digits as f64 * real::LOG2_10).ceil() as usize + 64
}

/// How a partial sum is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    /// Seed `t(n0)` exactly, multiply by the term ratio at working precision.
    Incremental,
    /// Big-integer (P, Q, T) tree with a single final division.
    BinarySplitting,
}

impl SumMethod {
    pub fn name(self) -> &'static str {
        match self {
            SumMethod::Incremental => "incremental",
            SumMethod::BinarySplitting => "binsplit",
        }
    }
}

impl core::str::FromStr for SumMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "incremental" => Ok(SumMethod::Incremental),
            "binsplit" => Ok(SumMethod::BinarySplitting),
            other => Err(Error::InvalidArgument {
                reason: format!("unknown method `{other}` (expected incremental or binsplit)"),
            }),
        }
    }
}

/// Value of a truncated series with a rigorous tail bound and work counters.
#[derive(Debug, Clone)]
pub struct PartialSumResult {
    pub id: SeriesId,
    /// Last summed index `N` (the sum covers `n0..=N`).
    pub last_index: u64,
    /// `S_N` at working precision, additive constant included.
    pub value: BigFloat,
    /// Rigorous upper bound on `|S_inf - S_N|`, excluding rounding.
    pub tail_bound: BigFloat,
    pub terms_used: u64,
    pub elapsed: Duration,
}

/// Big-integer triple representing a summed index range for binary splitting.
///
/// Over `[a, b)` the node carries `P = prod p(n)`, `Q = prod q(n)` for the
/// signed ratio polynomials `p/q`, and `T` such that
/// `T / Q = sum_{k=a}^{b-1} prod_{j=a}^{k-1} p(j)/q(j)`,
/// i.e. the range's term sum in units of `t(a)`. Merging adjacent ranges
/// obeys `T(a,b) = T(a,m) Q(m,b) + P(a,m) T(m,b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinSplitNode {
    pub p: BigInt,
    pub q: BigInt,
    pub t: BigInt,
    /// Half-open index interval `[a, b)`.
    pub range: (u64, u64),
}

impl BinSplitNode {
    /// Node for the single index `n`: reproduces that term (`T/Q = 1`
    /// relative to `t(n)`) and carries the ratio factors for merges.
    pub fn leaf(spec: &SeriesSpec, n: u64) -> Self {
        let q = spec.ratio_den_at(n);
        BinSplitNode {
            p: spec.ratio_num_at(n),
            t: q.clone(),
            q,
            range: (n, n + 1),
        }
    }

    /// Merges two adjacent ranges.
    pub fn merge(left: &Self, right: &Self) -> Self {
        debug_assert_eq!(left.range.1, right.range.0, "ranges must be adjacent");
        BinSplitNode {
            p: &left.p * &right.p,
            q: &left.q * &right.q,
            t: &left.t * &right.q + &left.p * &right.t,
            range: (left.range.0, right.range.1),
        }
    }

    /// Builds the tree over `[a, b)` bottom-up.
    pub fn build(spec: &SeriesSpec, a: u64, b: u64) -> Self {
        debug_assert!(a < b);
        if b - a == 1 {
            Self::leaf(spec, a)
        } else {
            let m = a + (b - a) / 2;
            Self::merge(&Self::build(spec, a, m), &Self::build(spec, m, b))
        }
    }

    /// Exact rational partial sum `sum_{n=a}^{b-1} t(n)` given `t(a)`.
    pub fn rational_sum(&self, t_a: &BigRational) -> BigRational {
        t_a * BigRational::new(self.t.clone(), self.q.clone())
    }
}

fn timer() -> Instant {
    Instant::now()
}

/// `S_N` by incremental recurrence summation: the first term is seeded
/// exactly, each subsequent term multiplies by the exact ratio at working
/// precision, and the additive constant is added last. The value is correct
/// to within `4N + 4` units in the last place of the working precision.
pub fn sum_incremental(id: SeriesId, n: u64, ctx: &PrecisionContext) -> Result<PartialSumResult> {
    ctx.validate()?;
    let spec = kernels::spec(id);
    spec.check_index(n)?;
    let start = timer();
    let terms = n - spec.start_index + 1;
    // Extra guard absorbs one rounding step per summed term.
    let grow = (terms as f64).log10().ceil().max(0.0) as u64;
    let p = bits_for_digits(ctx.working_digits() as u64 + grow);

    let mut term = real::from_rational(&kernels::first_term(id), p)?;
    let mut sum = term.clone();
    for k in spec.start_index..n {
        let num = real::from_bigint(&spec.ratio_num_at(k), p);
        let den = real::from_bigint(&spec.ratio_den_at(k), p);
        term = real::checked(term.mul(&num, p, RM))?;
        term = real::checked(term.div(&den, p, RM))?;
        sum = real::checked(sum.add(&term, p, RM))?;
    }
    let constant = kernels::additive_constant(id, ctx)?;
    if !constant.is_zero() {
        sum = real::checked(sum.add(&constant, p, RM))?;
    }
    let mut value = sum;
    value.set_precision(ctx.working_bits(), RM).map_err(Error::Arithmetic)?;

    Ok(PartialSumResult {
        id,
        last_index: n,
        value,
        tail_bound: TailMajorant::tail_bound_value(id, n, ctx.working_bits())?,
        terms_used: terms,
        elapsed: start.elapsed(),
    })
}

/// `S_N` by binary splitting: builds the `(P, Q, T)` tree over `[n0, N]`,
/// performs one big-real division `T/Q` at the end, scales by the exact
/// first term and adds the additive constant. Mathematically identical to
/// [`sum_incremental`] up to working-precision rounding. Rejects the
/// sublinear baseline series.
pub fn sum_binary_splitting(
    id: SeriesId,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<PartialSumResult> {
    ctx.validate()?;
    if !id.is_geometric() {
        return Err(Error::UnsupportedSeries {
            series: id,
            operation: "sum_binary_splitting",
        });
    }
    let spec = kernels::spec(id);
    spec.check_index(n)?;
    let start = timer();
    let p = ctx.working_bits();
    let t0 = kernels::first_term(id);

    let mut value = if n == spec.start_index {
        real::from_rational(&t0, p)?
    } else {
        let node = BinSplitNode::build(spec, spec.start_index, n + 1);
        // S = t0 * T/Q; numerator and denominator are truncated to working
        // precision before the single division.
        let num = real::from_bigint(&(t0.numer() * &node.t), p);
        let den = real::from_bigint(&(t0.denom() * &node.q), p);
        real::checked(num.div(&den, p, RM))?
    };
    let constant = kernels::additive_constant(id, ctx)?;
    if !constant.is_zero() {
        value = real::checked(value.add(&constant, p, RM))?;
    }

    Ok(PartialSumResult {
        id,
        last_index: n,
        value,
        tail_bound: TailMajorant::tail_bound_value(id, n, p)?,
        terms_used: n - spec.start_index + 1,
        elapsed: start.elapsed(),
    })
}

/// Exact rational tail bound for a geometric kernel.
///
/// For the alternating kernels this is `|t(N+1)|` (alternating-series
/// remainder, valid because `|ratio| < 1` for all admissible `n`). For
/// Ramanujan it is `|t(N+1)| / (1 - 1/4)`: the ratio sequence increases
/// monotonically to its limit `1/4`, so `1/4` majorizes every later ratio.
///
/// Cost grows with `N` (direct binomial evaluation); the summation engine
/// uses the cheap integer majorant instead for stopping decisions.
pub fn tail_bound(id: SeriesId, n: u64) -> Result<BigRational> {
    if !id.is_geometric() {
        return Err(Error::UnsupportedSeries {
            series: id,
            operation: "tail_bound",
        });
    }
    kernels::spec(id).check_index(n)?;
    let next = kernels::term_exact(id, n + 1)?.abs();
    Ok(if kernels::spec(id).alternating {
        next
    } else {
        next * BigRational::new(BigInt::from(4), BigInt::from(3))
    })
}

/// Cheap rigorous upper bound on `|t(n)|`, maintained as a 128-bit integer
/// mantissa times a power of two. Every step rounds up in exact integer
/// arithmetic, so the bound never dips below the true magnitude.
struct TailMajorant {
    spec: &'static SeriesSpec,
    /// Current index: the bound covers `|t(index)|`.
    index: u64,
    mantissa: BigUint,
    exp2: i64,
}

const MAJORANT_BITS: u64 = 128;

impl TailMajorant {
    fn new(id: SeriesId) -> Self {
        let spec = kernels::spec(id);
        let t0 = kernels::first_term(id);
        let num = t0.numer().magnitude().clone();
        let den = t0.denom().magnitude().clone();
        // ceil(num * 2^s / den) with s sized for a 128-bit mantissa.
        let s = (MAJORANT_BITS + den.bits()).saturating_sub(num.bits());
        let mantissa = ((num << s) + &den - BigUint::one()) / &den;
        let mut m = TailMajorant {
            spec,
            index: spec.start_index,
            mantissa,
            exp2: -(s as i64),
        };
        m.renormalize();
        m
    }

    fn renormalize(&mut self) {
        let bits = self.mantissa.bits();
        if bits > MAJORANT_BITS {
            let sh = bits - MAJORANT_BITS;
            self.mantissa = (&self.mantissa >> sh) + BigUint::one();
            self.exp2 += sh as i64;
        } else if bits < MAJORANT_BITS {
            // Keep the mantissa at full width so the ceiling slack stays
            // at the 2^-128 scale (left shifts are exact).
            let sh = MAJORANT_BITS - bits;
            self.mantissa = &self.mantissa << sh;
            self.exp2 -= sh as i64;
        }
    }

    /// Advances the bound from `|t(index)|` to `|t(index + 1)|`.
    fn step(&mut self) {
        let num = self.spec.ratio_num_at(self.index).magnitude().clone();
        let den = self.spec.ratio_den_at(self.index).magnitude().clone();
        self.mantissa = (&self.mantissa * num + &den - BigUint::one()) / den;
        self.renormalize();
        self.index += 1;
    }

    /// Upper bound on `log10 |t(index)|` (small positive f64 slack added).
    fn log10_upper(&self) -> f64 {
        self.mantissa.to_f64().unwrap_or(f64::MAX).log10()
            + self.exp2 as f64 * core::f64::consts::LOG10_2
            + 1e-9
    }

    /// The tail bound for the series truncated at `last_index`, as a float.
    /// Requires the majorant to currently sit at `last_index + 1`.
    fn to_tail_bigfloat(&self, p: usize) -> Result<BigFloat> {
        let mut m = self.mantissa.clone();
        if !self.spec.alternating {
            // Geometric majorant: multiply by 1/(1 - rho) = 4/3, rounded up.
            m = (m * BigUint::from(4u32) + BigUint::from(2u32)) / BigUint::from(3u32);
        }
        let f = real::from_bigint(&BigInt::from(m), p);
        let e = self.exp2;
        let e32 = i32::try_from(e).map_err(|_| Error::InvalidArgument {
            reason: "tail bound exponent out of range".into(),
        })?;
        Ok(real::scale2(&f, e32))
    }

    /// Tail bound value for `PartialSumResult`: walks the ratio product from
    /// the first term up to `|t(n+1)|`. O(N) small-integer operations.
    fn tail_bound_value(id: SeriesId, n: u64, p: usize) -> Result<BigFloat> {
        let mut m = TailMajorant::new(id);
        while m.index <= n {
            m.step();
        }
        m.to_tail_bigfloat(p)
    }

    /// Smallest index `N` (approximately minimal) whose tail bound drops
    /// below `10^-threshold_digits`, together with the majorant positioned
    /// at `N + 1`.
    fn scan_to_threshold(id: SeriesId, threshold_digits: f64) -> Result<(u64, TailMajorant)> {
        let mut m = TailMajorant::new(id);
        let adj = if m.spec.alternating {
            0.0
        } else {
            (4f64 / 3f64).log10()
        };
        // Generous iteration cap: every kernel gains >= 0.6 digits per term.
        let cap = (threshold_digits.abs() * 4.0 + 1000.0) as u64;
        for _ in 0..cap {
            m.step();
            // The majorant is rigorous; the band covers f64 log evaluation.
            if m.log10_upper() + adj < -threshold_digits - 0.02 {
                return Ok((m.index - 1, m));
            }
        }
        Err(Error::CrossCheck {
            reason: format!("tail scan for {id} did not reach 1e-{threshold_digits}"),
        })
    }
}

/// `S_N` with `N` chosen so that the rigorous tail bound drops below
/// `10^-(D + g/2)` with the minimum guard `g = 5`. The returned value
/// differs from the series limit by less than `10^-D`.
pub fn sum_to_digits(id: SeriesId, digits: u32) -> Result<(BigFloat, u64)> {
    let r = sum_for_digits(id, digits, SumMethod::BinarySplitting)?;
    Ok((r.value, r.last_index))
}

/// As [`sum_to_digits`] but with the evaluation method exposed and the full
/// result returned.
pub fn sum_for_digits(id: SeriesId, digits: u32, method: SumMethod) -> Result<PartialSumResult> {
    if digits < 1 {
        return Err(Error::InvalidPrecision {
            reason: "digit count must be at least 1".into(),
        });
    }
    if !id.is_geometric() {
        return Err(Error::UnsupportedSeries {
            series: id,
            operation: "sum_to_digits",
        });
    }
    let threshold = digits as f64 + MIN_GUARD_DIGITS as f64 / 2.0;
    let (n, _) = TailMajorant::scan_to_threshold(id, threshold)?;
    let ctx = PrecisionContext::with_guard(digits, MIN_GUARD_DIGITS)?;
    match method {
        SumMethod::Incremental => sum_incremental(id, n, &ctx),
        SumMethod::BinarySplitting => sum_binary_splitting(id, n, &ctx),
    }
}

static REFERENCE_CACHE: OnceLock<Mutex<HashMap<u32, BigFloat>>> = OnceLock::new();

/// Reference value of `G`, correct to at least `digits` decimal digits.
///
/// Computed via the `theorem1` and `ramanujan` kernels independently at
/// `digits + 10` digits; the two must agree to at least `digits + 5` digits
/// or the call fails with a fatal cross-check error. Results are cached.
pub fn reference_g(digits: u32) -> Result<BigFloat> {
    if digits < 1 {
        return Err(Error::InvalidPrecision {
            reason: "digit count must be at least 1".into(),
        });
    }
    let cache = REFERENCE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&digits) {
        return Ok(v.clone());
    }

    let inner = digits + 10;
    let (a, _) = sum_to_digits(SeriesId::Theorem1, inner)?;
    let (b, _) = sum_to_digits(SeriesId::Ramanujan, inner)?;
    let p = bits_for_digits(inner as u64);
    let agree = real::agreement_digits(&a, &b, p, inner as i64 + 20);
    if agree < digits as i64 + 5 {
        return Err(Error::CrossCheck {
            reason: format!(
                "theorem1 and ramanujan reference values agree to only {agree} digits (need {})",
                digits + 5
            ),
        });
    }
    let mut value = a;
    value
        .set_precision(bits_for_digits(digits as u64), RM)
        .map_err(Error::Arithmetic)?;
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(digits, value.clone());
    Ok(value)
}

/// Result of a digit-string computation.
#[derive(Debug, Clone)]
pub struct DigitString {
    /// `"0."` followed by the first `digits` decimal digits of `G`.
    pub digits: String,
    /// Last summed index.
    pub n_used: u64,
    /// Terms summed.
    pub terms_used: u64,
    /// Wall time of the final (accepted) summation.
    pub elapsed: Duration,
}

/// Computes the leading `digits` decimal digits of `G` through one series.
///
/// The digit string is a truncation of `G`'s decimal expansion (the value
/// itself is accurate to better than `10^-digits`). A guard zone past the
/// requested digits is inspected; if it is all nines or all zeros the
/// truncation point is ambiguous at the current precision and the sum is
/// redone with a deeper tail threshold, so every series yields the same
/// string.
pub fn constant_digits(id: SeriesId, digits: u32, method: SumMethod) -> Result<DigitString> {
    if digits < 1 {
        return Err(Error::InvalidPrecision {
            reason: "digit count must be at least 1".into(),
        });
    }
    for extra in [8u32, 20, 60, 140] {
        let r = sum_for_digits(id, digits + extra, method)?;
        let (neg, mantissa, e10) = real::decimal_parts(&r.value)?;
        if neg || e10 != 0 {
            return Err(Error::CrossCheck {
                reason: format!("series {id} sum is outside (0, 1): exponent {e10}"),
            });
        }
        let need = digits as usize + 4;
        if mantissa.len() < need {
            continue;
        }
        // Guard zone: the digits the truncation decision depends on.
        let zone = &mantissa[digits as usize..(digits as usize + 4).min(mantissa.len())];
        let ambiguous = zone.iter().all(|&d| d == 9) || zone.iter().all(|&d| d == 0);
        if ambiguous {
            continue;
        }
        let mut s = String::with_capacity(digits as usize + 2);
        s.push_str("0.");
        for &d in &mantissa[..digits as usize] {
            s.push((b'0' + d) as char);
        }
        return Ok(DigitString {
            digits: s,
            n_used: r.last_index,
            terms_used: r.terms_used,
            elapsed: r.elapsed,
        });
    }
    Err(Error::CrossCheck {
        reason: format!("digit rendering for {id} did not stabilize"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn context_invariants() {
        assert!(PrecisionContext::new(0).is_err());
        assert!(PrecisionContext::with_guard(10, 4).is_err());
        let c = ctx(100);
        assert_eq!(c.guard_digits(), DEFAULT_GUARD_DIGITS);
        assert!(c.working_bits() as f64 >= (c.working_digits() as f64) * real::LOG2_10);
    }

    #[test]
    fn incremental_two_terms_theorem1() {
        // S_1 = 49/54.
        let r = sum_incremental(SeriesId::Theorem1, 1, &ctx(30)).unwrap();
        let want = real::from_rational(
            &BigRational::new(BigInt::from(49), BigInt::from(54)),
            r.value.precision().unwrap(),
        )
        .unwrap();
        let d = real::agreement_digits(&r.value, &want, 256, 100);
        assert!(d >= 45, "agreement {d}");
        assert_eq!(r.terms_used, 2);
    }

    #[test]
    fn incremental_single_term_sun() {
        let r = sum_incremental(SeriesId::Sun, 1, &ctx(30)).unwrap();
        let one = BigFloat::from_word(1, 64);
        let d = real::agreement_digits(&r.value, &one, 256, 100);
        assert!(d >= 45, "agreement {d}");
    }

    #[test]
    fn incremental_ramanujan_includes_constant() {
        // S_0 = 3/8 + pi/8 ln(2+sqrt(3)) = 0.89216815675825854...
        let r = sum_incremental(SeriesId::Ramanujan, 0, &ctx(40)).unwrap();
        let want = real::parse_decimal("0.8921681567582585410167908853367030793", 256);
        let d = real::agreement_digits(&r.value, &want, 256, 100);
        assert!(d >= 36, "agreement {d}");
    }

    #[test]
    fn binsplit_collapses_for_two_terms() {
        let c = ctx(30);
        let a = sum_binary_splitting(SeriesId::Theorem1, 1, &c).unwrap();
        let b = sum_incremental(SeriesId::Theorem1, 1, &c).unwrap();
        let d = real::agreement_digits(&a.value, &b.value, c.working_bits(), 200);
        assert!(d >= 30, "agreement {d}");
    }

    #[test]
    fn binsplit_rejects_baseline() {
        assert!(matches!(
            sum_binary_splitting(SeriesId::Beta2Naive, 10, &ctx(10)),
            Err(Error::UnsupportedSeries { .. })
        ));
    }

    #[test]
    fn node_merge_law_matches_direct_build() {
        let spec = kernels::spec(SeriesId::Theorem1);
        let whole = BinSplitNode::build(spec, 0, 9);
        for m in 1..9 {
            let left = BinSplitNode::build(spec, 0, m);
            let right = BinSplitNode::build(spec, m, 9);
            assert_eq!(BinSplitNode::merge(&left, &right), whole, "split at {m}");
        }
    }

    #[test]
    fn node_rational_sum_is_exact() {
        for id in SeriesId::GEOMETRIC {
            let spec = kernels::spec(id);
            let n0 = spec.start_index;
            let node = BinSplitNode::build(spec, n0, n0 + 12);
            let got = node.rational_sum(&kernels::first_term(id));
            let mut want = BigRational::zero();
            for n in n0..n0 + 12 {
                want += kernels::term_exact(id, n).unwrap();
            }
            assert_eq!(got, want, "series {id}");
        }
    }

    #[test]
    fn tail_bound_examples() {
        let r = tail_bound(SeriesId::Theorem1, 0).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(5), BigInt::from(54)));
        let r = tail_bound(SeriesId::Ramanujan, 0).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(1), BigInt::from(36)));
        let t6 = tail_bound(SeriesId::Theorem1, 5).unwrap();
        let v = t6.to_f64().unwrap();
        assert!((v - 1.5124950130005016e-6).abs() < 1e-18, "got {v}");
        assert!(tail_bound(SeriesId::Beta2Naive, 3).is_err());
    }

    #[test]
    fn majorant_dominates_exact_tail() {
        for id in SeriesId::GEOMETRIC {
            let n0 = kernels::spec(id).start_index;
            for n in [n0, n0 + 3, n0 + 17, n0 + 40] {
                let exact = tail_bound(id, n).unwrap();
                let exact_f = real::from_rational(&exact, 192).unwrap();
                let major = TailMajorant::tail_bound_value(id, n, 192).unwrap();
                // major >= exact, and within a factor of 1.01.
                assert!(!real::lt(&major, &exact_f), "series {id} n={n}");
                let ratio = major.div(&exact_f, 192, RM);
                let limit = real::parse_decimal("1.01", 192);
                assert!(real::le(&ratio, &limit), "series {id} n={n} ratio {ratio}");
            }
        }
    }

    #[test]
    fn sum_to_digits_theorem1_ten() {
        let (v, n_used) = sum_to_digits(SeriesId::Theorem1, 10).unwrap();
        assert_eq!(n_used, 13);
        let want = real::parse_decimal("0.9159655941772190", 128);
        let d = real::agreement_digits(&v, &want, 128, 100);
        assert!(d >= 11, "agreement {d}");
    }

    #[test]
    fn sum_to_digits_matches_across_kernels() {
        let (a, _) = sum_to_digits(SeriesId::Theorem1, 10).unwrap();
        let (b, _) = sum_to_digits(SeriesId::Ramanujan, 10).unwrap();
        let (c, _) = sum_to_digits(SeriesId::Sun, 10).unwrap();
        assert!(real::agreement_digits(&a, &b, 128, 50) >= 10);
        assert!(real::agreement_digits(&a, &c, 128, 50) >= 10);
    }

    #[test]
    fn reference_value_digits() {
        let g = reference_g(10).unwrap();
        let want = real::parse_decimal("0.9159655941772190", 128);
        assert!(real::agreement_digits(&g, &want, 128, 50) >= 10);
        // Cached call returns the same value.
        let g2 = reference_g(10).unwrap();
        assert_eq!(g.cmp(&g2), Some(0));
    }

    #[test]
    fn reference_cache_is_thread_safe() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| reference_g(25).unwrap()))
            .collect();
        let values: Vec<BigFloat> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for v in &values[1..] {
            assert_eq!(v.cmp(&values[0]), Some(0));
        }
    }

    #[test]
    fn digit_string_examples() {
        let d = constant_digits(SeriesId::Theorem1, 10, SumMethod::BinarySplitting).unwrap();
        assert_eq!(d.digits, "0.9159655941");
        let d1 = constant_digits(SeriesId::Theorem1, 1, SumMethod::BinarySplitting).unwrap();
        assert_eq!(d1.digits, "0.9");
        let dr = constant_digits(SeriesId::Ramanujan, 10, SumMethod::Incremental).unwrap();
        assert_eq!(dr.digits, "0.9159655941");
    }

    #[test]
    fn rejects_invalid_requests() {
        assert!(sum_to_digits(SeriesId::Beta2Naive, 10).is_err());
        assert!(sum_to_digits(SeriesId::Theorem1, 0).is_err());
        assert!(sum_incremental(SeriesId::Lupas, 0, &ctx(10)).is_err());
        assert!(reference_g(0).is_err());
    }
}
