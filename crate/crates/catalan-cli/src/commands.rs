//! Implementations of the CLI subcommands.

use std::time::Instant;

use catalan::astro_float::RoundingMode;
use catalan::engine::{self, PrecisionContext, SumMethod};
use catalan::oracles::{self, QuadratureSpec};
use catalan::render;
use catalan::{asymptotics, BigFloat, SeriesId};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::report::*;

const RM: RoundingMode = RoundingMode::ToEven;

/// Exit codes: 0 success, 1 verification failure, 2 usage error,
/// 3 internal cross-check failure.
pub struct CmdOutput {
    pub text: String,
    pub exit_code: i32,
}

pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::usage(format!(
                "unknown format `{other}` (expected text, csv or json)"
            ))),
        }
    }
}

pub struct CliError {
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            exit_code: 2,
        }
    }
}

impl From<catalan::Error> for CliError {
    fn from(e: catalan::Error) -> Self {
        let exit_code = match &e {
            catalan::Error::CrossCheck { .. } => 3,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            exit_code,
        }
    }
}

fn parse_series(s: &str) -> Result<SeriesId, CliError> {
    s.parse::<SeriesId>().map_err(CliError::from)
}

fn parse_method(s: &str) -> Result<SumMethod, CliError> {
    s.parse::<SumMethod>().map_err(CliError::from)
}

pub fn run_compute(
    series: &str,
    digits: u32,
    method: &str,
    format: &str,
) -> Result<CmdOutput, CliError> {
    let t0 = Instant::now();
    let id = parse_series(series)?;
    let method = parse_method(method)?;
    let format = Format::parse(format)?;
    if matches!(format, Format::Csv) {
        return Err(CliError::usage("csv output is only available for `table`"));
    }
    if !id.is_geometric() {
        return Err(CliError::usage(
            "beta2_naive converges sublinearly and is not usable for digit computation",
        ));
    }

    let result = engine::constant_digits(id, digits, method)?;

    // Sanity cross-check of the leading digits against the two-kernel
    // reference; a mismatch is an internal inconsistency, never user error.
    let probe = digits.min(40);
    let reference = engine::reference_g(probe + 5)?;
    let p = engine::bits_for_digits(probe as u64 + 10);
    let value = render::parse_decimal(&result.digits, p);
    let agree = render::agreement_digits(&value, &reference, p, probe as i64 + 10);
    if agree < probe as i64 {
        return Err(CliError::from(catalan::Error::CrossCheck {
            reason: format!(
                "{series} digits agree with the reference to only {agree} of {probe} digits"
            ),
        }));
    }

    let elapsed_ms = t0.elapsed().as_millis() as u64;
    let results = ComputeResults {
        series: id.name().to_string(),
        digits,
        method: method.name().to_string(),
        conjectured: id.is_conjectured(),
        n_used: result.n_used,
        terms_used: result.terms_used,
        value: result.digits.clone(),
    };
    let text = match format {
        Format::Json => Envelope::new(
            "compute",
            json!({"series": id.name(), "digits": digits, "method": method.name()}),
            results,
            elapsed_ms,
        )
        .to_json(),
        _ => {
            let mut out = String::new();
            if id.is_conjectured() {
                out.push_str(
                    "note: this series is conjectured; the value is cross-checked against proven kernels\n",
                );
            }
            out.push_str(&format!(
                "series:  {}\nmethod:  {}\nN used:  {} ({} terms)\ntime:    {:.3} ms\n{}\n",
                id.name(),
                method.name(),
                result.n_used,
                result.terms_used,
                result.elapsed.as_secs_f64() * 1e3,
                result.digits,
            ));
            out
        }
    };
    Ok(CmdOutput {
        text,
        exit_code: 0,
    })
}

/// Two-significant-figure scientific rendering of a deviation.
fn deviation_cell(dev: &BigFloat) -> Result<String, CliError> {
    if dev.is_zero() {
        return Ok("+0.0e0".to_string());
    }
    let (neg, digits, e10) = render::decimal_parts(dev).map_err(CliError::from)?;
    let d = |i: usize| digits.get(i).copied().unwrap_or(0) as u32;
    // Round d1.d2d3 to two significant figures, half away from zero.
    let mut m = (d(0) * 100 + d(1) * 10 + d(2) + 5) / 10;
    let mut exp = e10 - 1;
    if m >= 100 {
        m /= 10;
        exp += 1;
    }
    Ok(format!(
        "{}{}.{}e{}",
        if neg { '-' } else { '+' },
        m / 10,
        m % 10,
        exp
    ))
}

pub fn run_table(n_list: &[u64], format: &str) -> Result<CmdOutput, CliError> {
    let t0 = Instant::now();
    let format = Format::parse(format)?;
    if n_list.is_empty() {
        return Err(CliError::usage("at least one N value is required"));
    }
    for &n in n_list {
        if n < 1 {
            return Err(CliError::usage("every N must be at least 1"));
        }
    }
    let n_max = *n_list.iter().max().unwrap();
    // Working precision sized to exceed the smallest deviation by a wide
    // margin: about 0.91 digits per term for the fastest kernel, plus slack.
    let work_digits = ((n_max as f64 * 0.91).ceil() as u32 + 30).max(50);
    let reference = engine::reference_g(work_digits)?;
    let ctx = PrecisionContext::new(work_digits).map_err(CliError::from)?;
    let p = ctx.working_bits();

    let mut rows = Vec::new();
    let mut full = Vec::new();
    for &n in n_list {
        let mut cells = Vec::new();
        let mut cells_full = Vec::new();
        for id in [
            SeriesId::Lupas,
            SeriesId::Ramanujan,
            SeriesId::Sun,
            SeriesId::Theorem1,
        ] {
            let n0 = catalan::kernels::spec(id).start_index;
            let last = n.max(n0);
            let sum = engine::sum_binary_splitting(id, last, &ctx)?;
            let dev = sum.value.sub(&reference, p, RM);
            cells.push(deviation_cell(&dev)?);
            cells_full.push(render::sci_string(&dev, 25));
        }
        rows.push(DeviationRow {
            n,
            lupas: cells[0].clone(),
            ramanujan: cells[1].clone(),
            sun: cells[2].clone(),
            theorem1: cells[3].clone(),
        });
        full.push(FullDeviationRow {
            n,
            lupas: cells_full[0].clone(),
            ramanujan: cells_full[1].clone(),
            sun: cells_full[2].clone(),
            theorem1: cells_full[3].clone(),
        });
    }
    let table = DeviationTable { rows };
    let elapsed_ms = t0.elapsed().as_millis() as u64;
    let text = match format {
        Format::Text => table.to_text(),
        Format::Csv => table.to_csv(),
        Format::Json => Envelope::new(
            "table",
            json!({"n": n_list, "work_digits": work_digits}),
            TableResults {
                rows: table.rows,
                full,
            },
            elapsed_ms,
        )
        .to_json(),
    };
    Ok(CmdOutput {
        text,
        exit_code: 0,
    })
}

pub fn run_estimate(series: &str, digits: u32, format: &str) -> Result<CmdOutput, CliError> {
    let t0 = Instant::now();
    let id = parse_series(series)?;
    let format = Format::parse(format)?;
    if matches!(format, Format::Csv) {
        return Err(CliError::usage("csv output is only available for `table`"));
    }
    let predicted = asymptotics::predict_terms_for_digits(id, digits)?;
    let rate = asymptotics::digits_per_term(id)?;
    let results = EstimateResults {
        series: id.name().to_string(),
        digits,
        predicted_terms: predicted,
        digits_per_term: rate,
    };
    let elapsed_ms = t0.elapsed().as_millis() as u64;
    let text = match format {
        Format::Json => Envelope::new(
            "estimate",
            json!({"series": id.name(), "digits": digits}),
            results,
            elapsed_ms,
        )
        .to_json(),
        _ => format!(
            "series:          {}\ntarget digits:   {}\npredicted N:     {}\ndigits per term: {:.5}\n",
            id.name(),
            digits,
            predicted,
            rate
        ),
    };
    Ok(CmdOutput {
        text,
        exit_code: 0,
    })
}

struct CheckRecorder {
    checks: Vec<CheckResult>,
}

impl CheckRecorder {
    fn new() -> Self {
        CheckRecorder { checks: Vec::new() }
    }

    fn record(&mut self, name: &str, residual: String, bound: String, passed: bool) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            residual,
            bound,
        });
    }

    fn record_f64(&mut self, name: &str, residual: f64, bound: f64) {
        self.record(
            name,
            format!("{residual:.3e}"),
            format!("{bound:.1e}"),
            residual.is_finite() && residual < bound,
        );
    }

    fn record_big(&mut self, name: &str, residual: &BigFloat, bound_exp10: i64) {
        let bound = render::pow10(bound_exp10, 192);
        self.record(
            name,
            render::sci_string(residual, 3),
            format!("1e{bound_exp10}"),
            render::lt(residual, &bound),
        );
    }
}

pub fn run_verify(level: &str, format: &str) -> Result<CmdOutput, CliError> {
    let t0 = Instant::now();
    let format = Format::parse(format)?;
    if matches!(format, Format::Csv) {
        return Err(CliError::usage("csv output is only available for `table`"));
    }
    let full = match level {
        "fast" => false,
        "full" => true,
        other => {
            return Err(CliError::usage(format!(
                "unknown level `{other}` (expected fast or full)"
            )))
        }
    };
    let mut rec = CheckRecorder::new();

    // Integral of theta/sin(theta) over [0, pi/2] against 2G.
    let quad_digits: u32 = if full { 30 } else { 15 };
    {
        let ctx = PrecisionContext::new(quad_digits)?;
        let quad = QuadratureSpec::default_for_digits(quad_digits);
        let p = engine::bits_for_digits(quad_digits as u64 + 10);
        let value = oracles::integral_theta_over_sin(&ctx, &quad)?;
        let two_g = double(&engine::reference_g(quad_digits + 5)?, p);
        let residual = value.sub(&two_g, p, RM).abs();
        rec.record_big(
            "integral_theta_over_sin",
            &residual,
            -(quad_digits as i64 - 2),
        );
    }

    // Same value through the arcsin closed form over [0, 1].
    {
        let digits = if full { 25 } else { 15 };
        let ctx = PrecisionContext::new(digits)?;
        let p = engine::bits_for_digits(digits as u64 + 10);
        let value = oracles::integral_arcsin_form(&ctx, 12)?;
        let two_g = double(&engine::reference_g(digits + 5)?, p);
        let residual = value.sub(&two_g, p, RM).abs();
        rec.record_big("integral_arcsin_form", &residual, -(digits as i64 - 2));
    }

    // 2F1 special values against the arcsin closed forms.
    {
        let ctx = PrecisionContext::new(30)?;
        let p = ctx.working_bits();
        let mut worst_a = BigFloat::new(p);
        let mut worst_b = BigFloat::new(p);
        for x10 in [1i64, 3, 5, 7] {
            let x = BigRational::new(BigInt::from(x10), BigInt::from(10));
            let z = &x * &x;
            let xf = render::from_rational(&x, p)?;
            let asin_x = catalan_asin(&xf, p)?;

            // 2F1(1/2,1/2;3/2;x^2) = arcsin(x)/x
            let params = oracles::HypParams::new(
                vec![half(), half()],
                vec![three_halves()],
                z.clone(),
            )?;
            let lhs = oracles::hyp2f1(&params, &ctx)?;
            let rhs = asin_x.div(&xf, p, RM);
            let r = lhs.sub(&rhs, p, RM).abs();
            if render::gt(&r, &worst_a) {
                worst_a = r;
            }

            // 2F1(1,1;3/2;x^2) = arcsin(x)/(x sqrt(1-x^2))
            let params = oracles::HypParams::new(vec![one(), one()], vec![three_halves()], z)?;
            let lhs = oracles::hyp2f1(&params, &ctx)?;
            let x2 = xf.mul(&xf, p, RM);
            let root = BigFloat::from_word(1, p).sub(&x2, p, RM).sqrt(p, RM);
            let rhs = asin_x.div(&xf.mul(&root, p, RM), p, RM);
            let r = lhs.sub(&rhs, p, RM).abs();
            if render::gt(&r, &worst_b) {
                worst_b = r;
            }
        }
        rec.record_big("hyp2f1_arcsin_over_x", &worst_a, -25);
        rec.record_big("hyp2f1_arcsin_over_x_sqrt", &worst_b, -25);
    }

    // Euler transformation residuals on the test grid.
    {
        let ctx = PrecisionContext::new(30)?;
        let p = ctx.working_bits();
        let mut worst = BigFloat::new(p);
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let grid = [
            (rat(1, 2), rat(1, 2), rat(3, 2), rat(3, 10)),
            (rat(1, 1), rat(1, 1), rat(3, 2), rat(2, 5)),
            (rat(1, 3), rat(2, 3), rat(7, 4), rat(1, 4)),
        ];
        for (a, b, c, z) in grid {
            let r = oracles::euler_transform_check(&a, &b, &c, &z, &ctx)?;
            if render::gt(&r, &worst) {
                worst = r;
            }
        }
        rec.record_big("euler_transform", &worst, -25);
    }

    // Coarse 3F2 at the unit argument against 2G.
    {
        let n = if full { 1_000_000 } else { 10_000 };
        let bound = if full { 2e-3 } else { 2e-2 };
        let params = oracles::special_3f2_params();
        let sum = oracles::hyp3f2_unit_coarse(&params, n)?;
        let two_g = 2.0 * render::to_f64(&engine::reference_g(15)?);
        let below = sum.value < two_g;
        let residual = two_g - sum.value;
        rec.record(
            "special_3f2_coarse",
            format!("{residual:.3e}"),
            format!("{bound:.1e} (and below 2G)"),
            below && residual < bound && residual <= sum.tail_estimate * 1.5,
        );
    }

    // Guillera's function: series value at x = 1/2 against 4G.
    {
        let v = oracles::guillera_f_series(0.5, 60)?;
        let four_g = 4.0 * render::to_f64(&engine::reference_g(12)?);
        rec.record_f64("guillera_series_at_half", (v - four_g).abs(), 1e-12);
    }

    // Guillera's function: the two representations against each other.
    {
        let n = if full { 1_000_000 } else { 100_000 };
        let mut worst_ratio = 0f64;
        let mut pass = true;
        for x in [0.25, 0.5, 0.75] {
            let exact = oracles::guillera_f_series(x, 60)?;
            let coarse = oracles::guillera_f_hyp(x, n)?;
            let diff = (exact - coarse.value).abs();
            let ratio = diff / coarse.tail_estimate;
            worst_ratio = worst_ratio.max(ratio);
            pass &= diff <= coarse.tail_estimate * 1.5;
        }
        rec.record(
            "guillera_two_representations",
            format!("{worst_ratio:.3} of tail estimate"),
            "<= 1.5 of tail estimate".to_string(),
            pass,
        );
    }

    // Defining beta series against the reference, alternating bound.
    {
        let n = if full { 1_000_000 } else { 10_000 };
        let residual = oracles::clausen_beta_check(n)?;
        let bound = 1.0 / ((2 * n + 3) as f64).powi(2);
        rec.record_f64("clausen_beta_partial_sum", residual, bound + 1e-12);
    }

    // Dilogarithm spot values on the unit circle.
    {
        let n = if full { 1_000_000 } else { 100_000 };
        let pi = core::f64::consts::PI;
        let at_pi = oracles::dilog_unit_circle(pi, n)?;
        let r1 = (at_pi.re + pi * pi / 12.0).abs();
        let at_half = oracles::dilog_unit_circle(pi / 2.0, n)?;
        let g = render::to_f64(&engine::reference_g(15)?);
        let r2 = (at_half.im - g).abs();
        let bound = 1.0 / n as f64 + 1e-7;
        rec.record_f64("dilog_unit_circle_spots", r1.max(r2), bound);
    }

    // Antiderivative of theta/sin(theta) against direct quadrature.
    {
        let pi = core::f64::consts::PI;
        let r1 = oracles::antiderivative_check(pi / 6.0, pi / 3.0, 100_000)?;
        let r2 = oracles::antiderivative_check(pi / 4.0, pi / 2.0, 100_000)?;
        rec.record_f64("antiderivative_theta_over_sin", r1.max(r2), 1e-4);
    }

    let passed = rec.checks.iter().all(|c| c.passed);
    let elapsed_ms = t0.elapsed().as_millis() as u64;
    let results = VerifyResults {
        level: level.to_string(),
        passed,
        checks: rec.checks,
    };
    let text = match format {
        Format::Json => Envelope::new("verify", json!({"level": level}), results, elapsed_ms)
            .to_json(),
        _ => {
            let mut out = String::new();
            for c in &results.checks {
                out.push_str(&format!(
                    "{:<34} {}  residual {:<14} bound {}\n",
                    c.name,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.residual,
                    c.bound
                ));
            }
            out.push_str(&format!(
                "verify ({level}): {}\n",
                if passed { "all checks passed" } else { "FAILURES PRESENT" }
            ));
            out
        }
    };
    Ok(CmdOutput {
        text,
        exit_code: if passed { 0 } else { 1 },
    })
}

pub fn run_bench(digits: u32, repetitions: u32, format: &str) -> Result<CmdOutput, CliError> {
    let t0 = Instant::now();
    let format = Format::parse(format)?;
    if matches!(format, Format::Csv) {
        return Err(CliError::usage("csv output is only available for `table`"));
    }
    if digits < 10 {
        return Err(CliError::usage("bench requires at least 10 digits"));
    }
    if repetitions < 1 {
        return Err(CliError::usage("at least one repetition is required"));
    }

    let mut rows = Vec::new();
    let mut digit_strings: Vec<String> = Vec::new();
    for id in SeriesId::GEOMETRIC {
        for method in [SumMethod::Incremental, SumMethod::BinarySplitting] {
            let mut best = f64::MAX;
            let mut result = None;
            for _ in 0..repetitions {
                let r = engine::constant_digits(id, digits, method)?;
                best = best.min(r.elapsed.as_secs_f64());
                result = Some(r);
            }
            let r = result.expect("at least one repetition");
            digit_strings.push(r.digits.clone());
            rows.push(BenchRow {
                series: id.name().to_string(),
                method: method.name().to_string(),
                terms_used: r.terms_used,
                n_used: r.n_used,
                millis: best * 1e3,
                ns_per_digit: best * 1e9 / digits as f64,
            });
        }
    }
    let all_agree = digit_strings.windows(2).all(|w| w[0] == w[1]);
    let elapsed_ms = t0.elapsed().as_millis() as u64;
    let results = BenchResults {
        digits,
        repetitions,
        all_agree,
        rows,
    };
    let text = match format {
        Format::Json => Envelope::new(
            "bench",
            json!({"digits": digits, "repetitions": repetitions}),
            results.clone(),
            elapsed_ms,
        )
        .to_json(),
        _ => {
            let mut out = String::new();
            out.push_str(&format!(
                "{:<10} {:<12} {:>8} {:>12} {:>14}\n",
                "series", "method", "terms", "time (ms)", "ns/digit"
            ));
            for r in &results.rows {
                out.push_str(&format!(
                    "{:<10} {:<12} {:>8} {:>12.3} {:>14.1}\n",
                    r.series, r.method, r.terms_used, r.millis, r.ns_per_digit
                ));
            }
            out.push_str(&format!(
                "all {} digit strings agree: {}\n",
                digits,
                if all_agree { "yes" } else { "NO" }
            ));
            out
        }
    };
    Ok(CmdOutput {
        text,
        exit_code: if all_agree { 0 } else { 3 },
    })
}

fn double(v: &BigFloat, p: usize) -> BigFloat {
    v.mul(&BigFloat::from_word(2, p), p, RM)
}

fn catalan_asin(x: &BigFloat, p: usize) -> Result<BigFloat, CliError> {
    let v = catalan::astro_float::BigFloat::asin(
        x,
        p,
        RM,
        &mut catalan::astro_float::Consts::new().expect("constants cache"),
    );
    if v.is_nan() {
        return Err(CliError::usage("asin out of domain"));
    }
    Ok(v)
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn one() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1))
}

fn three_halves() -> BigRational {
    BigRational::new(BigInt::from(3), BigInt::from(2))
}
