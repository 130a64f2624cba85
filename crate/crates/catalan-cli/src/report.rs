//! Report envelope and table model shared by all output formats.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

/// Wrapper emitted for every JSON report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub params: serde_json::Value,
    pub results: T,
    pub version: String,
    pub elapsed_ms: u64,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, params: serde_json::Value, results: T, elapsed_ms: u64) -> Self {
        Envelope {
            command: command.to_string(),
            params,
            results,
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// One row of signed deviations `S_N - G`, each cell rendered as
/// `{sign}{two-significant-figure mantissa}e{exponent}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationRow {
    pub n: u64,
    pub lupas: String,
    pub ramanujan: String,
    pub sun: String,
    pub theorem1: String,
}

impl DeviationRow {
    pub fn cell(&self, series: &str) -> Option<&str> {
        match series {
            "lupas" => Some(&self.lupas),
            "ramanujan" => Some(&self.ramanujan),
            "sun" => Some(&self.sun),
            "theorem1" => Some(&self.theorem1),
            _ => None,
        }
    }
}

/// Deviation table in the column order of the reference table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationTable {
    pub rows: Vec<DeviationRow>,
}

pub const CSV_HEADER: &str = "N,lupas,ramanujan,sun,theorem1";

impl DeviationTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n, r.lupas, r.ramanujan, r.sun, r.theorem1
            ));
        }
        out
    }

    pub fn from_csv(s: &str) -> anyhow::Result<Self> {
        let mut lines = s.lines();
        let header = lines.next().context("empty CSV")?;
        if header.trim() != CSV_HEADER {
            bail!("unexpected CSV header `{header}`");
        }
        let mut rows = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != 5 {
                bail!("expected 5 CSV cells, got {}", cells.len());
            }
            rows.push(DeviationRow {
                n: cells[0].parse().context("bad N cell")?,
                lupas: cells[1].to_string(),
                ramanujan: cells[2].to_string(),
                sun: cells[3].to_string(),
                theorem1: cells[4].to_string(),
            });
        }
        Ok(DeviationTable { rows })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>6}  {:>14}  {:>14}  {:>14}  {:>14}\n",
            "N", "lupas", "ramanujan", "sun", "theorem1"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:>6}  {:>14}  {:>14}  {:>14}  {:>14}\n",
                r.n, r.lupas, r.ramanujan, r.sun, r.theorem1
            ));
        }
        out
    }
}

/// Full-precision deviation strings, carried in JSON next to the rounded
/// table cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullDeviationRow {
    pub n: u64,
    pub lupas: String,
    pub ramanujan: String,
    pub sun: String,
    pub theorem1: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableResults {
    pub rows: Vec<DeviationRow>,
    pub full: Vec<FullDeviationRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComputeResults {
    pub series: String,
    pub digits: u32,
    pub method: String,
    pub conjectured: bool,
    pub n_used: u64,
    pub terms_used: u64,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateResults {
    pub series: String,
    pub digits: u32,
    pub predicted_terms: u64,
    pub digits_per_term: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub residual: String,
    pub bound: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyResults {
    pub level: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRow {
    pub series: String,
    pub method: String,
    pub terms_used: u64,
    pub n_used: u64,
    pub millis: f64,
    pub ns_per_digit: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchResults {
    pub digits: u32,
    pub repetitions: u32,
    pub all_agree: bool,
    pub rows: Vec<BenchRow>,
}
