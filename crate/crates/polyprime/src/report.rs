//! Report documents and their three renderings: text, CSV, pretty JSON.
//!
//! Output is part of the contract: a given invocation must produce
//! byte-identical bytes every run, so rendering never consults locale,
//! time, or hash order, and every real number goes through one formatter
//! fixed at six significant digits.

use crate::analysis::{ApCheckpointReport, CountTable, FitResult, TriangularProgressionReport};
use crate::quadform::{CaseReport, Classification, CombinationSpec};
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Six significant digits, plain decimal, no locale.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// The value that [`fmt_real`] would print, as an f64, so JSON and the
/// other formats carry identical numbers.
pub fn round_real(x: f64) -> f64 {
    fmt_real(x).parse().unwrap_or(x)
}

fn rounded_fit(fit: FitResult) -> FitResult {
    FitResult {
        exponent: round_real(fit.exponent),
        scale: round_real(fit.scale),
        residual: round_real(fit.residual),
    }
}

/// A renderable report document.
pub trait Report: Serialize {
    fn text(&self) -> String;
    fn csv(&self) -> String;

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.text(),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => {
                let mut body =
                    serde_json::to_string_pretty(self).expect("report documents serialize");
                body.push('\n');
                body
            }
        }
    }
}

fn case_csv_row(case: &CaseReport) -> String {
    let q = &case.form;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        case.case,
        q.a(),
        q.b(),
        q.c(),
        q.e(),
        q.f(),
        q.g(),
        case.delta,
        case.invariant_d,
        case.content,
        case.regime
    )
}

impl Report for Classification {
    fn text(&self) -> String {
        let mut out = String::new();
        let spec = self.spec;
        let _ = writeln!(
            out,
            "combination: {}*T({},m) + {}*T({},n)",
            spec.mu(),
            spec.r(),
            spec.nu(),
            spec.s()
        );
        let _ = writeln!(out, "overall regime: {}", self.overall);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<5} {:<40} {:>12} {:>12} {:>8} {:<10}",
            "case", "polynomial", "delta", "D", "content", "regime"
        );
        for case in &self.cases {
            let _ = writeln!(
                out,
                "{:<5} {:<40} {:>12} {:>12} {:>8} {:<10}",
                case.case.label(),
                case.form.to_string(),
                case.delta,
                case.invariant_d,
                case.content,
                case.regime
            );
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("case,a,b,c,e,f,g,delta,D,content,regime\n");
        for case in &self.cases {
            out.push_str(&case_csv_row(case));
            out.push('\n');
        }
        out
    }
}

/// `count` subcommand output.
#[derive(Debug, Clone, Serialize)]
pub struct CountDoc {
    pub spec: CombinationSpec,
    pub limit: u64,
    pub min_index: u64,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<CountTable>,
}

impl Report for CountDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        let spec = self.spec;
        let _ = writeln!(
            out,
            "representable primes of {}*T({},m) + {}*T({},n) up to {} (min index {}): {}",
            spec.mu(),
            spec.r(),
            spec.nu(),
            spec.s(),
            self.limit,
            self.min_index,
            self.count
        );
        if let Some(table) = &self.checkpoints {
            for row in table.rows() {
                let _ = writeln!(out, "  up to {:>12}: {}", row.n, row.count);
            }
        }
        if let Some(members) = &self.members {
            let listed: Vec<String> = members.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "members: {}", listed.join(" "));
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("N,count\n");
        match &self.checkpoints {
            Some(table) => {
                for row in table.rows() {
                    let _ = writeln!(out, "{},{}", row.n, row.count);
                }
            }
            None => {
                let _ = writeln!(out, "{},{}", self.limit, self.count);
            }
        }
        out
    }
}

/// `fit` subcommand output: the free fit plus the two predicted curves with
/// pinned exponents 1 (Dense) and 3/2 (Sparse).
#[derive(Debug, Clone, Serialize)]
pub struct FitDoc {
    pub spec: CombinationSpec,
    pub min_index: u64,
    pub fit: FitResult,
    pub dense: FitResult,
    pub sparse: FitResult,
    pub plot: Vec<PlotRow>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PlotRow {
    pub n: u64,
    pub count: u64,
    pub predicted_dense: f64,
    pub predicted_sparse: f64,
}

impl FitDoc {
    pub fn new(
        spec: CombinationSpec,
        min_index: u64,
        table: &CountTable,
        fit: FitResult,
        dense: FitResult,
        sparse: FitResult,
    ) -> FitDoc {
        let predict = |scale: f64, exponent: f64, n: u64| {
            round_real(scale * n as f64 / (n as f64).ln().powf(exponent))
        };
        let plot = table
            .rows()
            .iter()
            .map(|row| PlotRow {
                n: row.n,
                count: row.count,
                predicted_dense: predict(dense.scale, dense.exponent, row.n),
                predicted_sparse: predict(sparse.scale, sparse.exponent, row.n),
            })
            .collect();
        FitDoc {
            spec,
            min_index,
            fit: rounded_fit(fit),
            dense: rounded_fit(dense),
            sparse: rounded_fit(sparse),
            plot,
        }
    }
}

impl Report for FitDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        let spec = self.spec;
        let _ = writeln!(
            out,
            "exponent fit for {}*T({},m) + {}*T({},n), count ~ scale * N / (log N)^exponent",
            spec.mu(),
            spec.r(),
            spec.nu(),
            spec.s()
        );
        let _ = writeln!(
            out,
            "fitted: exponent {} scale {} residual {}",
            fmt_real(self.fit.exponent),
            fmt_real(self.fit.scale),
            fmt_real(self.fit.residual)
        );
        let _ = writeln!(
            out,
            "pinned dense (e=1): scale {} residual {}",
            fmt_real(self.dense.scale),
            fmt_real(self.dense.residual)
        );
        let _ = writeln!(
            out,
            "pinned sparse (e=3/2): scale {} residual {}",
            fmt_real(self.sparse.scale),
            fmt_real(self.sparse.residual)
        );
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:>12} {:>12} {:>16} {:>16}",
            "N", "count", "predicted_dense", "predicted_sparse"
        );
        for row in &self.plot {
            let _ = writeln!(
                out,
                "{:>12} {:>12} {:>16} {:>16}",
                row.n,
                row.count,
                fmt_real(row.predicted_dense),
                fmt_real(row.predicted_sparse)
            );
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("N,count,predicted_dense,predicted_sparse\n");
        for row in &self.plot {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                row.n,
                row.count,
                fmt_real(row.predicted_dense),
                fmt_real(row.predicted_sparse)
            );
        }
        out
    }
}

/// `ap` subcommand output.
#[derive(Debug, Clone, Serialize)]
pub struct ApDoc {
    pub spec: CombinationSpec,
    pub min_index: u64,
    pub modulus: u64,
    pub reports: Vec<ApCheckpointReport>,
}

impl ApDoc {
    pub fn new(
        spec: CombinationSpec,
        min_index: u64,
        modulus: u64,
        mut reports: Vec<ApCheckpointReport>,
    ) -> ApDoc {
        for report in &mut reports {
            for row in &mut report.rows {
                row.ratio = round_real(row.ratio);
            }
        }
        ApDoc {
            spec,
            min_index,
            modulus,
            reports,
        }
    }
}

impl Report for ApDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        let spec = self.spec;
        let _ = writeln!(
            out,
            "representable primes of {}*T({},m) + {}*T({},n) by residue mod {}",
            spec.mu(),
            spec.r(),
            spec.nu(),
            spec.s(),
            self.modulus
        );
        for report in &self.reports {
            let _ = writeln!(out);
            let _ = writeln!(out, "up to {}:", report.checkpoint);
            let _ = writeln!(
                out,
                "  {:>8} {:>12} {:>8} {:>14} {:>10}",
                "residue", "admissible", "primes", "representable", "ratio"
            );
            for row in &report.rows {
                let _ = writeln!(
                    out,
                    "  {:>8} {:>12} {:>8} {:>14} {:>10}",
                    row.residue,
                    row.admissible,
                    row.primes,
                    row.representable,
                    fmt_real(row.ratio)
                );
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("checkpoint,residue,admissible,primes,representable,ratio\n");
        for report in &self.reports {
            for row in &report.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    report.checkpoint,
                    row.residue,
                    row.admissible,
                    row.primes,
                    row.representable,
                    fmt_real(row.ratio)
                );
            }
        }
        out
    }
}

impl Report for TriangularProgressionReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "primes that are sums of two positive triangular numbers, by residue mod {}",
            self.modulus
        );
        let checkpoints: Vec<String> = self
            .checkpoints
            .iter()
            .map(|cp| format!("{cp:>12}"))
            .collect();
        let _ = writeln!(out, "{:>8} {}", "residue", checkpoints.join(" "));
        for row in &self.rows {
            let counts: Vec<String> = row.counts.iter().map(|c| format!("{c:>12}")).collect();
            let flag = if row.empty_at_max { "  (empty)" } else { "" };
            let _ = writeln!(out, "{:>8} {}{}", row.residue, counts.join(" "), flag);
        }
        let empty: Vec<String> = self
            .rows
            .iter()
            .filter(|row| row.empty_at_max)
            .map(|row| row.residue.to_string())
            .collect();
        if empty.is_empty() {
            let _ = writeln!(
                out,
                "every admissible class is inhabited at the last checkpoint"
            );
        } else {
            let _ = writeln!(
                out,
                "classes still empty at the last checkpoint: {}",
                empty.join(" ")
            );
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("residue,checkpoint,count\n");
        for row in &self.rows {
            for (checkpoint, count) in self.checkpoints.iter().zip(&row.counts) {
                let _ = writeln!(out, "{},{},{}", row.residue, checkpoint, count);
            }
        }
        out
    }
}

/// `identity-check` subcommand output.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityDoc {
    pub limit: u64,
    /// n <= limit: two triangulars (zero allowed) iff 4n+1 is two squares.
    pub triangular_identity_checked: u64,
    pub triangular_identity_holds: bool,
    /// primes p <= limit: two squares iff p = 2 or p = 1 mod 4.
    pub prime_square_law_checked: u64,
    pub prime_square_law_holds: bool,
}

impl Report for IdentityDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n is two triangulars (zero allowed) iff 4n+1 is two squares: {} for all n <= {}",
            verdict(self.triangular_identity_holds),
            self.limit
        );
        let _ = writeln!(
            out,
            "prime p is two squares iff p = 2 or p = 1 mod 4: {} for all {} primes <= {}",
            verdict(self.prime_square_law_holds),
            self.prime_square_law_checked,
            self.limit
        );
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("check,limit,cases_checked,holds\n");
        let _ = writeln!(
            out,
            "triangular_identity,{},{},{}",
            self.limit, self.triangular_identity_checked, self.triangular_identity_holds
        );
        let _ = writeln!(
            out,
            "prime_square_law,{},{},{}",
            self.limit, self.prime_square_law_checked, self.prime_square_law_holds
        );
        out
    }
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "FAILS"
    }
}

/// `sieve` subcommand output.
#[derive(Debug, Clone, Serialize)]
pub struct SieveDoc {
    pub limit: u64,
    pub primes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache_path: Option<String>,
}

impl Report for SieveDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "primes up to {}: {}", self.limit, self.primes);
        if let Some(path) = &self.cache_path {
            let _ = writeln!(out, "cache: {path}");
        }
        out
    }

    fn csv(&self) -> String {
        format!("limit,primes\n{},{}\n", self.limit, self.primes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::Regime;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(1.5), "1.50000");
        assert_eq!(fmt_real(-1.5), "-1.50000");
        assert_eq!(fmt_real(6.0 / 11.0), "0.545455");
        assert_eq!(fmt_real(0.0123456789), "0.0123457");
        assert_eq!(fmt_real(78498.0), "78498.0");
        assert_eq!(fmt_real(620421.3), "620421");
        assert_eq!(fmt_real(1.0e-7), "0.000000100000");
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [1.5, 6.0 / 11.0, 0.0123456789, 78498.123, 1.0e-7] {
            assert_eq!(round_real(round_real(x)), round_real(x), "{x}");
        }
    }

    #[test]
    fn classification_csv_matches_pinned_layout() {
        let class = CombinationSpec::new(3, 3, 1, 1).unwrap().classify();
        let expected = "\
case,a,b,c,e,f,g,delta,D,content,regime
EE,2,0,2,1,1,0,-16,4,1,Sparse
EO,2,0,2,1,3,1,-16,4,1,Sparse
OE,2,0,2,3,1,1,-16,4,1,Sparse
OO,2,0,2,3,3,2,-16,4,1,Sparse
";
        assert_eq!(class.csv(), expected);
    }

    #[test]
    fn classification_json_carries_the_overall_regime() {
        let class = CombinationSpec::new(4, 4, 1, 1).unwrap().classify();
        let json = class.render(OutputFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["overall"], "Dense");
        assert_eq!(parsed["cases"][0]["case"], "EE");
        assert_eq!(parsed["cases"][0]["regime"], "Negligible");
        assert_eq!(parsed["cases"][1]["form"]["f"], 4);
    }

    #[test]
    fn count_csv_uses_checkpoints_when_present() {
        let spec = CombinationSpec::new(3, 3, 1, 1).unwrap();
        let plain = CountDoc {
            spec,
            limit: 100,
            min_index: 1,
            count: 14,
            members: None,
            checkpoints: None,
        };
        assert_eq!(plain.csv(), "N,count\n100,14\n");
        let table = CountTable::new(vec![(50, 8), (100, 14)]).unwrap();
        let with_table = CountDoc {
            checkpoints: Some(table),
            ..plain
        };
        assert_eq!(with_table.csv(), "N,count\n50,8\n100,14\n");
    }

    #[test]
    fn regime_labels_render_as_words() {
        assert_eq!(Regime::Dense.to_string(), "Dense");
        assert_eq!(
            serde_json::to_string(&Regime::Negligible).unwrap(),
            "\"Negligible\""
        );
    }
}
