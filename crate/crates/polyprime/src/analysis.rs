//! Empirical verification of the predicted regimes.
//!
//! The symbolic side says represented primes grow like `c * N / (log N)^e`
//! with `e = 1` (Dense) or `e = 3/2` (Sparse). This module counts
//! representable primes at checkpoints, fits `e` and `c` by least squares
//! in log space, and probes how the primes distribute over arithmetic
//! progressions.

use crate::error::{Error, Result};
use crate::quadform::{gcd, CombinationSpec};
use crate::representability::{enumerate_combination_values_with_workers, ReprConfig};
use crate::sieve::BitSet;
use serde::Serialize;

/// Counts of representable primes at ascending checkpoints. Checkpoints
/// start at 16 so that `log log N` is bounded away from zero, which keeps
/// the fit well conditioned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    rows: Vec<CountRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: u64,
    pub count: u64,
}

impl CountTable {
    pub fn new(rows: Vec<(u64, u64)>) -> Result<CountTable> {
        if rows.is_empty() {
            return Err(Error::invalid("a count table needs at least one row"));
        }
        let mut previous: Option<CountRow> = None;
        for &(n, count) in &rows {
            if n < 16 {
                return Err(Error::invalid(format!(
                    "checkpoint {n} is below 16, where log log N degenerates"
                )));
            }
            if let Some(prev) = previous {
                if n <= prev.n {
                    return Err(Error::invalid(format!(
                        "checkpoints must be strictly ascending, got {} then {n}",
                        prev.n
                    )));
                }
                if count < prev.count {
                    return Err(Error::invalid(format!(
                        "counts must be non-decreasing, got {} then {count}",
                        prev.count
                    )));
                }
            }
            previous = Some(CountRow { n, count });
        }
        Ok(CountTable {
            rows: rows
                .into_iter()
                .map(|(n, count)| CountRow { n, count })
                .collect(),
        })
    }

    pub fn rows(&self) -> &[CountRow] {
        &self.rows
    }
}

fn validate_checkpoints(checkpoints: &[u64], limit: u64) -> Result<()> {
    if checkpoints.is_empty() {
        return Err(Error::invalid("at least one checkpoint is required"));
    }
    for pair in checkpoints.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::invalid(format!(
                "checkpoints must be strictly ascending, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    let last = *checkpoints.last().expect("nonempty");
    if last > limit {
        return Err(Error::invalid(format!(
            "checkpoint {last} exceeds the enumeration limit {limit}"
        )));
    }
    Ok(())
}

/// Representable primes counted at each checkpoint, in one pass over the
/// intersection of the enumerated values with the sieve.
pub fn count_checkpoints(
    cfg: &ReprConfig,
    sieve: &BitSet,
    checkpoints: &[u64],
) -> Result<CountTable> {
    count_checkpoints_with_workers(cfg, sieve, checkpoints, 1)
}

pub fn count_checkpoints_with_workers(
    cfg: &ReprConfig,
    sieve: &BitSet,
    checkpoints: &[u64],
    workers: usize,
) -> Result<CountTable> {
    validate_checkpoints(checkpoints, cfg.limit())?;
    if sieve.limit() < cfg.limit() {
        return Err(Error::invalid(format!(
            "sieve covers only {} of the requested limit {}",
            sieve.limit(),
            cfg.limit()
        )));
    }
    let values = enumerate_combination_values_with_workers(cfg, workers)?;
    let primes = values.intersection(sieve);
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut running = 0u64;
    let mut members = primes.ones().peekable();
    for &checkpoint in checkpoints {
        while members.next_if(|&p| p <= checkpoint).is_some() {
            running += 1;
        }
        rows.push((checkpoint, running));
    }
    CountTable::new(rows)
}

/// Least-squares fit of `count ~ scale * N / (log N)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub exponent: f64,
    pub scale: f64,
    pub residual: f64,
}

/// Fit both exponent and scale. In log space the model is linear:
/// `log count - log N = log scale - exponent * log log N`.
/// Needs at least three rows with positive counts.
pub fn fit_exponent(table: &CountTable) -> Result<FitResult> {
    let points = fit_points(table, 3)?;
    let k = points.len() as f64;
    let mean_u = points.iter().map(|(u, _)| u).sum::<f64>() / k;
    let mean_z = points.iter().map(|(_, z)| z).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|(u, _)| (u - mean_u).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|(u, z)| (u - mean_u) * (z - mean_z))
        .sum();
    if sxx < 1e-12 {
        return Err(Error::Fit(
            "checkpoints are too close together to determine an exponent".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_z - slope * mean_u;
    let residual = (points
        .iter()
        .map(|(u, z)| (z - intercept - slope * u).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Ok(FitResult {
        exponent: -slope,
        scale: intercept.exp(),
        residual,
    })
}

/// Fit only the scale, with the exponent pinned. Used to draw the two
/// predicted curves next to observed counts.
pub fn fit_scale_at_exponent(table: &CountTable, exponent: f64) -> Result<FitResult> {
    let points = fit_points(table, 1)?;
    let k = points.len() as f64;
    let intercept = points.iter().map(|(u, z)| z + exponent * u).sum::<f64>() / k;
    let residual = (points
        .iter()
        .map(|(u, z)| (z - intercept + exponent * u).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Ok(FitResult {
        exponent,
        scale: intercept.exp(),
        residual,
    })
}

/// (log log N, log count - log N) per row; errors if any count is zero.
fn fit_points(table: &CountTable, min_rows: usize) -> Result<Vec<(f64, f64)>> {
    if table.rows().len() < min_rows {
        return Err(Error::Fit(format!(
            "fit needs at least {min_rows} checkpoints, got {}",
            table.rows().len()
        )));
    }
    table
        .rows()
        .iter()
        .map(|row| {
            if row.count == 0 {
                return Err(Error::Fit(format!(
                    "count at checkpoint {} is zero; its logarithm is undefined",
                    row.n
                )));
            }
            let u = (row.n as f64).ln().ln();
            let z = (row.count as f64).ln() - (row.n as f64).ln();
            Ok((u, z))
        })
        .collect()
}

/// An arithmetic progression `a mod d` contains infinitely many primes
/// exactly when gcd(a, d) = 1.
pub fn admissible_ap(a: u64, d: u64) -> bool {
    gcd(a, d) == 1
}

/// Distribution of representable primes over residues at one checkpoint.
#[derive(Debug, Clone, Serialize)]
pub struct ApCheckpointReport {
    pub checkpoint: u64,
    pub modulus: u64,
    pub rows: Vec<ApRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApRow {
    pub residue: u64,
    pub admissible: bool,
    /// Primes `<= checkpoint` in this residue class.
    pub primes: u64,
    /// Of those, how many the combination represents.
    pub representable: u64,
    /// representable / primes, 0 when the class has no primes.
    pub ratio: f64,
}

/// For each checkpoint, how the representable primes spread over residue
/// classes mod `modulus`. Primes dividing the modulus sit in their own
/// (inadmissible) classes, so the `primes` column always sums to the prime
/// count.
pub fn ap_report(
    cfg: &ReprConfig,
    sieve: &BitSet,
    modulus: u64,
    checkpoints: &[u64],
) -> Result<Vec<ApCheckpointReport>> {
    ap_report_with_workers(cfg, sieve, modulus, checkpoints, 1)
}

pub fn ap_report_with_workers(
    cfg: &ReprConfig,
    sieve: &BitSet,
    modulus: u64,
    checkpoints: &[u64],
    workers: usize,
) -> Result<Vec<ApCheckpointReport>> {
    if modulus < 1 {
        return Err(Error::invalid("progression modulus must be at least 1"));
    }
    if modulus > 1 << 16 {
        return Err(Error::invalid(format!(
            "progression modulus {modulus} exceeds the supported maximum 2^16"
        )));
    }
    validate_checkpoints(checkpoints, cfg.limit())?;
    if sieve.limit() < cfg.limit() {
        return Err(Error::invalid(format!(
            "sieve covers only {} of the requested limit {}",
            sieve.limit(),
            cfg.limit()
        )));
    }
    let values = enumerate_combination_values_with_workers(cfg, workers)?;
    let q = modulus as usize;
    let mut prime_counts = vec![0u64; q];
    let mut repr_counts = vec![0u64; q];
    let mut reports = Vec::with_capacity(checkpoints.len());
    let mut primes = sieve.ones().take_while(|&p| p <= cfg.limit()).peekable();
    for &checkpoint in checkpoints {
        while let Some(p) = primes.next_if(|&p| p <= checkpoint) {
            let residue = (p % modulus) as usize;
            prime_counts[residue] += 1;
            if values.contains(p) {
                repr_counts[residue] += 1;
            }
        }
        let rows = (0..modulus)
            .map(|residue| {
                let primes = prime_counts[residue as usize];
                let representable = repr_counts[residue as usize];
                ApRow {
                    residue,
                    admissible: admissible_ap(residue, modulus),
                    primes,
                    representable,
                    ratio: if primes == 0 {
                        0.0
                    } else {
                        representable as f64 / primes as f64
                    },
                }
            })
            .collect();
        reports.push(ApCheckpointReport {
            checkpoint,
            modulus,
            rows,
        });
    }
    Ok(reports)
}

/// Primes that are sums of two positive triangular numbers, counted per
/// admissible residue class at each checkpoint. Flags classes that are
/// still empty at the largest checkpoint; whether any class stays empty
/// forever is open.
#[derive(Debug, Clone, Serialize)]
pub struct TriangularProgressionReport {
    pub modulus: u64,
    pub checkpoints: Vec<u64>,
    pub rows: Vec<TriangularProgressionRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangularProgressionRow {
    pub residue: u64,
    /// One count per checkpoint, cumulative.
    pub counts: Vec<u64>,
    pub empty_at_max: bool,
}

pub fn two_triangular_prime_counts(
    sieve: &BitSet,
    modulus: u64,
    checkpoints: &[u64],
) -> Result<TriangularProgressionReport> {
    two_triangular_prime_counts_with_workers(sieve, modulus, checkpoints, 1)
}

pub fn two_triangular_prime_counts_with_workers(
    sieve: &BitSet,
    modulus: u64,
    checkpoints: &[u64],
    workers: usize,
) -> Result<TriangularProgressionReport> {
    let limit = *checkpoints
        .last()
        .ok_or_else(|| Error::invalid("at least one checkpoint is required"))?;
    let spec = CombinationSpec::new(3, 3, 1, 1).expect("fixed two-triangular combination");
    let cfg = ReprConfig::new(spec, limit, 1)?;
    let reports = ap_report_with_workers(&cfg, sieve, modulus, checkpoints, workers)?;
    let residues: Vec<u64> = (0..modulus)
        .filter(|&a| admissible_ap(a, modulus))
        .collect();
    let rows = residues
        .into_iter()
        .map(|residue| {
            let counts: Vec<u64> = reports
                .iter()
                .map(|report| report.rows[residue as usize].representable)
                .collect();
            let empty_at_max = *counts.last().expect("nonempty checkpoints") == 0;
            TriangularProgressionRow {
                residue,
                counts,
                empty_at_max,
            }
        })
        .collect();
    Ok(TriangularProgressionReport {
        modulus,
        checkpoints: checkpoints.to_vec(),
        rows,
    })
}
