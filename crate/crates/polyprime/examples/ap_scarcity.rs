//! Representable primes inside arithmetic progressions: every admissible
//! class keeps producing them, but their share of all primes thins out.
//!
//! Run with: cargo run --example ap_scarcity

use polyprime::analysis::{admissible_ap, ap_report};
use polyprime::sieve::build_sieve;
use polyprime::{CombinationSpec, ReprConfig, Result};

fn main() -> Result<()> {
    let spec = CombinationSpec::new(3, 3, 1, 1)?;
    let modulus = 4;
    let checkpoints = [10_000, 100_000, 1_000_000, 10_000_000];
    let limit = *checkpoints.last().unwrap();

    let sieve = build_sieve(limit)?;
    let cfg = ReprConfig::new(spec, limit, 1)?;
    let reports = ap_report(&cfg, &sieve, modulus, &checkpoints)?;

    println!("sums of two positive triangulars that are prime, by residue mod {modulus}:\n");
    println!(
        "  {:>10} {:>8} {:>10} {:>14} {:>8}",
        "up to", "residue", "primes", "representable", "ratio"
    );
    for report in &reports {
        for row in &report.rows {
            if !row.admissible {
                continue;
            }
            println!(
                "  {:>10} {:>8} {:>10} {:>14} {:>8.4}",
                report.checkpoint, row.residue, row.primes, row.representable, row.ratio
            );
        }
        println!();
    }
    println!("counts grow without bound while the ratio column sinks:");
    println!("infinitude in every admissible class, density zero among primes.");

    // Admissibility is just coprimality of residue and modulus.
    let admissible: Vec<u64> = (0..12).filter(|&a| admissible_ap(a, 12)).collect();
    println!("\nadmissible residues mod 12: {admissible:?}");
    Ok(())
}
