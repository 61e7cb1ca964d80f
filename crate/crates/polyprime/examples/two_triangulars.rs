//! Sums of two triangular numbers and the 4n+1 two-squares correspondence.
//!
//! Run with: cargo run --example two_triangulars

use polyprime::analysis::two_triangular_prime_counts;
use polyprime::representability::{sum_of_two_squares, sum_of_two_triangulars};
use polyprime::sieve::build_sieve;
use polyprime::Result;

fn main() -> Result<()> {
    // n = T(3,a) + T(3,b) with zeros allowed holds exactly when 4n+1 is a
    // sum of two squares: (a+b+1)^2 + (a-b)^2 = 4(T(3,a)+T(3,b)) + 1.
    println!("n, two triangulars (zeros ok), 4n+1 two squares:");
    for n in 0..=20u64 {
        let tri = sum_of_two_triangulars(n, true);
        let sq = sum_of_two_squares(4 * n + 1);
        assert_eq!(tri, sq);
        println!("  {n:>3} {tri:>6} {sq:>6}");
    }
    let limit = 100_000;
    assert!((0..=limit).all(|n| sum_of_two_triangulars(n, true) == sum_of_two_squares(4 * n + 1)));
    println!("identity verified for every n up to {limit}");

    // For primes the two-squares side collapses to a residue condition.
    let sieve = build_sieve(100_000)?;
    assert!(sieve
        .ones()
        .all(|p| sum_of_two_squares(p) == (p == 2 || p % 4 == 1)));
    println!("prime p is two squares iff p = 2 or p = 1 mod 4, up to 100000");

    // Primes that are sums of two POSITIVE triangulars, by residue class.
    // Mod 8 every admissible class fills in; mod 9 two kinds of emptiness
    // show up. Residue 1 is empty at tiny bounds but inhabited soon after,
    // while residues 5 and 8 stay empty forever: there 4p+1 = 3 or 6 mod 9
    // carries exactly one factor of 3, which no sum of two squares can.
    for (modulus, checkpoints) in [(8, [100, 100_000]), (9, [16, 100_000])] {
        let report = two_triangular_prime_counts(&sieve, modulus, &checkpoints)?;
        println!("\nprime counts by residue mod {modulus}:");
        println!(
            "  {:>8} {:>10} {:>10}",
            "residue", checkpoints[0], checkpoints[1]
        );
        for row in &report.rows {
            let note = if row.empty_at_max {
                "  <- empty for good"
            } else {
                ""
            };
            println!(
                "  {:>8} {:>10} {:>10}{note}",
                row.residue, row.counts[0], row.counts[1]
            );
        }
    }
    Ok(())
}
