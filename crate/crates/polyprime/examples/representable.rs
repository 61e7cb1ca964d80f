//! Enumerating the integers a combination represents, and the primes among
//! them.
//!
//! Run with: cargo run --example representable

use polyprime::representability::{enumerate_combination_values, representable_primes};
use polyprime::sieve::build_sieve;
use polyprime::{CombinationSpec, ReprConfig, Result};

fn main() -> Result<()> {
    // Sums of two positive triangular numbers.
    let spec = CombinationSpec::new(3, 3, 1, 1)?;
    let cfg = ReprConfig::new(spec, 100, 1)?;
    let values: Vec<u64> = enumerate_combination_values(&cfg).ones().collect();
    println!("T(3,m) + T(3,n) with m,n >= 1, values up to 100:");
    println!("  {values:?}");

    // min_index 0 admits zero terms, so single triangulars slip in too.
    let with_zero = ReprConfig::new(spec, 100, 0)?;
    let extra: Vec<u64> = enumerate_combination_values(&with_zero)
        .ones()
        .filter(|v| !values.contains(v))
        .collect();
    println!("  additionally with m,n >= 0: {extra:?}");

    // Intersecting with the sieve picks out the representable primes.
    let sieve = build_sieve(1_000_000)?;
    let primes = representable_primes(&cfg, &sieve, true)?;
    println!(
        "\nrepresentable primes up to 100: {:?}",
        primes.members.unwrap()
    );

    // The same machinery at a million, for a few combinations. The counts
    // already hint at the regime gap: (4,4,*) families run well ahead.
    println!("\nrepresentable primes up to 10^6:");
    for (r, s, mu, nu) in [
        (3, 3, 1, 1),
        (3, 4, 1, 1),
        (4, 4, 1, 1),
        (4, 4, 1, 2),
        (6, 5, 3, 2),
    ] {
        let spec = CombinationSpec::new(r, s, mu, nu)?;
        let cfg = ReprConfig::new(spec, 1_000_000, 1)?;
        let found = representable_primes(&cfg, &sieve, false)?;
        println!(
            "  {mu}*T({r},m) + {nu}*T({s},n): {:>6}  ({})",
            found.count,
            spec.classify().overall
        );
    }
    Ok(())
}
