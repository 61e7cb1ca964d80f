//! The segmented prime sieve and its on-disk cache format.
//!
//! Run with: cargo run --example sieve_and_cache

use polyprime::sieve::{
    build_sieve, build_sieve_with, load_cache, prime_count, primes_in_progression, save_cache,
};
use polyprime::Result;

fn main() -> Result<()> {
    let limit = 10_000_000;
    let sieve = build_sieve(limit)?;
    println!("sieved 2..={limit}");
    for n in [100, 10_000, 1_000_000, limit] {
        println!("  pi({n}) = {}", prime_count(&sieve, n)?);
    }

    // Dirichlet: the odd primes split evenly between 1 and 3 mod 4.
    println!("\nprimes up to {limit} by residue mod 4:");
    for a in [1, 3] {
        println!(
            "  {a} mod 4: {}",
            primes_in_progression(&sieve, a, 4, limit)?
        );
    }

    // The cache is a tiny header plus the raw bitset payload; reloading is
    // exact, and a worker count changes nothing about the result.
    let dir = std::env::temp_dir().join("polyprime-example-cache");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("primes.sieve");
    save_cache(&sieve, &path)?;
    let on_disk = std::fs::metadata(&path)?.len();
    println!("\nsaved {} bytes to {}", on_disk, path.display());

    let reloaded = load_cache(&path)?;
    assert!(reloaded == sieve, "cache round trip must be bit-exact");
    println!("reloaded sieve is bit-identical");

    let threaded = build_sieve_with(limit, 4, 1 << 18)?;
    assert!(
        threaded == sieve,
        "workers and segment size must not matter"
    );
    println!("4-worker build with 2^18-bit segments is bit-identical too");

    std::fs::remove_file(&path)?;
    Ok(())
}
