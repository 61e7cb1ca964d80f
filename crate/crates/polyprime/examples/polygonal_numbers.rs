//! Polygonal numbers: evaluation, exact inversion, and streaming in order.
//!
//! Run with: cargo run --example polygonal_numbers

use polyprime::polygonal::{inverse_polygonal, polygonal_number, polygonal_sequence};
use polyprime::Result;

fn main() -> Result<()> {
    println!("T(r,m) = (r-2)*m*(m-1)/2 + m, the m-th r-gonal number:\n");
    print!("  {:>10}", "r \\ m");
    for m in 0..10u64 {
        print!(" {m:>6}");
    }
    println!();
    for (r, name) in [
        (3, "triangular"),
        (4, "square"),
        (5, "pentagonal"),
        (6, "hexagonal"),
    ] {
        print!("  {name:>10}");
        for m in 0..10 {
            print!(" {:>6}", polygonal_number(r, m)?);
        }
        println!();
    }

    // Inversion is exact: a value either is T(r,m) for a unique m, or is not.
    println!("\ninverse lookups:");
    for (r, value) in [(3, 5050), (3, 5051), (4, 1048576), (5, 782), (17, 1000)] {
        match inverse_polygonal(r, value)? {
            Some(m) => println!("  {value} = T({r},{m})"),
            None => println!("  {value} is not an r={r} polygonal number"),
        }
    }

    // Streaming uses the gap recurrence T(r,m+1) - T(r,m) = (r-2)m + 1,
    // one addition per term.
    let hexagonals: Vec<u64> = polygonal_sequence(6, 200, 1)?.collect();
    println!("\nhexagonal numbers up to 200: {hexagonals:?}");

    let big = polygonal_number(1000, 1_000_000)?;
    println!("\nT(1000, 10^6) = {big}");
    assert_eq!(inverse_polygonal(1000, big)?, Some(1_000_000));
    println!("round trip through inverse_polygonal agrees");
    Ok(())
}
