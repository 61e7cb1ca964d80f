//! Recovering the log-power exponent from counts: Dense families should fit
//! count(N) ~ c*N/(log N), Sparse ones ~ c*N/(log N)^(3/2).
//!
//! Run with: cargo run --example fit_exponent

use polyprime::analysis::{count_checkpoints, fit_exponent, fit_scale_at_exponent};
use polyprime::sieve::build_sieve;
use polyprime::{CombinationSpec, ReprConfig, Result};

fn main() -> Result<()> {
    let checkpoints = [10_000, 100_000, 1_000_000, 10_000_000];
    let limit = *checkpoints.last().unwrap();
    let sieve = build_sieve(limit)?;

    println!("fitted e in count(N) ~ scale * N / (log N)^e, checkpoints 10^4..10^7:\n");
    println!(
        "  {:<22} {:>10} {:>9} {:>9}  {}",
        "combination", "fitted e", "scale", "residual", "classifier says"
    );
    for (r, s, mu, nu) in [
        (3, 3, 1, 1),
        (3, 4, 1, 1),
        (5, 3, 2, 1),
        (4, 4, 1, 1),
        (4, 4, 1, 2),
    ] {
        let spec = CombinationSpec::new(r, s, mu, nu)?;
        let cfg = ReprConfig::new(spec, limit, 1)?;
        let table = count_checkpoints(&cfg, &sieve, &checkpoints)?;
        let fit = fit_exponent(&table)?;
        println!(
            "  {:<22} {:>10.4} {:>9.4} {:>9.5}  {}",
            format!("{mu}*T({r},m) + {nu}*T({s},n)"),
            fit.exponent,
            fit.scale,
            fit.residual,
            spec.classify().overall
        );
    }

    // Pinning the exponent at the two predicted values makes the regimes
    // visible in the residuals alone: the right asymptotic fits an order of
    // magnitude tighter.
    println!("\nresiduals with the exponent pinned, for sums of two triangulars:");
    let cfg = ReprConfig::new(CombinationSpec::new(3, 3, 1, 1)?, limit, 1)?;
    let table = count_checkpoints(&cfg, &sieve, &checkpoints)?;
    for (name, exponent) in [("dense e=1", 1.0), ("sparse e=3/2", 1.5)] {
        let pinned = fit_scale_at_exponent(&table, exponent)?;
        println!(
            "  {name:<14} scale {:>7.4}  residual {:.5}",
            pinned.scale, pinned.residual
        );
    }
    Ok(())
}
