//! Symbolic regime classification: which combinations of two polygonal
//! families represent many primes, and why.
//!
//! Run with: cargo run --example classify

use polyprime::quadform::CombinationSpec;
use polyprime::Result;

fn main() -> Result<()> {
    println!("regime of mu*T(r,m) + nu*T(s,n) for a few combinations:\n");
    let samples = [
        (3, 3, 1, 1), // sums of two triangulars
        (4, 4, 1, 1), // sums of two squares
        (4, 4, 1, 2), // x^2 + 2y^2
        (3, 4, 1, 1), // triangular plus square
        (5, 3, 2, 1),
        (6, 5, 3, 2),
        (12, 7, 5, 4),
    ];
    for (r, s, mu, nu) in samples {
        let spec = CombinationSpec::new(r, s, mu, nu)?;
        let class = spec.classify();
        println!("  {mu}*T({r},m) + {nu}*T({s},n)  ->  {}", class.overall);
    }

    // The invariants behind one verdict. Each parity of (m, n) yields a
    // quadratic polynomial; delta = b^2 - 4ac is negative here, so the form
    // is Dense exactly when D = af^2 - bef + ce^2 + g*delta vanishes, and
    // that happens only for r = s = 4.
    let spec = CombinationSpec::new(6, 5, 3, 2)?;
    let class = spec.classify();
    println!("\nper-parity detail for 3*T(6,m) + 2*T(5,n):\n");
    println!(
        "  {:<5} {:<34} {:>8} {:>8} {:>8}  {}",
        "case", "polynomial", "delta", "D", "content", "regime"
    );
    for case in &class.cases {
        println!(
            "  {:<5} {:<34} {:>8} {:>8} {:>8}  {}",
            case.case.label(),
            case.form.to_string(),
            case.delta,
            case.invariant_d,
            case.content,
            case.regime
        );
    }
    println!("\noverall (best case wins): {}", class.overall);
    Ok(())
}
