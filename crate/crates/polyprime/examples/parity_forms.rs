//! The parity substitutions that turn a polygonal combination into four
//! quadratic polynomials, checked against direct evaluation.
//!
//! Run with: cargo run --example parity_forms

use polyprime::polygonal::polygonal_number;
use polyprime::quadform::{CombinationSpec, ParityCase};
use polyprime::Result;

fn main() -> Result<()> {
    let (r, s, mu, nu) = (5, 4, 2, 3);
    let spec = CombinationSpec::new(r, s, mu, nu)?;
    println!("{mu}*T({r},m) + {nu}*T({s},n), split by the parities of (m, n):\n");

    for case in ParityCase::ALL {
        let q = spec.parity_polynomial(case);
        println!("  {}: q(x, y) = {}", case.label(), q);
        println!(
            "      m = 2x + {}, n = 2y + {}, with x >= {}, y >= {}",
            q.x_origin() ^ 1,
            q.y_origin() ^ 1,
            q.x_origin(),
            q.y_origin()
        );

        // Every admitted (x, y) must reproduce the combination exactly.
        let mut checked = 0;
        for x in i64::from(q.x_origin())..20 {
            for y in i64::from(q.y_origin())..20 {
                let m = (2 * x + i64::from(q.x_origin() ^ 1)) as u64;
                let n = (2 * y + i64::from(q.y_origin() ^ 1)) as u64;
                let direct = mu as u128 * polygonal_number(r, m)? as u128
                    + nu as u128 * polygonal_number(s, n)? as u128;
                assert_eq!(q.eval(x, y) as u128, direct, "case {case:?} at ({x},{y})");
                checked += 1;
            }
        }
        println!("      matches mu*T + nu*T at {checked} grid points");
        println!(
            "      delta = {}, D = {}, content = {}\n",
            q.discriminant(),
            q.invariant_d(),
            q.content()?
        );
    }

    println!("all four polynomials share delta = -16*mu*nu*(r-2)*(s-2) and D;");
    println!("the classifier needs only those two numbers plus the content.");
    Ok(())
}
