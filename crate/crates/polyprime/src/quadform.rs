//! Quadratic polynomials in two variables and their prime-density invariants.
//!
//! A combination `mu*T(r,m) + nu*T(s,n)` of two polygonal numbers is not a
//! polynomial in `(m, n)` with even coefficients, but splitting `m` and `n`
//! by parity produces four genuine quadratic polynomials
//!
//! ```text
//! q(x, y) = a x^2 + b xy + c y^2 + e x + f y + g
//! ```
//!
//! one per parity case, each with `b = 0`. Two integers decide how many
//! primes such a polynomial represents:
//!
//! * the discriminant `delta = b^2 - 4ac`, and
//! * `D = a f^2 - b e f + c e^2 + g * delta`.
//!
//! By Iwaniec's theorem on quadratic polynomials in two variables, a
//! primitive polynomial that depends on both variables and takes odd values
//! represents about `N / log N` primes when it degenerates (`delta` a perfect
//! square, or `D = 0`) and about `N / (log N)^(3/2)` otherwise. Imprimitive
//! polynomials, and polynomials that are never odd, represent at most
//! finitely many primes.
//!
//! Everything here is exact integer arithmetic in `i128`; coefficient bounds
//! enforced at construction keep every invariant far from overflow.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Coefficient magnitude cap. With |coefficients| below 2^41 the largest
/// intermediate (g * delta) stays under 2^126, inside i128.
pub const MAX_COEFF: i64 = 1 << 41;

/// Cap on r, s, mu, nu. Parity-case coefficients reach 2 * mu * (r - 2),
/// so this keeps them under [`MAX_COEFF`].
pub const MAX_SPEC_PARAM: u64 = 1 << 20;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn is_perfect_square(v: i128) -> bool {
    if v < 0 {
        return false;
    }
    let root = (v as u128).isqrt();
    root * root == v as u128
}

/// `a x^2 + b xy + c y^2 + e x + f y + g` over domain `x >= x_origin`,
/// `y >= y_origin`, with origins in {0, 1}.
///
/// The origins record where enumeration starts; they do not affect any
/// invariant. Parity substitutions produce origin 1 in a variable exactly
/// when the original polygonal index must stay positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    a: i64,
    b: i64,
    c: i64,
    e: i64,
    f: i64,
    g: i64,
    x_origin: u8,
    y_origin: u8,
}

impl QuadraticForm {
    pub fn new(
        a: i64,
        b: i64,
        c: i64,
        e: i64,
        f: i64,
        g: i64,
        x_origin: u8,
        y_origin: u8,
    ) -> Result<Self> {
        if x_origin > 1 || y_origin > 1 {
            return Err(Error::invalid(format!(
                "domain origins must be 0 or 1, got ({x_origin}, {y_origin})"
            )));
        }
        for (name, v) in [("a", a), ("b", b), ("c", c), ("e", e), ("f", f), ("g", g)] {
            if v.abs() > MAX_COEFF {
                return Err(Error::invalid(format!(
                    "coefficient {name} = {v} exceeds the supported magnitude 2^41"
                )));
            }
        }
        Ok(QuadraticForm {
            a,
            b,
            c,
            e,
            f,
            g,
            x_origin,
            y_origin,
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn e(&self) -> i64 {
        self.e
    }
    pub fn f(&self) -> i64 {
        self.f
    }
    pub fn g(&self) -> i64 {
        self.g
    }
    pub fn x_origin(&self) -> u8 {
        self.x_origin
    }
    pub fn y_origin(&self) -> u8 {
        self.y_origin
    }

    /// Exact value of the polynomial. Arguments are capped at 2^40 in
    /// magnitude so the result fits i128 with every coefficient at the cap.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        debug_assert!(x.abs() <= 1 << 40 && y.abs() <= 1 << 40);
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x
            + self.b as i128 * x * y
            + self.c as i128 * y * y
            + self.e as i128 * x
            + self.f as i128 * y
            + self.g as i128
    }

    /// `delta = b^2 - 4ac`.
    pub fn discriminant(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    /// `D = a f^2 - b e f + c e^2 + g * delta`.
    pub fn invariant_d(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (e, f, g) = (self.e as i128, self.f as i128, self.g as i128);
        a * f * f - b * e * f + c * e * e + g * self.discriminant()
    }

    /// `(alpha, beta) = (bf - 2ce, be - 2af)`.
    pub fn alpha_beta(&self) -> (i128, i128) {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (e, f) = (self.e as i128, self.f as i128);
        (b * f - 2 * c * e, b * e - 2 * a * f)
    }

    /// Whether the partial derivatives `q_x = 2ax + by + e` and
    /// `q_y = bx + 2cy + f` are linearly independent over the rationals.
    /// They are dependent exactly when `delta = alpha = beta = 0`.
    pub fn partials_independent(&self) -> bool {
        let (alpha, beta) = self.alpha_beta();
        !(self.discriminant() == 0 && alpha == 0 && beta == 0)
    }

    /// gcd of the nonzero coefficients. The zero polynomial has no content.
    pub fn content(&self) -> Result<u64> {
        let d = [self.a, self.b, self.c, self.e, self.f, self.g]
            .iter()
            .fold(0u64, |acc, &v| gcd(acc, v.unsigned_abs()));
        if d == 0 {
            return Err(Error::invalid("the zero polynomial has no content"));
        }
        Ok(d)
    }

    /// Whether q takes at least one odd value on its domain. The parity of
    /// q(x, y) depends only on (x mod 2, y mod 2), so checking the four
    /// parity representatives next to the origin settles it.
    ///
    /// Requires a > 0 and c > 0, which makes the domain infinite in both
    /// variables and every parity class reachable.
    pub fn represents_odd_values(&self) -> Result<bool> {
        if self.a <= 0 || self.c <= 0 {
            return Err(Error::invalid(
                "odd-value test is defined for polynomials with a > 0 and c > 0",
            ));
        }
        let x0 = self.x_origin as i64;
        let y0 = self.y_origin as i64;
        for dx in 0..2 {
            for dy in 0..2 {
                if self.eval(x0 + dx, y0 + dy) % 2 != 0 {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Irreducibility over the integers for polynomials of total degree 2.
    ///
    /// Reducible means a factorization into two non-unit factors: either the
    /// content exceeds 1, or q splits into two linear polynomials. For the
    /// b = 0, a > 0, c > 0 shape no linear split exists (the leading
    /// coefficients would have to satisfy (a1*b2)^2 = -ac < 0), so content
    /// decides. Other shapes fall back to a bounded search for factors.
    pub fn is_irreducible_over_z(&self) -> Result<bool> {
        if self.a == 0 && self.b == 0 && self.c == 0 {
            return Err(Error::invalid(
                "irreducibility test is defined for polynomials of degree 2",
            ));
        }
        if self.content()? > 1 {
            return Ok(false);
        }
        if self.b == 0 && self.a > 0 && self.c > 0 {
            return Ok(true);
        }
        Ok(!self.splits_into_linear_factors())
    }

    /// Search for q = (a1 x + b1 y + c1)(a2 x + b2 y + c2) over the integers.
    /// Only called on content-1 polynomials, where Gauss's lemma turns any
    /// rational factorization into an integer one. A factor coefficient with
    /// a nonzero partner in the cofactor divides the matching coefficient of
    /// q, and the degenerate zero patterns are forced, so |max coefficient|
    /// bounds the search. The cube of that bound is the cost; the b = 0,
    /// a > 0, c > 0 fast path in `is_irreducible_over_z` never gets here.
    fn splits_into_linear_factors(&self) -> bool {
        let q = [self.a, self.b, self.c, self.e, self.f, self.g];
        let bound = q.iter().map(|v| v.abs()).max().unwrap_or(0).max(1);
        for a1 in -bound..=bound {
            for b1 in -bound..=bound {
                for c1 in -bound..=bound {
                    if a1 == 0 && b1 == 0 {
                        // Units and constants are not factors.
                        continue;
                    }
                    if let Some((a2, b2, _)) = self.cofactor_of(a1, b1, c1) {
                        if a2 != 0 || b2 != 0 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// The unique linear cofactor of a candidate factor, if it exists.
    fn cofactor_of(&self, a1: i64, b1: i64, c1: i64) -> Option<(i128, i128, i128)> {
        let (a1, b1, c1) = (a1 as i128, b1 as i128, c1 as i128);
        let q = [
            self.a as i128,
            self.b as i128,
            self.c as i128,
            self.e as i128,
            self.f as i128,
            self.g as i128,
        ];
        let exact = |num: i128, den: i128| -> Option<i128> { (num % den == 0).then(|| num / den) };
        // Derive (a2, b2, c2) from whichever equations have a nonzero
        // coefficient of the candidate, then verify the full expansion.
        let (a2, b2, c2) = if a1 != 0 {
            let a2 = exact(q[0], a1)?;
            let b2 = exact(q[1] - b1 * a2, a1)?;
            let c2 = exact(q[3] - c1 * a2, a1)?;
            (a2, b2, c2)
        } else {
            // a1 = 0 and b1 != 0 (constants were filtered by the caller).
            if q[0] != 0 {
                return None;
            }
            let a2 = exact(q[1], b1)?;
            let b2 = exact(q[2], b1)?;
            let c2 = exact(q[4] - c1 * b2, b1)?;
            (a2, b2, c2)
        };
        let product = [
            a1 * a2,
            a1 * b2 + a2 * b1,
            b1 * b2,
            a1 * c2 + a2 * c1,
            b1 * c2 + b2 * c1,
            c1 * c2,
        ];
        (product == q).then_some((a2, b2, c2))
    }

    /// Prime-density regime of this polynomial, for the b = 0, a > 0, c > 0
    /// shape produced by parity substitution.
    ///
    /// Imprimitive or never-odd polynomials are Negligible. Otherwise a
    /// square discriminant or D = 0 puts the polynomial in the Dense regime
    /// (about N / log N primes up to N), anything else in Sparse (about
    /// N / (log N)^(3/2)).
    pub fn classify_regime(&self) -> Result<Regime> {
        if self.b != 0 || self.a <= 0 || self.c <= 0 {
            return Err(Error::invalid(
                "regime classification is defined for b = 0, a > 0, c > 0",
            ));
        }
        if self.content()? > 1 || !self.represents_odd_values()? {
            return Ok(Regime::Negligible);
        }
        if is_perfect_square(self.discriminant()) || self.invariant_d() == 0 {
            return Ok(Regime::Dense);
        }
        Ok(Regime::Sparse)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: [(i64, &str); 6] = [
            (self.a, "x^2"),
            (self.b, "xy"),
            (self.c, "y^2"),
            (self.e, "x"),
            (self.f, "y"),
            (self.g, ""),
        ];
        let mut first = true;
        for (coeff, sym) in terms {
            if coeff == 0 {
                continue;
            }
            if first {
                if coeff < 0 {
                    write!(out, "-")?;
                }
                first = false;
            } else if coeff < 0 {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let mag = coeff.unsigned_abs();
            if mag != 1 || sym.is_empty() {
                write!(out, "{mag}")?;
            }
            write!(out, "{sym}")?;
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

/// Parity of the pair (m, n) in `mu*T(r,m) + nu*T(s,n)`: E means even, O odd,
/// first letter for m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParityCase {
    #[serde(rename = "EE")]
    EvenEven,
    #[serde(rename = "EO")]
    EvenOdd,
    #[serde(rename = "OE")]
    OddEven,
    #[serde(rename = "OO")]
    OddOdd,
}

impl ParityCase {
    pub const ALL: [ParityCase; 4] = [
        ParityCase::EvenEven,
        ParityCase::EvenOdd,
        ParityCase::OddEven,
        ParityCase::OddOdd,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ParityCase::EvenEven => "EE",
            ParityCase::EvenOdd => "EO",
            ParityCase::OddEven => "OE",
            ParityCase::OddOdd => "OO",
        }
    }
}

impl fmt::Display for ParityCase {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.label())
    }
}

/// How many primes up to N the combination represents, asymptotically.
/// Ordered: Negligible < Sparse < Dense, so `max` over cases is the overall
/// answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Regime {
    /// Finitely many primes.
    Negligible,
    /// About N / (log N)^(3/2).
    Sparse,
    /// About N / log N.
    Dense,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Negligible => "Negligible",
            Regime::Sparse => "Sparse",
            Regime::Dense => "Dense",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.label())
    }
}

/// The combination `mu*T(r,m) + nu*T(s,n)`: gonalities r, s >= 3 and coprime
/// weights mu, nu >= 1. All four parameters are capped at 2^20 so that every
/// derived coefficient and invariant stays exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CombinationSpec {
    r: u32,
    s: u32,
    mu: u64,
    nu: u64,
}

impl CombinationSpec {
    pub fn new(r: u32, s: u32, mu: u64, nu: u64) -> Result<Self> {
        for (name, v) in [("r", r as u64), ("s", s as u64)] {
            if v < 3 {
                return Err(Error::invalid(format!(
                    "gonality {name} must be at least 3, got {v}"
                )));
            }
            if v > MAX_SPEC_PARAM {
                return Err(Error::invalid(format!(
                    "gonality {name} = {v} exceeds 2^20"
                )));
            }
        }
        for (name, v) in [("mu", mu), ("nu", nu)] {
            if v < 1 {
                return Err(Error::invalid(format!("weight {name} must be positive")));
            }
            if v > MAX_SPEC_PARAM {
                return Err(Error::invalid(format!("weight {name} = {v} exceeds 2^20")));
            }
        }
        if gcd(mu, nu) != 1 {
            return Err(Error::invalid(format!(
                "weights must be coprime, got gcd({mu}, {nu}) = {}",
                gcd(mu, nu)
            )));
        }
        Ok(CombinationSpec { r, s, mu, nu })
    }

    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn mu(&self) -> u64 {
        self.mu
    }
    pub fn nu(&self) -> u64 {
        self.nu
    }

    /// The quadratic polynomial obtained by substituting the given parities
    /// of (m, n) into `mu*T(r,m) + nu*T(s,n)`, with indices kept positive.
    ///
    /// Even index 2x contributes `2w(r-2) x^2 + w(4-r) x` (x >= 1), odd
    /// index 2y+1 contributes `2w(s-2) y^2 + ws y + w` (y >= 0). All four
    /// cases share a = 2*mu*(r-2), b = 0, c = 2*nu*(s-2).
    pub fn parity_polynomial(&self, case: ParityCase) -> QuadraticForm {
        let (r, s) = (self.r as i64, self.s as i64);
        let (mu, nu) = (self.mu as i64, self.nu as i64);
        let a = 2 * mu * (r - 2);
        let c = 2 * nu * (s - 2);
        let (e, f, g, x_origin, y_origin) = match case {
            ParityCase::EvenEven => (mu * (4 - r), nu * (4 - s), 0, 1, 1),
            ParityCase::EvenOdd => (mu * (4 - r), nu * s, nu, 1, 0),
            ParityCase::OddEven => (mu * r, nu * (4 - s), mu, 0, 1),
            ParityCase::OddOdd => (mu * r, nu * s, mu + nu, 0, 0),
        };
        QuadraticForm::new(a, 0, c, e, f, g, x_origin, y_origin)
            .expect("parameter caps keep parity coefficients in range")
    }

    /// D is the same for all four parity cases:
    /// `D = 2*mu*nu^2*(r-2)*(4-s)^2 + 2*mu^2*nu*(s-2)*(4-r)^2`.
    /// Both terms are nonnegative, and D = 0 exactly when r = s = 4.
    pub fn closed_form_invariant_d(&self) -> i128 {
        let (r, s) = (self.r as i128, self.s as i128);
        let (mu, nu) = (self.mu as i128, self.nu as i128);
        2 * mu * nu * nu * (r - 2) * (4 - s) * (4 - s)
            + 2 * mu * mu * nu * (s - 2) * (4 - r) * (4 - r)
    }

    /// Content of each parity polynomial in closed form. Relies on
    /// gcd(mu, nu) = 1, which the constructor guarantees.
    pub fn content_closed_form(&self, case: ParityCase) -> u64 {
        let (r, s) = (self.r as u64, self.s as u64);
        let (mu, nu) = (self.mu, self.nu);
        match case {
            ParityCase::EvenEven => gcd(4, gcd(mu * r, nu * s)),
            ParityCase::EvenOdd => gcd(4, gcd(r, nu)),
            ParityCase::OddEven => gcd(4, gcd(s, mu)),
            ParityCase::OddOdd => gcd(gcd(4, mu + nu), gcd(r, s)),
        }
    }

    /// Classify all four parity cases and combine them. The combination
    /// inherits the densest regime among its cases.
    pub fn classify(&self) -> Classification {
        let cases = ParityCase::ALL.map(|case| {
            let form = self.parity_polynomial(case);
            let (alpha, beta) = form.alpha_beta();
            let content = form.content().expect("parity polynomials are nonzero");
            CaseReport {
                case,
                form,
                delta: form.discriminant(),
                invariant_d: form.invariant_d(),
                alpha,
                beta,
                content,
                primitive: content == 1,
                irreducible: form
                    .is_irreducible_over_z()
                    .expect("parity polynomials have degree 2"),
                regime: form
                    .classify_regime()
                    .expect("parity polynomials have b = 0, a > 0, c > 0"),
            }
        });
        let overall = cases
            .iter()
            .map(|case| case.regime)
            .max()
            .expect("four cases");
        Classification {
            spec: *self,
            overall,
            cases,
        }
    }
}

/// Everything classification knows about one parity case.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CaseReport {
    pub case: ParityCase,
    pub form: QuadraticForm,
    pub delta: i128,
    pub invariant_d: i128,
    pub alpha: i128,
    pub beta: i128,
    pub content: u64,
    pub primitive: bool,
    pub irreducible: bool,
    pub regime: Regime,
}

/// Result of classifying a combination: the four parity cases and the
/// densest regime among them.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub spec: CombinationSpec,
    pub overall: Regime,
    pub cases: [CaseReport; 4],
}
