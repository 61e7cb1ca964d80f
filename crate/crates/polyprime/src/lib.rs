//! Prime density of linear combinations of polygonal numbers.
//!
//! For gonalities `r, s >= 3` and coprime positive weights `mu, nu`, the
//! combination `mu*T(r,m) + nu*T(s,n)` of two polygonal numbers falls into
//! exactly one of three prime-density regimes:
//!
//! * **Dense**: about `N / log N` primes up to `N` are represented,
//! * **Sparse**: about `N / (log N)^(3/2)`,
//! * **Negligible**: finitely many.
//!
//! The regime is decided symbolically. Splitting `(m, n)` by parity turns the
//! combination into four quadratic polynomials in two variables, and two
//! integer invariants of each polynomial (the discriminant `delta = b^2 - 4ac`
//! and `D = af^2 - bef + ce^2 + g*delta`) pick the regime via Iwaniec's
//! theorem on primes represented by quadratic polynomials: degenerate cases
//! (square `delta`, or `D = 0`) are Dense, non-degenerate ones Sparse, and
//! polynomials that are imprimitive or never odd contribute nothing.
//!
//! The crate computes both sides of the story:
//!
//! * [`quadform`] builds the four parity polynomials, computes their
//!   invariants exactly, and classifies;
//! * [`polygonal`], [`sieve`], and [`representability`] enumerate the
//!   represented integers up to large bounds and intersect them with primes;
//! * [`analysis`] fits the observed counts against the two predicted
//!   asymptotics and probes scarcity in arithmetic progressions.
//!
//! Everything is deterministic: the same inputs produce byte-identical
//! reports, regardless of worker count.
//!
//! The `examples/` directory is the front door; each file is a small runnable
//! tour of one capability:
//!
//! ```text
//! cargo run --example classify             regime classification and invariants
//! cargo run --example parity_forms         the four parity substitutions, spelled out
//! cargo run --example polygonal_numbers    evaluation, inversion, streaming
//! cargo run --example sieve_and_cache      segmented sieve + on-disk prime cache
//! cargo run --example representable        enumerating represented integers and primes
//! cargo run --example fit_exponent         recovering log-power exponents from counts
//! cargo run --example ap_scarcity          representable primes in progressions
//! cargo run --example two_triangulars      sums of two triangulars and 4p+1 squares
//! ```
//!
//! A thin CLI wraps the same calls (`polyprime classify|count|fit|ap|oq|
//! identity-check|sieve`); see the README.
//!
//! # Quick start
//!
//! ```
//! use polyprime::quadform::{CombinationSpec, Regime};
//!
//! // mu*T(r,m) + nu*T(s,n) with r = s = 3, mu = nu = 1: sums of two triangulars.
//! let spec = CombinationSpec::new(3, 3, 1, 1).unwrap();
//! let class = spec.classify();
//! assert_eq!(class.overall, Regime::Sparse);
//!
//! // Squares are the single Dense family.
//! let squares = CombinationSpec::new(4, 4, 1, 1).unwrap();
//! assert_eq!(squares.classify().overall, Regime::Dense);
//! ```

pub mod analysis;
pub mod cli;
pub mod config;
pub mod error;
pub mod polygonal;
pub mod quadform;
pub mod report;
pub mod representability;
pub mod sieve;

pub use error::{Error, Result};
pub use quadform::{CombinationSpec, ParityCase, QuadraticForm, Regime};
pub use representability::ReprConfig;
pub use sieve::BitSet;
