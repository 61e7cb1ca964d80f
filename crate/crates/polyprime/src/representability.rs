//! Which integers (and primes) a combination actually represents.
//!
//! Everything classification predicts symbolically, this module checks by
//! enumeration: walk all index pairs (m, n) with `mu*T(r,m) + nu*T(s,n)`
//! up to a limit into a bitset, intersect with a prime sieve, count.
//!
//! Enumeration is exact and deterministic. With several workers the outer
//! index is dealt round-robin and each worker fills a private bitset; the
//! final OR-merge makes the result independent of scheduling.

use crate::error::{Error, Result};
use crate::polygonal::polygonal_number;
use crate::quadform::{CombinationSpec, QuadraticForm};
use crate::sieve::{BitSet, MAX_SIEVE_LIMIT};

/// One enumeration job: a combination, an inclusive value limit, and the
/// indexing convention (`min_index` 0 admits T(r, 0) = 0, 1 starts at
/// T(r, 1) = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ReprConfig {
    spec: CombinationSpec,
    limit: u64,
    min_index: u64,
}

impl ReprConfig {
    pub fn new(spec: CombinationSpec, limit: u64, min_index: u64) -> Result<Self> {
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::invalid(format!(
                "enumeration limit {limit} exceeds the supported maximum 2^34"
            )));
        }
        if min_index > 1 {
            return Err(Error::invalid(format!(
                "min_index selects the indexing convention and must be 0 or 1, got {min_index}"
            )));
        }
        Ok(ReprConfig {
            spec,
            limit,
            min_index,
        })
    }

    pub fn spec(&self) -> CombinationSpec {
        self.spec
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn min_index(&self) -> u64 {
        self.min_index
    }
}

/// Bitset of all values `mu*T(r,m) + nu*T(s,n) <= limit` over indices
/// `m, n >= min_index`.
pub fn enumerate_combination_values(cfg: &ReprConfig) -> BitSet {
    enumerate_combination_values_with_workers(cfg, 1)
        .expect("one worker is always a valid configuration")
}

/// Same values, outer index dealt round-robin over `workers` private
/// bitsets, OR-merged. Identical output for every worker count.
pub fn enumerate_combination_values_with_workers(
    cfg: &ReprConfig,
    workers: usize,
) -> Result<BitSet> {
    if workers == 0 {
        return Err(Error::invalid("worker count must be at least 1"));
    }
    if workers == 1 {
        let mut bits = BitSet::new(cfg.limit);
        accumulate_combination(&mut bits, cfg, cfg.min_index, 1);
        return Ok(bits);
    }
    let mut merged = BitSet::new(cfg.limit);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                scope.spawn(move || {
                    let mut bits = BitSet::new(cfg.limit);
                    accumulate_combination(&mut bits, cfg, cfg.min_index + w, workers as u64);
                    bits
                })
            })
            .collect();
        for handle in handles {
            merged.union_with(&handle.join().expect("enumeration workers do not panic"));
        }
    });
    Ok(merged)
}

/// Set every value with outer index m in {m_start, m_start + m_step, ...}.
/// The inner polygonal value is carried incrementally: consecutive r-gonal
/// numbers differ by (r-2)n + 1, so the loop body is additions only.
fn accumulate_combination(bits: &mut BitSet, cfg: &ReprConfig, m_start: u64, m_step: u64) {
    let spec = cfg.spec();
    let (mu, nu) = (spec.mu(), spec.nu());
    let limit = cfg.limit;
    // Smallest inner contribution: nu * T(s, min_index).
    let inner_floor = nu * cfg.min_index;
    let mut m = m_start;
    loop {
        let outer = polygonal_number(spec.r(), m).expect("gonality validated") as u128 * mu as u128;
        if outer + inner_floor as u128 > limit as u128 {
            break;
        }
        let outer = outer as u64;
        let mut contribution = inner_floor;
        let mut gap = nu * ((spec.s() as u64 - 2) * cfg.min_index + 1);
        let gap_step = nu * (spec.s() as u64 - 2);
        while outer + contribution <= limit {
            bits.insert(outer + contribution);
            contribution += gap;
            gap += gap_step;
        }
        m += m_step;
    }
}

/// Bitset of all values `q(x, y)` in `[0, limit]` over the form's domain
/// `x >= x_origin, y >= y_origin`.
///
/// Requires `b = 0` and `a, c > 0`: the polynomial is then separable, both
/// one-variable parts eventually increase, and termination is guaranteed.
/// Parity substitution only ever produces this shape.
pub fn enumerate_form_values(q: &QuadraticForm, limit: u64) -> Result<BitSet> {
    if q.b() != 0 || q.a() <= 0 || q.c() <= 0 {
        return Err(Error::invalid(
            "form enumeration is defined for b = 0, a > 0, c > 0",
        ));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::invalid(format!(
            "enumeration limit {limit} exceeds the supported maximum 2^34"
        )));
    }
    let (a, c) = (q.a() as i128, q.c() as i128);
    let (e, f, g) = (q.e() as i128, q.f() as i128, q.g() as i128);
    let x_part = |x: i128| a * x * x + e * x;
    let y_part = |y: i128| c * y * y + f * y;

    // Minimum of the y-part over the integer domain: at the origin, or at
    // one of the two integers around the parabola vertex -f / 2c.
    let y_vertex = (-f).div_euclid(2 * c);
    let y_min = [q.y_origin() as i128, y_vertex, y_vertex + 1]
        .into_iter()
        .map(|y| y.max(q.y_origin() as i128))
        .map(y_part)
        .min()
        .expect("three candidates");

    let mut bits = BitSet::new(limit);
    let mut x = q.x_origin() as i128;
    loop {
        let base = x_part(x) + g;
        if base + y_min > limit as i128 && a * (2 * x + 1) + e > 0 {
            break;
        }
        let mut y = q.y_origin() as i128;
        loop {
            let value = base + y_part(y);
            if (0..=limit as i128).contains(&value) {
                bits.insert(value as u64);
            }
            if value > limit as i128 && c * (2 * y + 1) + f > 0 {
                break;
            }
            y += 1;
        }
        x += 1;
    }
    Ok(bits)
}

/// Count of representable primes up to the configured limit.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RepresentablePrimes {
    pub count: u64,
    /// Ascending, present when requested.
    pub members: Option<Vec<u64>>,
}

/// Primes `<= cfg.limit` that the combination represents. The sieve must
/// cover at least `cfg.limit`.
pub fn representable_primes(
    cfg: &ReprConfig,
    sieve: &BitSet,
    collect_members: bool,
) -> Result<RepresentablePrimes> {
    representable_primes_with_workers(cfg, sieve, collect_members, 1)
}

pub fn representable_primes_with_workers(
    cfg: &ReprConfig,
    sieve: &BitSet,
    collect_members: bool,
    workers: usize,
) -> Result<RepresentablePrimes> {
    if sieve.limit() < cfg.limit {
        return Err(Error::invalid(format!(
            "sieve covers only {} of the requested limit {}",
            sieve.limit(),
            cfg.limit
        )));
    }
    let values = enumerate_combination_values_with_workers(cfg, workers)?;
    let primes = values.intersection(sieve);
    Ok(RepresentablePrimes {
        count: primes.count(),
        members: collect_members.then(|| primes.ones().collect()),
    })
}

/// Whether n is a sum of two squares (zero allowed), decided by
/// factorization: n qualifies exactly when every prime congruent to
/// 3 mod 4 divides it to an even power.
pub fn sum_of_two_squares(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut n = n >> n.trailing_zeros(); // powers of 2 are irrelevant
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            let mut exponent = 0u32;
            while n % d == 0 {
                n /= d;
                exponent += 1;
            }
            if d % 4 == 3 && exponent % 2 == 1 {
                return false;
            }
        }
        d += 2;
    }
    // Leftover prime factor, if any.
    n % 4 != 3
}

/// Whether n is a sum of two triangular numbers. `allow_zero` admits
/// T(3, 0) = 0 as a summand.
pub fn sum_of_two_triangulars(n: u64, allow_zero: bool) -> bool {
    let min_index = if allow_zero { 0u64 } else { 1 };
    let smallest = min_index; // T(3, 0) = 0, T(3, 1) = 1
    if n < 2 * smallest {
        return n == 0 && allow_zero;
    }
    let mut a = min_index;
    loop {
        let ta = crate::polygonal::polygonal_number(3, a).expect("gonality 3");
        if ta > n - smallest {
            return false;
        }
        if let Some(b) = crate::polygonal::inverse_polygonal(3, n - ta).expect("gonality 3") {
            if b >= min_index {
                return true;
            }
        }
        a += 1;
    }
}

/// Whether 4n + 1 is a sum of two squares. For n a sum of two triangular
/// numbers (zero allowed) this always holds, and conversely:
/// n = T(3,a) + T(3,b) exactly when 4n + 1 = (a+b+1)^2 + (a-b)^2.
pub fn four_n_plus_one_is_two_squares(n: u64) -> bool {
    sum_of_two_squares(4 * n + 1)
}
