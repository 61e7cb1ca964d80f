//! Exact evaluation, inversion, and streaming of polygonal numbers.
//!
//! The m-th r-gonal number is
//!
//! ```text
//! T(r, m) = (r - 2) * m * (m - 1) / 2 + m
//! ```
//!
//! triangular numbers for r = 3, squares for r = 4, pentagonal numbers for
//! r = 5, and so on. All arithmetic is exact; anything that would leave the
//! representable range is an error, never a rounded value.
//!
//! Whether index 0 (so T = 0) counts as a polygonal number varies by
//! convention, so every consumer takes a `min_index` of 0 or 1 and both
//! conventions stay available.

use crate::error::{Error, Result};

/// Values above 2^63 are rejected; callers sieve nowhere near that high.
const VALUE_CEILING: u128 = 1 << 63;

fn check_gonality(r: u32) -> Result<()> {
    if r < 3 {
        return Err(Error::invalid(format!(
            "gonality must be at least 3, got {r}"
        )));
    }
    Ok(())
}

/// T(r, m), exactly.
pub fn polygonal_number(r: u32, m: u64) -> Result<u64> {
    check_gonality(r)?;
    if m == 0 {
        return Ok(0);
    }
    // m(m-1) is even, so the halving below is exact.
    let pairs = (m as u128) * (m as u128 - 1) / 2;
    let value = (r as u128 - 2) * pairs + m as u128;
    if value > VALUE_CEILING {
        return Err(Error::invalid(format!(
            "T({r}, {m}) exceeds 2^63 and is out of supported range"
        )));
    }
    Ok(value as u64)
}

/// The index m with T(r, m) = n, if n is r-gonal. Indices are unique for
/// n >= 1 because T(r, .) is strictly increasing from index 1 on.
///
/// Solves the quadratic exactly: with disc = (r-4)^2 + 8n(r-2), n is r-gonal
/// iff disc is a perfect square s^2 and 2(r-2) divides s + r - 4.
pub fn inverse_polygonal(r: u32, n: u64) -> Result<Option<u64>> {
    check_gonality(r)?;
    if n == 0 {
        // The quadratic-formula branch below picks the positive root and
        // misses the m = 0 solution, so answer it directly.
        return Ok(Some(0));
    }
    let r = r as u128;
    let signed = r as i128 - 4; // negative exactly when r = 3
    let disc = (signed * signed) as u128 + 8 * (n as u128) * (r - 2);
    let root = disc.isqrt();
    if root * root != disc {
        return Ok(None);
    }
    let numer = root as i128 + signed;
    let denom = 2 * (r as i128 - 2);
    if numer <= 0 || numer % denom != 0 {
        return Ok(None);
    }
    let m = (numer / denom) as u64;
    // Exactness belt-and-braces: confirm rather than trust the branch choice.
    match polygonal_number(r as u32, m)? == n {
        true => Ok(Some(m)),
        false => Ok(None),
    }
}

/// Ascending r-gonal numbers T(r, m) <= limit for m >= min_index.
///
/// Consecutive values differ by (r-2)m + 1, so the iterator runs on two
/// additions per step with no multiplication.
pub fn polygonal_sequence(r: u32, limit: u64, min_index: u64) -> Result<PolygonalSequence> {
    check_gonality(r)?;
    if min_index > 1 {
        return Err(Error::invalid(format!(
            "min_index selects the indexing convention and must be 0 or 1, got {min_index}"
        )));
    }
    Ok(PolygonalSequence {
        gap_step: r as u64 - 2,
        limit,
        value: Some(min_index), // T(r, 0) = 0 and T(r, 1) = 1 for every r
        gap: (r as u64 - 2) * min_index + 1,
    })
}

#[derive(Debug, Clone)]
pub struct PolygonalSequence {
    gap_step: u64,
    limit: u64,
    value: Option<u64>,
    gap: u64,
}

impl Iterator for PolygonalSequence {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.value?;
        if current > self.limit {
            self.value = None;
            return None;
        }
        self.value = current.checked_add(self.gap);
        self.gap += self.gap_step;
        Some(current)
    }
}
