//! Dense bitsets over `0..=limit` and a segmented sieve of Eratosthenes.
//!
//! The sieve covers all integers, not just odd ones: set membership for
//! arbitrary values is the hot operation downstream (intersecting primes
//! with represented values), and the all-integers layout keeps that a single
//! shift-and-mask. Evens cost one pattern fill. The same layout is the
//! on-disk cache format, bit i of byte i/8, LSB first.
//!
//! Building walks fixed-size segments so the working set stays in cache, and
//! an explicit worker count splits the table into disjoint word ranges:
//! workers never share a word, results are identical for every worker count.

use crate::error::{Error, Result};
use std::fs;
use std::io::Write as _;
use std::path::Path;

/// Hard ceiling on sieve and enumeration limits (2 GiB of bits).
pub const MAX_SIEVE_LIMIT: u64 = 1 << 34;

/// Default segment size in bits; 2^21 bits is a 256 KiB working set.
pub const DEFAULT_SEGMENT_BITS: u64 = 1 << 21;

const CACHE_MAGIC: [u8; 8] = *b"PGPRIME1";
const CACHE_HEADER_LEN: usize = 24;

/// Fixed-capacity bitset over the values `0..=limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    limit: u64,
    words: Vec<u64>,
}

impl BitSet {
    /// Empty set over `0..=limit`.
    pub fn new(limit: u64) -> BitSet {
        let words = (limit / 64 + 1) as usize;
        BitSet {
            limit,
            words: vec![0; words],
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn contains(&self, value: u64) -> bool {
        value <= self.limit && self.words[(value / 64) as usize] >> (value % 64) & 1 == 1
    }

    /// Panics if `value` exceeds the limit; that is a caller bug, not data.
    pub fn insert(&mut self, value: u64) {
        assert!(
            value <= self.limit,
            "insert of {value} beyond bitset limit {}",
            self.limit
        );
        self.words[(value / 64) as usize] |= 1 << (value % 64);
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of set values `<= n`. Values past the limit add nothing.
    pub fn count_up_to(&self, n: u64) -> u64 {
        let n = n.min(self.limit);
        let full_words = (n / 64) as usize;
        let head: u64 = self.words[..full_words]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum();
        let partial_mask = if n % 64 == 63 {
            !0
        } else {
            (1u64 << (n % 64 + 1)) - 1
        };
        head + (self.words[full_words] & partial_mask).count_ones() as u64
    }

    /// Ascending iterator over the set values.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// In-place union; both sets must cover the same range.
    pub fn union_with(&mut self, other: &BitSet) {
        assert_eq!(
            self.limit, other.limit,
            "union of bitsets over different ranges"
        );
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    /// Values present in both sets, over the smaller of the two ranges.
    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let limit = self.limit.min(other.limit);
        let mut out = BitSet::new(limit);
        for (w, (x, y)) in out
            .words
            .iter_mut()
            .zip(self.words.iter().zip(&other.words))
        {
            *w = x & y;
        }
        out.mask_tail();
        out
    }

    /// Bits above `limit` in the last word must stay zero; every constructor
    /// and mutator preserves that, so equality and counting are exact.
    fn mask_tail(&mut self) {
        let used = self.limit % 64 + 1;
        let mask = if used == 64 { !0 } else { (1u64 << used) - 1 };
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros() as u64;
        self.current &= self.current - 1;
        Some(self.index as u64 * 64 + bit)
    }
}

/// Primes up to `limit` as a bitset, single worker.
pub fn build_sieve(limit: u64) -> Result<BitSet> {
    build_sieve_with(limit, 1, DEFAULT_SEGMENT_BITS)
}

/// Primes up to `limit` with an explicit worker count and segment size.
/// The result is identical for every worker count and segment size.
pub fn build_sieve_with(limit: u64, workers: usize, segment_bits: u64) -> Result<BitSet> {
    if limit < 2 {
        return Err(Error::invalid(format!(
            "sieve limit must be at least 2, got {limit}"
        )));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::invalid(format!(
            "sieve limit {limit} exceeds the supported maximum 2^34"
        )));
    }
    if workers == 0 {
        return Err(Error::invalid("worker count must be at least 1"));
    }
    let segment_words = ((segment_bits.max(64)) / 64) as usize;

    let base = small_odd_primes(limit.isqrt());

    let mut bits = BitSet::new(limit);
    // Evens out, odds in, one pattern store per word; then repair the small
    // exceptions: 1 is not prime, 2 is.
    for w in bits.words.iter_mut() {
        *w = 0xAAAA_AAAA_AAAA_AAAA;
    }
    bits.words[0] = bits.words[0] & !0b010 | 0b100;
    bits.mask_tail();

    let total_words = bits.words.len();
    let chunk_words = (total_words.div_ceil(workers)).max(1);
    if workers == 1 || chunk_words == total_words {
        mark_composites(&mut bits.words, 0, limit, &base, segment_words);
    } else {
        std::thread::scope(|scope| {
            for (index, chunk) in bits.words.chunks_mut(chunk_words).enumerate() {
                let first = (index * chunk_words) as u64 * 64;
                let last = (first + chunk.len() as u64 * 64 - 1).min(limit);
                let base = &base;
                scope.spawn(move || mark_composites(chunk, first, last, base, segment_words));
            }
        });
    }
    Ok(bits)
}

/// Clear every odd composite in the word range starting at global bit
/// `first`, walking sub-segments so each pass stays cache-resident.
/// `base` holds the odd primes up to sqrt(limit), ascending.
fn mark_composites(words: &mut [u64], first: u64, last: u64, base: &[u64], segment_words: usize) {
    for (seg_index, segment) in words.chunks_mut(segment_words).enumerate() {
        let lo = first + (seg_index * segment_words) as u64 * 64;
        let hi = (lo + segment.len() as u64 * 64 - 1).min(last);
        for &p in base {
            if p * p > hi {
                break;
            }
            // First odd multiple of p that is >= lo and >= p*p.
            let mut k = p.max(lo.div_ceil(p));
            if k % 2 == 0 {
                k += 1;
            }
            let mut at = k * p;
            while at <= hi {
                let local = at - lo;
                segment[(local / 64) as usize] &= !(1 << (local % 64));
                at += 2 * p;
            }
        }
    }
}

/// Odd primes up to `limit`, by a plain dense sieve. Only used for the base
/// primes, so `limit` is at most 2^17.
fn small_odd_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in (3..=n).step_by(2) {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut at = p * p;
        while at <= n {
            composite[at] = true;
            at += 2 * p;
        }
    }
    primes
}

/// Number of primes `<= n`.
pub fn prime_count(sieve: &BitSet, n: u64) -> Result<u64> {
    if n > sieve.limit() {
        return Err(Error::invalid(format!(
            "count up to {n} requested from a sieve of limit {}",
            sieve.limit()
        )));
    }
    Ok(sieve.count_up_to(n))
}

/// Number of primes `<= n` congruent to `a` mod `q`. Primes dividing `q`
/// land in their own residue classes, so summing over all residues gives
/// exactly the prime count.
pub fn primes_in_progression(sieve: &BitSet, a: u64, q: u64, n: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::invalid("progression modulus must be at least 1"));
    }
    if a >= q {
        return Err(Error::invalid(format!(
            "residue {a} is not reduced mod {q}"
        )));
    }
    if n > sieve.limit() {
        return Err(Error::invalid(format!(
            "count up to {n} requested from a sieve of limit {}",
            sieve.limit()
        )));
    }
    Ok(sieve
        .ones()
        .take_while(|&p| p <= n)
        .filter(|&p| p % q == a)
        .count() as u64)
}

/// Write the sieve to `path`.
///
/// Layout: magic `PGPRIME1`, little-endian u64 limit, little-endian u64
/// payload byte count L = ceil((limit+1)/8), then L payload bytes. Bit i of
/// the set lives in byte i/8 at position i%8, LSB first; padding bits of the
/// final byte are zero.
pub fn save_cache(sieve: &BitSet, path: &Path) -> Result<()> {
    let payload_len = payload_bytes(sieve.limit);
    let mut file = std::io::BufWriter::new(fs::File::create(path)?);
    file.write_all(&CACHE_MAGIC)?;
    file.write_all(&sieve.limit.to_le_bytes())?;
    file.write_all(&(payload_len as u64).to_le_bytes())?;
    let mut written = 0usize;
    for word in &sieve.words {
        let bytes = word.to_le_bytes();
        let take = bytes.len().min(payload_len - written);
        file.write_all(&bytes[..take])?;
        written += take;
        if written == payload_len {
            break;
        }
    }
    file.flush()?;
    Ok(())
}

/// Read a sieve written by [`save_cache`]. Every validation failure is a
/// [`Error::CorruptCache`]; a partial or padded file never half-loads.
pub fn load_cache(path: &Path) -> Result<BitSet> {
    let data = fs::read(path)?;
    if data.len() < CACHE_HEADER_LEN {
        return Err(Error::CorruptCache(format!(
            "{} is shorter than the header",
            path.display()
        )));
    }
    if data[..8] != CACHE_MAGIC {
        return Err(Error::CorruptCache(format!(
            "{} has wrong magic",
            path.display()
        )));
    }
    let limit = u64::from_le_bytes(data[8..16].try_into().expect("8 bytes"));
    let declared_len = u64::from_le_bytes(data[16..24].try_into().expect("8 bytes"));
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::CorruptCache(format!(
            "{} declares limit {limit} beyond the supported maximum",
            path.display()
        )));
    }
    let payload_len = payload_bytes(limit);
    if declared_len != payload_len as u64 {
        return Err(Error::CorruptCache(format!(
            "{} declares {declared_len} payload bytes where limit {limit} needs {payload_len}",
            path.display()
        )));
    }
    let payload = &data[CACHE_HEADER_LEN..];
    if payload.len() != payload_len {
        return Err(Error::CorruptCache(format!(
            "{} holds {} payload bytes where {payload_len} were declared",
            path.display(),
            payload.len()
        )));
    }
    let mut bits = BitSet::new(limit);
    for (index, chunk) in payload.chunks(8).enumerate() {
        let mut raw = [0u8; 8];
        raw[..chunk.len()].copy_from_slice(chunk);
        bits.words[index] = u64::from_le_bytes(raw);
    }
    let mut masked = bits.clone();
    masked.mask_tail();
    if masked.words != bits.words {
        return Err(Error::CorruptCache(format!(
            "{} has nonzero padding bits past the limit",
            path.display()
        )));
    }
    Ok(bits)
}

fn payload_bytes(limit: u64) -> usize {
    ((limit + 1).div_ceil(8)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Oracle: trial division, no sieving shared with the implementation.
    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Oracle: the plainest possible forward sieve.
    fn naive_prime_set(limit: u64) -> Vec<bool> {
        let n = limit as usize;
        let mut prime = vec![true; n + 1];
        prime[0] = false;
        if n >= 1 {
            prime[1] = false;
        }
        for p in 2..=n {
            if prime[p] {
                let mut at = p * p;
                while at <= n {
                    prime[at] = false;
                    at += p;
                }
            }
        }
        prime
    }

    #[test]
    fn smallest_sieves() {
        let s = build_sieve(10).unwrap();
        assert_eq!(s.ones().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(build_sieve(2).unwrap().ones().collect::<Vec<_>>(), vec![2]);
        assert_eq!(
            build_sieve(3).unwrap().ones().collect::<Vec<_>>(),
            vec![2, 3]
        );
    }

    #[test]
    fn prime_counts_at_known_checkpoints() {
        let s = build_sieve(1_000_000).unwrap();
        assert_eq!(prime_count(&s, 100).unwrap(), 25);
        assert_eq!(prime_count(&s, 1_000).unwrap(), 168);
        assert_eq!(prime_count(&s, 10_000).unwrap(), 1_229);
        assert_eq!(prime_count(&s, 1_000_000).unwrap(), 78_498);
    }

    #[test]
    fn agrees_with_trial_division() {
        let s = build_sieve(100_000).unwrap();
        for n in 0..=100_000 {
            assert_eq!(s.contains(n), is_prime_trial(n), "membership of {n}");
        }
    }

    #[test]
    fn agrees_with_naive_sieve_across_segment_boundaries() {
        // 2^21-bit segments put boundaries inside this range only for small
        // segment sizes, so exercise those explicitly.
        for segment_bits in [64, 128, 1 << 12, DEFAULT_SEGMENT_BITS] {
            let s = build_sieve_with(300_000, 1, segment_bits).unwrap();
            let naive = naive_prime_set(300_000);
            for n in 0..=300_000u64 {
                assert_eq!(
                    s.contains(n),
                    naive[n as usize],
                    "{n} at segment {segment_bits}"
                );
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_the_result() {
        let reference = build_sieve_with(1_000_000, 1, DEFAULT_SEGMENT_BITS).unwrap();
        for workers in 2..=5 {
            let s = build_sieve_with(1_000_000, workers, DEFAULT_SEGMENT_BITS).unwrap();
            assert_eq!(s, reference, "{workers} workers");
        }
        // Also with segments that do not divide the worker chunks evenly.
        let odd = build_sieve_with(1_000_000, 3, 8 * 64).unwrap();
        assert_eq!(odd, reference);
    }

    #[test]
    fn limits_are_validated() {
        assert!(build_sieve(1).is_err());
        assert!(build_sieve(MAX_SIEVE_LIMIT + 1).is_err());
        assert!(build_sieve_with(100, 0, DEFAULT_SEGMENT_BITS).is_err());
        let s = build_sieve(100).unwrap();
        assert!(prime_count(&s, 101).is_err());
    }

    #[test]
    fn progression_counts() {
        let s = build_sieve(10_000).unwrap();
        assert_eq!(primes_in_progression(&s, 1, 4, 100).unwrap(), 11);
        assert_eq!(
            primes_in_progression(&s, 0, 2, 100).unwrap(),
            1,
            "only p = 2"
        );
        assert_eq!(primes_in_progression(&s, 2, 4, 100).unwrap(), 1);
        assert!(
            primes_in_progression(&s, 4, 4, 100).is_err(),
            "unreduced residue"
        );
        assert!(primes_in_progression(&s, 0, 0, 100).is_err());
    }

    #[test]
    fn progression_counts_partition_the_primes() {
        let s = build_sieve(10_000).unwrap();
        for q in 1..=12u64 {
            for n in [0u64, 1, 2, 97, 5_000, 10_000] {
                let total: u64 = (0..q)
                    .map(|a| primes_in_progression(&s, a, q, n).unwrap())
                    .sum();
                assert_eq!(total, prime_count(&s, n).unwrap(), "q = {q}, n = {n}");
            }
        }
    }

    #[test]
    fn count_up_to_handles_word_boundaries() {
        let mut b = BitSet::new(130);
        for v in [0, 62, 63, 64, 65, 127, 128, 130] {
            b.insert(v);
        }
        assert_eq!(b.count_up_to(61), 1);
        assert_eq!(b.count_up_to(63), 3);
        assert_eq!(b.count_up_to(64), 4);
        assert_eq!(b.count_up_to(129), 7);
        assert_eq!(b.count_up_to(130), 8);
        assert_eq!(b.count(), 8);
    }

    #[test]
    fn intersection_respects_the_smaller_range() {
        let mut a = BitSet::new(200);
        let mut b = BitSet::new(100);
        for v in [3, 50, 100, 150] {
            a.insert(v);
        }
        for v in [3, 50, 99, 100] {
            b.insert(v);
        }
        let both = a.intersection(&b);
        assert_eq!(both.limit(), 100);
        assert_eq!(both.ones().collect::<Vec<_>>(), vec![3, 50, 100]);
    }

    #[test]
    fn cache_round_trips_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("primes.sieve");
        for limit in [2u64, 63, 64, 65, 1_000, 99_991] {
            let s = build_sieve(limit).unwrap();
            save_cache(&s, &path).unwrap();
            let loaded = load_cache(&path).unwrap();
            assert_eq!(loaded, s, "round trip at limit {limit}");
            // Writing the loaded set again must produce identical bytes.
            let first = fs::read(&path).unwrap();
            save_cache(&loaded, &path).unwrap();
            assert_eq!(fs::read(&path).unwrap(), first);
        }
    }

    #[test]
    fn cache_layout_is_pinned() {
        // Primes up to 10 are {2,3,5,7}: payload byte 0 is 0b10101100.
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("primes.sieve");
        save_cache(&build_sieve(10).unwrap(), &path).unwrap();
        let mut expected = Vec::new();
        expected.extend_from_slice(b"PGPRIME1");
        expected.extend_from_slice(&10u64.to_le_bytes());
        expected.extend_from_slice(&2u64.to_le_bytes());
        expected.extend_from_slice(&[0xAC, 0x00]);
        assert_eq!(fs::read(&path).unwrap(), expected);
    }

    #[test]
    fn corrupt_caches_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("primes.sieve");
        let sieve = build_sieve(1_000).unwrap();
        save_cache(&sieve, &path).unwrap();
        let good = fs::read(&path).unwrap();

        let expect_corrupt = |bytes: Vec<u8>, what: &str| {
            fs::write(&path, &bytes).unwrap();
            match load_cache(&path) {
                Err(Error::CorruptCache(_)) => {}
                other => panic!("{what}: expected corrupt-cache error, got {other:?}"),
            }
        };

        let mut wrong_magic = good.clone();
        wrong_magic[0] = b'X';
        expect_corrupt(wrong_magic, "wrong magic");

        expect_corrupt(good[..good.len() - 1].to_vec(), "truncated payload");
        expect_corrupt(good[..10].to_vec(), "truncated header");

        let mut extra = good.clone();
        extra.push(0);
        expect_corrupt(extra, "trailing bytes");

        let mut bad_len = good.clone();
        bad_len[16] ^= 1;
        expect_corrupt(bad_len, "payload length mismatch");

        let mut bad_limit = good.clone();
        bad_limit[8..16].copy_from_slice(&(MAX_SIEVE_LIMIT + 1).to_le_bytes());
        expect_corrupt(bad_limit, "absurd limit");

        // Nonzero padding past the limit: limit 1000 uses bit 0 of the last
        // payload byte at most; set its top bit.
        let mut padded = good.clone();
        let last = padded.len() - 1;
        padded[last] |= 0x80;
        expect_corrupt(padded, "nonzero padding");

        fs::write(&path, &good).unwrap();
        assert_eq!(
            load_cache(&path).unwrap(),
            sieve,
            "pristine bytes still load"
        );
    }

    proptest! {
        #[test]
        fn ones_matches_contains(values in proptest::collection::btree_set(0u64..=500, 0..60)) {
            let mut b = BitSet::new(500);
            for &v in &values {
                b.insert(v);
            }
            let listed: Vec<u64> = b.ones().collect();
            let expected: Vec<u64> = values.iter().copied().collect();
            prop_assert_eq!(listed, expected);
            prop_assert_eq!(b.count(), values.len() as u64);
        }

        #[test]
        fn sieve_membership_random_spots(limit in 2u64..=40_000, probe in 0u64..=40_000) {
            let s = build_sieve(limit).unwrap();
            if probe <= limit {
                prop_assert_eq!(s.contains(probe), is_prime_trial(probe));
            } else {
                prop_assert!(!s.contains(probe));
            }
        }
    }
}
