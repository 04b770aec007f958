//! Prime generation over ranges and arithmetic progressions by segmented
//! sieving. Segments are sieved independently, so sweeps can be
//! partitioned across workers and merged back in segment order without
//! changing the stream.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd, is_prime, isqrt};
use crate::error::{Error, Result};

/// Numbers spanned by one sieve segment; 2^18 odd flags fit in 16 KiB.
pub const SEGMENT_SPAN: u64 = 1 << 18;

/// Upper bound on the width of a sieved range.
pub const RANGE_BUDGET: u64 = 1 << 34;

/// An inclusive range [lo, hi] with an optional progression filter
/// p = residue (mod modulus); modulus 1 keeps every prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeRange {
    lo: u64,
    hi: u64,
    modulus: u64,
    residue: u64,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64, modulus: u64, residue: u64) -> Result<Self> {
        if lo < 2 {
            return Err(Error::InvalidInput(format!(
                "range must start at 2 or above, got {lo}"
            )));
        }
        if hi <= lo {
            return Err(Error::InvalidInput(format!(
                "range needs hi > lo, got [{lo}, {hi}]"
            )));
        }
        if hi - lo > RANGE_BUDGET {
            return Err(Error::InvalidInput(format!(
                "range width {} exceeds the 2^34 budget",
                hi - lo
            )));
        }
        if modulus == 0 || residue >= modulus {
            return Err(Error::InvalidInput(format!(
                "progression residue {residue} outside [0, {modulus})"
            )));
        }
        if modulus > 1 && gcd(residue, modulus) != 1 {
            return Err(Error::InvalidInput(format!(
                "residue {residue} shares a factor with modulus {modulus}"
            )));
        }
        Ok(PrimeRange {
            lo,
            hi,
            modulus,
            residue,
        })
    }

    /// Every prime in [lo, hi].
    pub fn all(lo: u64, hi: u64) -> Result<Self> {
        Self::new(lo, hi, 1, 0)
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }
}

/// Primes up to `limit` inclusive, by a plain sieve of Eratosthenes.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes in [lo, hi] inclusive, sieved with the supplied base primes.
/// `base` must hold every prime up to sqrt(hi), e.g. from `simple_sieve`.
/// Odd-only bitmap; pure, so disjoint segments can be sieved concurrently.
pub fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    if hi < lo {
        return out;
    }
    if lo <= 2 && 2 <= hi {
        out.push(2);
    }
    // Flags over odd numbers in [start, hi].
    let start = if lo <= 3 { 3 } else { lo | 1 };
    if start > hi {
        return out;
    }
    let len = ((hi - start) / 2 + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base.iter().skip(1) {
        if p * p > hi {
            break;
        }
        let mut first = p * p;
        if first < start {
            let mut k = start.div_ceil(p);
            if k % 2 == 0 {
                k += 1;
            }
            first = k * p;
        }
        let mut j = first;
        while j <= hi {
            composite[((j - start) / 2) as usize] = true;
            j += 2 * p;
        }
    }
    for (i, &c) in composite.iter().enumerate() {
        if !c {
            out.push(start + 2 * i as u64);
        }
    }
    out
}

/// Ascending stream of the primes selected by a `PrimeRange`.
pub struct PrimeStream {
    range: PrimeRange,
    base: Vec<u64>,
    segment: Vec<u64>,
    pos: usize,
    next_lo: u64,
    done: bool,
}

impl PrimeStream {
    fn refill(&mut self) {
        self.segment.clear();
        self.pos = 0;
        while self.segment.is_empty() && !self.done {
            let lo = self.next_lo;
            let hi = self.range.hi.min(lo.saturating_add(SEGMENT_SPAN - 1));
            let m = self.range.modulus;
            let r = self.range.residue;
            self.segment = sieve_segment(lo, hi, &self.base);
            if m > 1 {
                self.segment.retain(|&p| p % m == r);
            }
            if hi >= self.range.hi {
                self.done = true;
            } else {
                self.next_lo = hi + 1;
            }
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pos >= self.segment.len() {
            if self.done {
                return None;
            }
            self.refill();
        }
        let p = self.segment.get(self.pos).copied();
        self.pos += 1;
        p
    }
}

/// Ascending primes p in [lo, hi] with p = residue (mod modulus).
pub fn primes_in_range(range: &PrimeRange) -> PrimeStream {
    let base = simple_sieve(isqrt(range.hi).max(2));
    PrimeStream {
        range: *range,
        base,
        segment: Vec::new(),
        pos: 0,
        next_lo: range.lo,
        done: false,
    }
}

/// Least prime strictly greater than n, for 2 <= n < 2^62.
pub fn next_prime_above(n: u64) -> Result<u64> {
    if n < 2 || n >= 1 << 62 {
        return Err(Error::InvalidInput(format!(
            "next_prime_above needs 2 <= n < 2^62, got {n}"
        )));
    }
    if n == 2 {
        return Ok(3);
    }
    let mut c = n + 1 + (n % 2); // first odd above n
    loop {
        if is_prime(c) {
            return Ok(c);
        }
        c += 2;
    }
}
