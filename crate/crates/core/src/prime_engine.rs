//! Exact `π(x)` and `pₙ` from a segmented sieve of Eratosthenes.
//!
//! Only odd numbers are stored: bit `i` of the table stands for `2i + 1`.
//! A cumulative count per 64-bit word makes `π(x)` a lookup plus one
//! popcount, and `pₙ` a binary search plus an in-word select.

use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`PrimeTable::build`].
pub const DEFAULT_CEILING: u64 = 1_000_000_000;

// Odd numbers per sieve segment (bits); 2^18 bits = 32 KiB.
const SEGMENT_BITS: usize = 1 << 18;

/// Immutable table of the primes up to `limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    prime_count: u64,
    /// Bit `i` set iff `2i + 1` is prime.
    odd_bits: Vec<u64>,
    /// Odd primes stored in words strictly before each word.
    word_counts: Vec<u32>,
}

impl PrimeTable {
    /// Sieve every prime `≤ limit`, with the default memory ceiling.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_ceiling(limit, DEFAULT_CEILING)
    }

    pub fn build_with_ceiling(limit: u64, ceiling: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Range(format!("sieve limit must be >= 2, got {limit}")));
        }
        if limit > ceiling {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds the ceiling {ceiling}"
            )));
        }

        // Odd numbers 1, 3, ..., up to limit.
        let n_bits = ((limit - 1) / 2 + 1) as usize;
        let n_words = n_bits.div_ceil(64);
        let mut odd_bits = vec![!0u64; n_words];
        // 1 is not prime; trailing bits past limit are cleared.
        odd_bits[0] &= !1;
        let tail = n_bits % 64;
        if tail != 0 {
            odd_bits[n_words - 1] &= (1u64 << tail) - 1;
        }

        let base = small_odd_primes(isqrt(limit));
        let mut next_multiple: Vec<usize> = base.iter().map(|&p| ((p * p - 1) / 2) as usize).collect();

        let mut seg_start = 0usize;
        while seg_start < n_bits {
            let seg_end = (seg_start + SEGMENT_BITS).min(n_bits);
            for (&p, next) in base.iter().zip(next_multiple.iter_mut()) {
                let mut i = *next;
                if i >= seg_end {
                    continue;
                }
                // Consecutive odd multiples of p are p apart in index space.
                let step = p as usize;
                while i < seg_end {
                    odd_bits[i >> 6] &= !(1u64 << (i & 63));
                    i += step;
                }
                *next = i;
            }
            seg_start = seg_end;
        }

        let mut word_counts = Vec::with_capacity(n_words);
        let mut running = 0u32;
        for word in &odd_bits {
            word_counts.push(running);
            running += word.count_ones();
        }

        Ok(PrimeTable {
            limit,
            prime_count: u64::from(running) + 1,
            odd_bits,
            word_counts,
        })
    }

    /// Largest `x` the table answers for.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `π(limit)`.
    pub fn prime_count(&self) -> u64 {
        self.prime_count
    }

    /// Largest prime `≤ limit`.
    pub fn largest_prime(&self) -> u64 {
        self.nth(self.prime_count)
    }

    /// `π(x)` for real `x`: the number of primes `≤ ⌊x⌋`.
    pub fn pi_of(&self, x: f64) -> Result<u64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::domain("pi_of", format!("x must be >= 0, got {x}")));
        }
        if x > self.limit as f64 {
            return Err(Error::Range(format!(
                "pi({x}) requested beyond table limit {}",
                self.limit
            )));
        }
        Ok(self.pi(x.floor() as u64))
    }

    /// `π(n)` for an integer `n ≤ limit`.
    ///
    /// # Panics
    /// If `n` exceeds the table limit.
    pub fn pi(&self, n: u64) -> u64 {
        assert!(n <= self.limit, "pi({n}) beyond table limit {}", self.limit);
        if n < 2 {
            return 0;
        }
        let odd = if n % 2 == 1 { n } else { n - 1 };
        let idx = ((odd - 1) / 2) as usize;
        let word = idx >> 6;
        let mask = if idx & 63 == 63 {
            !0u64
        } else {
            (1u64 << ((idx & 63) + 1)) - 1
        };
        1 + u64::from(self.word_counts[word]) + u64::from((self.odd_bits[word] & mask).count_ones())
    }

    /// The `n`'th prime, `p₁ = 2`.
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Range("primes are indexed from 1".into()));
        }
        if n > self.prime_count {
            return Err(Error::Range(format!(
                "p_{n} requested but the table holds {} primes",
                self.prime_count
            )));
        }
        Ok(self.nth(n))
    }

    fn nth(&self, n: u64) -> u64 {
        if n == 1 {
            return 2;
        }
        let k = (n - 1) as u32; // rank among odd primes, 1-based
        let word = self.word_counts.partition_point(|&c| c < k) - 1;
        let mut bits = self.odd_bits[word];
        for _ in 0..(k - self.word_counts[word] - 1) {
            bits &= bits - 1;
        }
        let idx = (word << 6) as u64 + u64::from(bits.trailing_zeros());
        2 * idx + 1
    }

    /// Iterate the primes in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(2).chain(self.odd_bits.iter().enumerate().flat_map(|(w, &word)| {
            BitIter(word).map(move |b| 2 * ((w as u64) << 6 | b) + 1)
        }))
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(u64::from(b))
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Odd primes `≤ bound` by a plain sieve.
fn small_odd_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let bound = bound as usize;
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for p in (3..=bound).step_by(2) {
        if composite[p] {
            continue;
        }
        out.push(p as u64);
        for m in (p * p..=bound).step_by(2 * p) {
            composite[m] = true;
        }
    }
    out
}
