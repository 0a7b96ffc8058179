//! Parallel scans of a prime range for the two Pell congruences.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::MOD_RING_CAP;
use crate::error::{out_of_range, Error, Result};
use crate::pell::{predicate_pp, predicate_qp};

/// Candidates per sieve block.
pub const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    /// `Q_p ≡ 2 (mod p²)`.
    Qp2,
    /// `2P_p ≡ 2(2/p) - p (mod p²)`.
    Pp2,
}

impl Predicate {
    pub fn test(self, p: u64) -> Result<bool> {
        match self {
            Predicate::Qp2 => predicate_qp(p),
            Predicate::Pp2 => predicate_pp(p),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Qp2 => "qp2",
            Predicate::Pp2 => "pp2",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qp2" => Ok(Predicate::Qp2),
            "pp2" => Ok(Predicate::Pp2),
            _ => Err(Error::Unsupported(format!("unknown predicate {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub predicate: Predicate,
    pub range: [u64; 2],
    /// Every prime in the range satisfying the predicate, ascending.
    pub hits: Vec<u64>,
    /// Number of primes tested.
    pub scanned: u64,
    /// Set when the lower end of the range is itself a hit, so that a
    /// comparison against a half-open reference range can account for it.
    pub boundary_hit: Option<u64>,
    pub elapsed_secs: f64,
}

impl SearchResult {
    /// Hits strictly above the lower end of the range.
    pub fn interior_hits(&self) -> &[u64] {
        match self.boundary_hit {
            Some(_) => &self.hits[1..],
            None => &self.hits,
        }
    }
}

/// Largest `max` whose square still fits the modular ring.
pub fn max_searchable() -> u64 {
    (MOD_RING_CAP as f64).sqrt() as u64
}

/// Scans primes in `[min, max]`, `min ≥ 7`, with `jobs` workers
/// (0 means the rayon default).
pub fn search(predicate: Predicate, min: u64, max: u64, jobs: usize) -> Result<SearchResult> {
    if min < 7 {
        return Err(out_of_range(min, "search starts at 7 or above"));
    }
    if max < min {
        return Err(out_of_range(max, "max must not be below min"));
    }
    if max > max_searchable() {
        return Err(Error::ModulusTooLarge(max.saturating_mul(max)));
    }
    let start = Instant::now();
    let base = small_primes(((max as f64).sqrt() as u64) + 1);
    let blocks: Vec<u64> = (min..=max).step_by(BLOCK as usize).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let per_block: Vec<Result<(u64, Vec<u64>)>> = pool.install(|| {
        blocks
            .par_iter()
            .map(|&lo| {
                let hi = (lo + BLOCK - 1).min(max);
                let primes = primes_in(lo, hi, &base);
                let mut hits = Vec::new();
                for &p in &primes {
                    if predicate.test(p)? {
                        hits.push(p);
                    }
                }
                Ok((primes.len() as u64, hits))
            })
            .collect()
    });
    let mut hits = Vec::new();
    let mut scanned = 0;
    for block in per_block {
        let (count, h) = block?;
        scanned += count;
        hits.extend(h);
    }
    let boundary_hit = hits.first().copied().filter(|&p| p == min);
    Ok(SearchResult {
        predicate,
        range: [min, max],
        hits,
        scanned,
        boundary_hit,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in `[lo, hi]`, sieving with `base` (all primes up to `√hi`).
fn primes_in(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p > hi {
            break;
        }
        let mut m = (lo.div_ceil(p) * p).max(p * p);
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    (0..len)
        .filter(|&i| !composite[i] && lo + i as u64 >= 2)
        .map(|i| lo + i as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    #[test]
    fn segmented_sieve_matches_primality() {
        let base = small_primes(200);
        let got = primes_in(7, 30_000, &base);
        let want: Vec<u64> = (7..=30_000).filter(|&x| is_prime(x)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn small_ranges() {
        let r = search(Predicate::Qp2, 7, 100, 2).unwrap();
        assert_eq!(r.hits, vec![13, 31]);
        assert_eq!(r.boundary_hit, None);
        assert_eq!(r.scanned, 22);
        let r = search(Predicate::Pp2, 7, 100, 3).unwrap();
        assert_eq!(r.hits, vec![7, 11]);
        assert_eq!(r.boundary_hit, Some(7));
        assert_eq!(r.interior_hits(), &[11]);
        assert!(search(Predicate::Qp2, 5, 100, 1).is_err());
        assert!(search(Predicate::Qp2, 7, 4_000_000, 1).is_err());
    }

    #[test]
    fn predicate_names_round_trip() {
        for p in [Predicate::Qp2, Predicate::Pp2] {
            assert_eq!(p.name().parse::<Predicate>().unwrap(), p);
        }
        assert!("pp3".parse::<Predicate>().is_err());
    }
}
