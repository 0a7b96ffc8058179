//! Pell numbers `P_i` and companion Pell numbers `Q_i` modulo `m`, and the
//! quotients `a_p`, `b_p` built from them.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, ModRing};
use crate::error::{out_of_range, Error, Result};

/// `(P_i mod m, Q_i mod m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellPair {
    pub index: u64,
    pub modulus: u64,
    pub p: u64,
    pub q: u64,
}

/// Computes `[[2,1],[1,0]]^i = [[P_{i+1}, P_i], [P_i, P_{i-1}]]` by repeated
/// squaring; `Q_i = P_{i+1} + P_{i-1}`.
pub fn pell_pair_mod(i: u64, ring: &ModRing) -> PellPair {
    // The power is symmetric, so (a, b, c) = (P_{k+1}, P_k, P_{k-1}) suffices.
    let mul = |x: (u64, u64, u64), y: (u64, u64, u64)| {
        (
            ring.add(ring.mul(x.0, y.0), ring.mul(x.1, y.1)),
            ring.add(ring.mul(x.0, y.1), ring.mul(x.1, y.2)),
            ring.add(ring.mul(x.1, y.1), ring.mul(x.2, y.2)),
        )
    };
    let one = ring.reduce(1);
    let mut acc = (one, 0, one);
    let mut base = (ring.reduce(2), one, 0);
    let mut e = i;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    PellPair {
        index: i,
        modulus: ring.modulus(),
        p: acc.1,
        q: ring.add(acc.0, acc.2),
    }
}

fn require_prime_at_least_7(p: u64) -> Result<()> {
    if p < 7 || !is_prime(p) {
        return Err(out_of_range(p, "needs a prime p >= 7"));
    }
    Ok(())
}

/// `(2/p) = ±1`.
pub fn legendre_two(p: u64) -> i64 {
    match p % 8 {
        1 | 7 => 1,
        _ => -1,
    }
}

fn p_squared_ring(p: u64) -> Result<ModRing> {
    let p2 = p.checked_mul(p).ok_or(Error::ModulusTooLarge(u64::MAX))?;
    ModRing::new(p2)
}

/// Divides a residue mod `p²` by `p`, failing if it is not a multiple.
fn exact_quotient(value: u64, p: u64, what: &str) -> Result<u64> {
    if value % p != 0 {
        return Err(Error::Divisibility(format!(
            "{what} is {value} mod {p}^2, not a multiple of {p}"
        )));
    }
    Ok(value / p)
}

/// `a_p = (2 - Q_p) / p mod p`.
pub fn a_p(p: u64) -> Result<u64> {
    require_prime_at_least_7(p)?;
    let ring = p_squared_ring(p)?;
    let pair = pell_pair_mod(p, &ring);
    exact_quotient(ring.sub(2, pair.q), p, "2 - Q_p")
}

/// `b_p = (2(2/p) - 2P_p - p) / p mod p`.
pub fn b_p(p: u64) -> Result<u64> {
    require_prime_at_least_7(p)?;
    let ring = p_squared_ring(p)?;
    let pair = pell_pair_mod(p, &ring);
    let num = ring.reduce(2 * legendre_two(p) as i128 - 2 * pair.p as i128 - p as i128);
    exact_quotient(num, p, "2(2/p) - 2P_p - p")
}

/// `Q_p ≡ 2 (mod p²)`.
pub fn predicate_qp(p: u64) -> Result<bool> {
    Ok(a_p(p)? == 0)
}

/// `2P_p ≡ 2(2/p) - p (mod p²)`.
pub fn predicate_pp(p: u64) -> Result<bool> {
    Ok(b_p(p)? == 0)
}
