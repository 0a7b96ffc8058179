//! Oracles shared by the property tests and the acceptance target. They use
//! exact integers and naive recurrences only.

#![allow(dead_code)]

use cyclodet::arith::{bernoulli, is_prime, ModRing};
use cyclodet::padic::{gamma_p, GammaArg};
use cyclodet::pell::legendre_two;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// `(P_i, Q_i)` as exact integers by the defining recurrences.
pub fn pell_exact(i: u64) -> (BigInt, BigInt) {
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::from(2), BigInt::from(2));
    for _ in 0..i {
        let p2 = &p1 * 2 + &p0;
        let q2 = &q1 * 2 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    (p0, q0)
}

/// `(P_i, Q_i) mod m` by stepping.
pub fn pell_stepped(i: u64, m: u64) -> (u64, u64) {
    let (mut p0, mut p1, mut q0, mut q1) = (0u64, 1 % m, 2 % m, 2 % m);
    for _ in 0..i {
        (p0, p1) = (p1, (2 * p1 + p0) % m);
        (q0, q1) = (q1, (2 * q1 + q0) % m);
    }
    (p0, q0)
}

pub fn residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

pub fn primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| is_prime(p))
}

/// Primes in `[7, max]` violating `4(2/p) P_p ≡ 2 + Q_p (mod p²)`.
pub fn q_against_p_failures(max: u64) -> Vec<u64> {
    primes(7, max)
        .filter(|&p| {
            let m = p * p;
            let (pp, qp) = pell_stepped(p, m);
            let four_p = 4 * pp % m;
            let lhs = if legendre_two(p) == 1 { four_p } else { (m - four_p) % m };
            lhs != (2 + qp) % m
        })
        .collect()
}

/// Primes in `[7, max]` violating
/// `Σ_{k≤(p-1)/2} 1/(k 2^k) ≡ -2^{(p+1)/2} (P_p - 2^{(p-1)/2}) / p (mod p)`.
pub fn reciprocal_power_sum_failures(max: u64) -> Vec<u64> {
    primes(7, max)
        .filter(|&p| {
            let ring = ModRing::new(p).unwrap();
            let lhs = (1..=(p - 1) / 2).fold(0, |acc, k| {
                ring.add(acc, ring.inv(ring.mul(k, ring.pow(2, k))).unwrap())
            });
            let diff = pell_exact(p).0 - (BigInt::one() << ((p - 1) / 2));
            let (quot, rem) = diff.div_rem(&BigInt::from(p));
            if !rem.is_zero() {
                return true;
            }
            lhs != ring.neg(ring.mul(ring.pow(2, (p + 1) / 2), residue(&quot, p)))
        })
        .collect()
}

pub fn power_sum(p: u64, m: u64) -> u64 {
    let ring = ModRing::new(m).unwrap();
    (1..p).fold(0, |acc, k| ring.add(acc, ring.mul(ring.pow(2, k), ring.inv(k).unwrap())))
}

pub fn fermat_quotient(p: u64) -> BigInt {
    let (q, r) = (BigInt::from(2) - (BigInt::one() << p)).div_rem(&BigInt::from(p));
    assert!(r.is_zero());
    q
}

/// Primes in `[7, max]` violating
/// `Σ_{k<p} 2^k / k ≡ (2 - 2^p)/p - (7/12) p² B_{p-3} (mod p³)`.
pub fn power_sum_cubed_failures(max: u64) -> Vec<u64> {
    primes(7, max)
        .filter(|&p| {
            let m = p * p * p;
            let b = bernoulli((p - 3) as usize) * BigInt::from(7 * p * p) / BigInt::from(12);
            let ring = ModRing::new(m).unwrap();
            let b_res = ring.div(residue(b.numer(), m), residue(b.denom(), m)).unwrap();
            power_sum(p, m) != ring.sub(residue(&fermat_quotient(p), m), b_res)
        })
        .collect()
}

/// The same congruence modulo `p²`, where the Bernoulli term drops out.
pub fn power_sum_squared_failures(max: u64) -> Vec<u64> {
    primes(7, max)
        .filter(|&p| power_sum(p, p * p) != residue(&fermat_quotient(p), p * p))
        .collect()
}

pub fn gamma(x: u64, p: u64, n: u32) -> u64 {
    gamma_p(GammaArg::Int(x), p, n).unwrap().value
}

/// `(p, n)` pairs with `n ≤ max` violating `Γ_p(n+1) = -n Γ_p(n)` for
/// `p ∤ n` and `Γ_p(n+1) = -Γ_p(n)` for `p | n`, modulo `p^3`.
pub fn functional_equation_failures(ps: &[u64], max: u64) -> Vec<(u64, u64)> {
    let mut bad = Vec::new();
    for &p in ps {
        let m = p.pow(3);
        let mut prev = gamma(1, p, 3);
        for n in 1..=max {
            let next = gamma(n + 1, p, 3);
            let want = if n % p == 0 { (m - prev) % m } else { (m - n % m * prev % m) % m };
            if next != want {
                bad.push((p, n));
            }
            prev = next;
        }
    }
    bad
}
