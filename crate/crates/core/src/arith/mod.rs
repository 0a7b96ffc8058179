//! Integer, rational and modular primitives shared by the rest of the crate.

mod modring;

pub use modring::{inv_mod, mul_mod, pow_mod, ModRing, MOD_RING_CAP};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// An odd prime power `q = p^f` together with `n = (q - 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePowerCtx {
    p: u64,
    f: u32,
    q: u64,
    n: u64,
}

impl PrimePowerCtx {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if f == 0 {
            return Err(out_of_range(f, "exponent must be positive"));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q < 1 << 63)
            .ok_or_else(|| out_of_range(format!("{p}^{f}"), "prime power overflows 63 bits"))?;
        Ok(Self { p, f, q, n: (q - 1) / 2 })
    }

    /// Decompose `q` as an odd prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 3 || q % 2 == 0 {
            return Err(out_of_range(q, "not an odd prime power"));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut f = 0;
        while rest % p == 0 {
            rest /= p;
            f += 1;
        }
        if rest != 1 {
            return Err(out_of_range(q, "not an odd prime power"));
        }
        Self::new(p, f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn n(&self) -> u64 {
        self.n
    }
}

/// Every odd prime power in `[lo, hi]`, ascending.
pub fn odd_prime_powers(lo: u64, hi: u64) -> Vec<PrimePowerCtx> {
    (lo.max(3)..=hi)
        .filter_map(|q| PrimePowerCtx::from_q(q).ok())
        .collect()
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Distinct prime factors of `n`, ascending, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Deterministic primality test for `0 <= x < 2^63`.
///
/// Miller-Rabin over the first twelve prime bases, which has no
/// pseudoprimes below `3.3 * 10^24`.
pub fn is_prime(x: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if x < 2 {
        return false;
    }
    for &b in &BASES {
        if x % b == 0 {
            return x == b;
        }
    }
    let mut d = x - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut y = pow_mod(a, d, x);
        if y == 1 || y == x - 1 {
            continue;
        }
        for _ in 1..s {
            y = mul_mod(y, y, x);
            if y == x - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Legendre symbol `(a / p)` in `{-1, 0, 1}`.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    Ok(jacobi_symbol(a.rem_euclid(p as i64) as u64, p))
}

/// Jacobi symbol `(a / n)` for odd `n`, by quadratic reciprocity.
pub(crate) fn jacobi_symbol(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// `C(a, b) mod p` by Lucas' theorem on base-`p` digits.
pub fn binom_mod_p(mut a: u64, mut b: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while b > 0 {
        let (ad, bd) = (a % p, b % p);
        if bd > ad {
            return 0;
        }
        acc = mul_mod(acc, small_binom_mod(ad, bd, p), p);
        a /= p;
        b /= p;
    }
    acc
}

// C(n, k) mod p for n < p.
fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, inv_mod(den, p).expect("k! is a unit for k < p"), p)
}

/// Exact binomial coefficient.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `k! mod m`.
pub fn factorial_mod(k: u64, m: u64) -> u64 {
    (1..=k).fold(1 % m, |acc, i| mul_mod(acc, i % m, m))
}

/// `0! 1! ... k! mod m`.
pub fn superfactorial_mod(k: u64, m: u64) -> u64 {
    let mut fact = 1 % m;
    let mut acc = 1 % m;
    for i in 1..=k {
        fact = mul_mod(fact, i % m, m);
        acc = mul_mod(acc, fact, m);
    }
    acc
}

/// Bernoulli numbers `B_0, ..., B_k` with `B_1 = -1/2`.
///
/// Uses the recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_table(k: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(k + 1);
    table.push(Rational::one());
    for m in 1..=k {
        let mut acc = Rational::zero();
        let mut c = BigInt::one(); // C(m+1, 0)
        for (j, b) in table.iter().enumerate() {
            acc += b * Rational::from_integer(c.clone());
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        table.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table
}

/// The Bernoulli number `B_k` (desk scale, `k <= 200`).
pub fn bernoulli(k: usize) -> Rational {
    bernoulli_table(k).pop().expect("table is nonempty")
}

/// `k`-th elementary symmetric polynomial of `values` modulo `p`.
///
/// `sigma_0 = 1`; `k > values.len()` yields 0.
pub fn elementary_symmetric(values: &[u64], k: usize, p: u64) -> u64 {
    if k > values.len() {
        return 0;
    }
    // e[j] holds sigma_j of the prefix processed so far.
    let mut e = vec![0u64; k + 1];
    e[0] = 1 % p;
    for &v in values {
        let v = v % p;
        for j in (1..=k).rev() {
            e[j] = (e[j] + mul_mod(e[j - 1], v, p)) % p;
        }
    }
    e[k]
}

/// Class number `h(-p)` of `Q(sqrt(-p))` for a prime `p = 3 (mod 4)`, `p > 3`.
///
/// `h(-p) = (2 - (2/p))^{-1} * sum_{k=1}^{(p-1)/2} (k/p)`.
pub fn class_number_neg_p(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    if p % 4 != 3 || p == 3 {
        return Err(out_of_range(p, "class number formula needs p = 3 (mod 4), p > 3"));
    }
    let sum: i64 = (1..=(p - 1) / 2)
        .map(|k| jacobi_symbol(k, p) as i64)
        .sum();
    let denom = 2 - jacobi_symbol(2, p) as i64;
    let (h, rem) = sum.div_rem(&denom);
    if rem != 0 || h <= 0 {
        return Err(Error::Divisibility(format!(
            "character sum {sum} not a positive multiple of {denom} for p = {p}"
        )));
    }
    Ok(h as u64)
}
