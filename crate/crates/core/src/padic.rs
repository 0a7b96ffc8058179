//! Base-`p` digit sums and Morita's `p`-adic Gamma function modulo `p^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, mul_mod, PrimePowerCtx, Rational, MOD_RING_CAP};
use crate::error::{out_of_range, Error, Result};

/// Base-`p` expansion of `r ∈ [0, q - 2]` with `f` digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitSum {
    pub r: u64,
    pub digits: Vec<u64>,
    pub s: u64,
}

/// `s(r)`, computed from the digits and, independently, as
/// `(p - 1) Σ_i {r p^i / (q - 1)}`. The two must agree.
pub fn digit_sum(r: u64, ctx: &PrimePowerCtx) -> Result<DigitSum> {
    let (p, q) = (ctx.p(), ctx.q());
    if r > q - 2 {
        return Err(out_of_range(r, "digit sums are taken over [0, q - 2]"));
    }
    let mut digits = Vec::with_capacity(ctx.f() as usize);
    let mut rest = r;
    for _ in 0..ctx.f() {
        digits.push(rest % p);
        rest /= p;
    }
    let s = digits.iter().sum();
    let via_fractions = digit_sum_from_fractions(r, ctx);
    assert_eq!(s, via_fractions, "digit sum of {r} in base {p}");
    Ok(DigitSum { r, digits, s })
}

/// `(p - 1) Σ_{i<f} {r p^i / (q - 1)}`, exact.
pub fn digit_sum_from_fractions(r: u64, ctx: &PrimePowerCtx) -> u64 {
    let (p, q) = (ctx.p() as u128, ctx.q() as u128);
    let mut numer = 0u128;
    let mut pi = 1u128;
    for _ in 0..ctx.f() {
        numer += (r as u128 * pi) % (q - 1);
        pi = pi * p % (q - 1);
    }
    let total = numer * (p - 1);
    debug_assert_eq!(total % (q - 1), 0);
    (total / (q - 1)) as u64
}

fn s(r: u64, ctx: &PrimePowerCtx) -> u64 {
    let p = ctx.p();
    let mut rest = r;
    let mut acc = 0;
    while rest > 0 {
        acc += rest % p;
        rest /= p;
    }
    acc
}

/// First `r ∈ [0, n - 1]` violating `s(n) + s(n + r) > s(r)`, if any.
pub fn digit_sum_inequality_counterexample(ctx: &PrimePowerCtx) -> Option<u64> {
    let n = ctx.n();
    let sn = s(n, ctx);
    (0..n).find(|&r| sn + s(n + r, ctx) <= s(r, ctx))
}

/// Whether `s(n) + s(n + r) > s(r)` for every `r ∈ [0, n - 1]`.
pub fn digit_sum_inequality_holds(ctx: &PrimePowerCtx) -> bool {
    digit_sum_inequality_counterexample(ctx).is_none()
}

/// Valuation, normalized by `ord(p) = 1`, of `J(ω^{-a}, ω^{-b})` predicted
/// by Gross–Koblitz: `(s(a) + s(b) - s(a + b)) / (p - 1)`, indices mod `q - 1`.
pub fn jacobi_sum_valuation(ctx: &PrimePowerCtx, a: u64, b: u64) -> Result<Rational> {
    let m = ctx.q() - 1;
    let (a, b) = (a % m, b % m);
    if a == 0 || b == 0 || (a + b) % m == 0 {
        return Err(out_of_range(
            format!("({a}, {b})"),
            "both characters and their product must be nontrivial",
        ));
    }
    let num = s(a, ctx) as i64 + s(b, ctx) as i64 - s((a + b) % m, ctx) as i64;
    Ok(Rational::new(num.into(), (ctx.p() - 1).into()))
}

/// `p`-adic valuation of a nonzero integer.
pub fn ord_p(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn ord_p_rational(x: &Rational, p: u64) -> Option<i64> {
    Some(ord_p(x.numer(), p)? as i64 - ord_p(x.denom(), p)? as i64)
}

/// A residue modulo `p^N` standing in for a `p`-adic integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicApprox {
    pub p: u64,
    pub precision: u32,
    pub value: u64,
}

/// Argument of [`gamma_p`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GammaArg {
    Int(u64),
    /// `num / den` with `den | p - 1`.
    Ratio { num: i64, den: u64 },
}

fn modulus_for(p: u64, precision: u32) -> Result<u64> {
    if p < 5 || !is_prime(p) {
        return Err(out_of_range(p, "p-adic Gamma needs a prime p >= 5"));
    }
    if precision == 0 {
        return Err(out_of_range(precision, "precision must be positive"));
    }
    p.checked_pow(precision)
        .filter(|&m| m <= MOD_RING_CAP)
        .ok_or(Error::ModulusTooLarge(u64::MAX))
}

/// `Γ_p(x) mod p^N`.
///
/// Integers use the defining product `(-1)^x Π_{k<x, p∤k} k` directly, at a
/// cost linear in `x`. A ratio is replaced by its representative in
/// `[1, p^N]`, which determines `Γ_p` modulo `p^N`.
pub fn gamma_p(x: GammaArg, p: u64, precision: u32) -> Result<PadicApprox> {
    let m = modulus_for(p, precision)?;
    let x = match x {
        GammaArg::Int(x) => x,
        GammaArg::Ratio { num, den } => {
            if den == 0 || (p - 1) % den != 0 {
                return Err(out_of_range(den, "denominator must divide p - 1"));
            }
            let inv = inv_mod(den % m, m).expect("den is prime to p");
            let rep = mul_mod(num.rem_euclid(m as i64) as u64, inv, m);
            if rep == 0 {
                m
            } else {
                rep
            }
        }
    };
    Ok(PadicApprox { p, precision, value: gamma_p_integer(x, p, m) })
}

fn gamma_p_integer(x: u64, p: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for k in 1..x {
        if k % p != 0 {
            acc = mul_mod(acc, k % m, m);
        }
    }
    if x % 2 == 1 && acc != 0 {
        m - acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_sums() {
        let c9 = PrimePowerCtx::new(3, 2).unwrap();
        assert_eq!(digit_sum(4, &c9).unwrap().s, 2);
        assert_eq!(digit_sum(4, &c9).unwrap().digits, vec![1, 1]);
        assert_eq!(digit_sum(0, &c9).unwrap().s, 0);
        assert!(digit_sum(8, &c9).is_err());
        let c = PrimePowerCtx::new(5, 3).unwrap();
        assert_eq!(digit_sum(c.n(), &c).unwrap().s, 3 * 2);
    }

    #[test]
    fn inequality_small_fields() {
        for q in [7, 9, 25, 27, 49] {
            assert!(digit_sum_inequality_holds(&PrimePowerCtx::from_q(q).unwrap()));
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(ord_p(&BigInt::from(-343), 7), Some(3));
        assert_eq!(ord_p(&BigInt::from(10), 7), Some(0));
        assert_eq!(ord_p(&BigInt::zero(), 7), None);
        assert_eq!(ord_p_rational(&Rational::new(49.into(), 5.into()), 7), Some(2));
        let c = PrimePowerCtx::new(7, 1).unwrap();
        assert_eq!(jacobi_sum_valuation(&c, 3, 1).unwrap(), Rational::from_integer(0.into()));
        assert_eq!(jacobi_sum_valuation(&c, 3, 4).unwrap(), Rational::from_integer(1.into()));
        assert!(jacobi_sum_valuation(&c, 3, 3).is_err());
    }

    #[test]
    fn gamma_small_values() {
        let g = |x, p, n| gamma_p(GammaArg::Int(x), p, n).unwrap().value;
        assert_eq!(g(1, 7, 3), 343 - 1);
        assert_eq!(g(2, 7, 3), 1);
        assert_eq!(g(5, 5, 2), 1);
        assert!(gamma_p(GammaArg::Int(2), 3, 2).is_err());
        // 1/2 ≡ (p^N + 1)/2, so both routes agree.
        let half = gamma_p(GammaArg::Ratio { num: 1, den: 2 }, 7, 2).unwrap();
        assert_eq!(half.value, g(25, 7, 2));
        assert!(gamma_p(GammaArg::Ratio { num: 1, den: 4 }, 7, 2).is_err());
    }
}
