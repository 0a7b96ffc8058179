mod common;

use common::{functional_equation_failures, gamma};
use cyclodet::arith::{binom_mod_p, is_prime, odd_prime_powers, PrimePowerCtx};
use cyclodet::chars::jacobi_sum;
use cyclodet::padic::{digit_sum, gamma_p, jacobi_sum_valuation, GammaArg};
use cyclodet::{Character, FqCtx, ModRing};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

#[test]
fn functional_equation() {
    assert_eq!(functional_equation_failures(&[5, 7, 13], 2000), vec![]);
    assert_eq!(gamma(1, 7, 3), 7u64.pow(3) - 1);
}

#[test]
fn known_values() {
    assert_eq!(gamma(2, 5, 2), 1);
    assert_eq!(gamma(5, 5, 2), 1);
    assert_eq!(gamma(0, 7, 2), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn continuity(pi in 0usize..4, n in 1u32..=3, x in 1u64..=1_000_000, k in any::<u64>()) {
        let p = [5u64, 7, 11, 13][pi];
        let m = p.pow(n);
        let y = x % m + (k % (1_000_000 / m)) * m;
        prop_assume!(y >= 1);
        prop_assert_eq!(y % m, x % m);
        prop_assert_eq!(gamma(x, p, n), gamma(y, p, n));
    }
}

#[test]
fn rational_arguments_use_integer_representatives() {
    for p in [5u64, 7, 11, 13, 101] {
        for k in 1..p - 1 {
            let ratio = gamma_p(GammaArg::Ratio { num: k as i64, den: p - 1 }, p, 1).unwrap().value;
            assert_eq!(ratio, gamma(p - k, p, 1), "p = {p}, k = {k}");
        }
    }
    assert!(gamma_p(GammaArg::Ratio { num: 1, den: 3 }, 7, 1).is_ok());
    assert!(gamma_p(GammaArg::Ratio { num: 1, den: 4 }, 7, 1).is_err());
}

#[test]
fn gamma_quotient_gives_half_binomials() {
    for p in (7..=200u64).filter(|&p| is_prime(p)) {
        let ring = ModRing::new(p).unwrap();
        let n = (p - 1) / 2;
        let half = ring.inv(2).unwrap();
        for r in 1..n {
            let quotient = ring.div(ring.mul(gamma(p - n, p, 1), gamma(p - r, p, 1)), gamma(p - n - r, p, 1)).unwrap();
            let sign = if r % 2 == 1 { 1 } else { p - 1 };
            let lhs = ring.mul(ring.mul(sign, half), quotient);
            let rhs = ring.neg(ring.mul(binom_mod_p(n, r, p), half));
            assert_eq!(lhs, rhs, "p = {p}, r = {r}");
        }
    }
}

#[test]
fn alternating_binomial_congruence() {
    for p in (7..=500u64).filter(|&p| is_prime(p)) {
        let n = (p - 1) / 2;
        for r in 1..n {
            let c = binom_mod_p(n + r, r, p);
            let lhs = if r % 2 == 0 { c } else { (p - c) % p };
            assert_eq!(lhs, binom_mod_p(n, r, p), "p = {p}, r = {r}");
        }
    }
}

#[test]
fn prime_field_valuations_vanish() {
    for p in (7..=500u64).filter(|&p| is_prime(p)) {
        let ctx = PrimePowerCtx::new(p, 1).unwrap();
        let n = ctx.n();
        for r in 1..n {
            let (a, b, c) = (digit_sum(n, &ctx).unwrap().s, digit_sum(r, &ctx).unwrap().s, digit_sum(n + r, &ctx).unwrap().s);
            assert_eq!(a + b, c, "p = {p}, r = {r}");
            assert!(jacobi_sum_valuation(&ctx, n, r).unwrap().is_zero());
        }
    }
}

#[test]
fn positive_valuation_iff_reduction_vanishes() {
    for ctx in odd_prime_powers(3, 49) {
        let field = FqCtx::new(ctx.p(), ctx.f()).unwrap();
        let omega = Character::generator(&field);
        let m = field.order();
        for a in 1..m {
            for b in (1..m).filter(|&b| (a + b) % m != 0) {
                let v = jacobi_sum_valuation(&ctx, a, b).unwrap();
                assert!(!v.is_negative());
                let j = jacobi_sum(&omega.pow(-(a as i64)), &omega.pow(-(b as i64))).unwrap();
                let vanishes = j.reduce_mod_p(&field).unwrap().is_zero();
                assert_eq!(vanishes, !v.is_zero(), "q = {}, a = {a}, b = {b}", ctx.q());
            }
        }
    }
}
