use cyclodet::arith::{
    binom, binom_mod_p, class_number_neg_p, factorial_mod, is_prime, legendre, pow_mod,
};
use cyclodet::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

const PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 101, 997, 7919, 104_729, 1_000_003, 998_244_353, 2_147_483_647];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn legendre_is_euler(a in any::<i64>(), idx in 0..PRIMES.len()) {
        let p = PRIMES[idx];
        let r = a.rem_euclid(p as i64) as u64;
        let euler = pow_mod(r, (p - 1) / 2, p);
        let expect = match euler {
            0 => 0,
            1 => 1,
            e => {
                prop_assert_eq!(e, p - 1);
                -1
            }
        };
        prop_assert_eq!(legendre(a, p).unwrap(), expect);
    }
}

#[test]
fn lucas_binomials_match_big_integers() {
    for p in [3u64, 5, 7, 13] {
        for a in 0..=300u64 {
            for b in 0..=a {
                let exact = (binom(a, b) % BigInt::from(p)).to_u64().unwrap();
                assert_eq!(binom_mod_p(a, b, p), exact, "C({a}, {b}) mod {p}");
            }
        }
    }
}

#[test]
fn wilson() {
    for p in (2..=1000).filter(|&p| is_prime(p)) {
        assert_eq!(factorial_mod(p - 1, p), p - 1, "p = {p}");
    }
}

/// Reduced positive definite forms `ax² + bxy + cy²` of discriminant `-p`.
fn reduced_form_count(p: u64) -> u64 {
    let d = p as i64;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in -a + 1..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && (a == c)) {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

#[test]
fn class_numbers_match_reduced_forms() {
    for p in (7..=2000).filter(|&p| p % 4 == 3 && is_prime(p)) {
        assert_eq!(class_number_neg_p(p).unwrap(), reduced_form_count(p), "p = {p}");
    }
    assert_eq!(class_number_neg_p(23).unwrap(), 3);
    assert_eq!(class_number_neg_p(47).unwrap(), 5);
}

#[test]
fn mordell() {
    for p in (7..=500).filter(|&p| p % 4 == 3 && is_prime(p)) {
        let h = class_number_neg_p(p).unwrap();
        let want = if ((h + 1) / 2) % 2 == 0 { 1 } else { p - 1 };
        assert_eq!(factorial_mod((p - 1) / 2, p), want, "p = {p}");
    }
}

#[test]
fn sury() {
    for n in 1..=40u64 {
        let lhs: Rational = (0..n)
            .map(|r| Rational::new(BigInt::one(), binom(n - 1, r)))
            .fold(Rational::zero(), |a, b| a + b);
        let sum: Rational = (1..=n)
            .map(|k| Rational::new(BigInt::from(2).pow(k as u32), BigInt::from(k)))
            .fold(Rational::zero(), |a, b| a + b);
        let rhs = Rational::new(BigInt::from(n), BigInt::from(2).pow(n as u32)) * sum;
        assert_eq!(lhs, rhs, "n = {n}");
    }
}
