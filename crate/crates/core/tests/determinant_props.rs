use cyclodet::chars::lambda_r;
use cyclodet::linalg::domain::{Integers, PrimeField};
use cyclodet::linalg::{
    build_bq, build_dq_complex, build_dq_quadratic, det_complex, det_exact, det_field, det_fq,
    det_gsz, det_linear_kernel_formula, det_mod_p, quadratic_shift_vector, Sign,
};
use cyclodet::{Character, FqCtx, Matrix};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn power_matrix(x: &[BigInt], y: &[BigInt], h: &[BigInt]) -> Matrix<BigInt> {
    Matrix::from_fn(x.len(), y.len(), |i, j| {
        let t = &x[i] + &y[j];
        h.iter().rev().fold(BigInt::from(0), |acc, c| acc * &t + c)
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

const SMALL_QS: [u64; 9] = [7, 9, 11, 13, 17, 19, 25, 27, 49];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gsz_matches_bareiss(
        l in 1usize..=6,
        x in prop::collection::vec(-20i64..=20, 6),
        y in prop::collection::vec(-20i64..=20, 6),
    ) {
        let (x, y) = (big(&x[..l]), big(&y[..l]));
        let mut h = vec![BigInt::from(0); l + 1];
        h[l] = BigInt::from(1);
        let direct = det_exact(&power_matrix(&x, &y, &h)).unwrap();
        prop_assert_eq!(det_gsz(&Integers, &x, &y).unwrap(), direct);
    }

    #[test]
    fn linear_kernel_formula_matches_bareiss(
        m in 1usize..=7,
        x in prop::collection::vec(-20i64..=20, 7),
        y in prop::collection::vec(-20i64..=20, 7),
        h in prop::collection::vec(-9i64..=9, 7),
    ) {
        let (x, y, h) = (big(&x[..m]), big(&y[..m]), big(&h[..m]));
        let direct = det_exact(&power_matrix(&x, &y, &h)).unwrap();
        prop_assert_eq!(det_linear_kernel_formula(&Integers, &x, &y, &h).unwrap(), direct);
    }

    #[test]
    fn exact_and_modular_engines_agree(
        n in 1usize..=8,
        entries in prop::collection::vec(-1000i64..=1000, 64),
        pi in 0usize..5,
    ) {
        let p = [3u64, 7, 101, 7919, 1_000_003][pi];
        let m = Matrix::from_fn(n, n, |i, j| BigInt::from(entries[i * 8 + j]));
        let exact = det_exact(&m).unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
        let reduced = m.map(|x| x.mod_floor(&BigInt::from(p)).to_u64().unwrap());
        prop_assert_eq!(det_mod_p(&reduced, p).unwrap(), exact);
        prop_assert_eq!(det_field(&PrimeField::new(p).unwrap(), &reduced).unwrap(), exact);
    }

    #[test]
    fn bq_is_invariant_under_simultaneous_permutation(
        (qi, perm) in (0..SMALL_QS.len()).prop_flat_map(|qi| {
            let n = ((SMALL_QS[qi] - 1) / 2 - 1) as usize;
            (Just(qi), permutation(n))
        }),
        m in 0u64..30,
    ) {
        let f = FqCtx::from_q(SMALL_QS[qi]).unwrap();
        let b = build_bq(&f, m % f.q()).unwrap();
        prop_assert_eq!(det_fq(&f, &b.permute_symmetric(&perm)).unwrap(), det_fq(&f, &b).unwrap());
    }

    #[test]
    fn dq_is_invariant_under_simultaneous_permutation(
        (qi, perm) in (0..SMALL_QS.len()).prop_flat_map(|qi| {
            (Just(qi), permutation((SMALL_QS[qi] - 2) as usize))
        }),
        k in 1u64..48,
        plus in any::<bool>(),
    ) {
        let f = FqCtx::from_q(SMALL_QS[qi]).unwrap();
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let quad = build_dq_quadratic(&f, sign);
        prop_assert_eq!(det_exact(&quad.permute_symmetric(&perm)).unwrap(), det_exact(&quad).unwrap());
        let psi = Character::new(&f, (k % (f.order() - 1) + 1) as i64);
        let d = build_dq_complex(&f, &psi, sign).unwrap();
        let (a, b) = (det_complex(&d).unwrap().value, det_complex(&d.permute_symmetric(&perm)).unwrap().value);
        let scale = (f.q() as f64).powf((f.q() as f64 - 3.0) / 2.0);
        prop_assert!((a - b).norm() <= 1e-6 * scale, "{} vs {}", a, b);
    }
}

#[test]
fn bq_entries_follow_the_definition() {
    for q in SMALL_QS {
        let f = FqCtx::from_q(q).unwrap();
        let g2 = f.mul(f.generator(), f.generator());
        let s: Vec<_> = (1..f.n()).map(|i| f.pow(&g2, i)).collect();
        for m in [0, 1, f.n() - 2, f.n(), q - 1] {
            let b = build_bq(&f, m).unwrap();
            for (i, si) in s.iter().enumerate() {
                for (j, sj) in s.iter().enumerate() {
                    assert_eq!(b.get(i, j), &f.pow(&f.add(si, sj), m), "q = {q}, m = {m}");
                }
            }
        }
    }
}

#[test]
fn numeric_and_exact_quadratic_determinants_agree() {
    for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31] {
        let f = FqCtx::from_q(q).unwrap();
        let phi = Character::quadratic(&f);
        for sign in [Sign::Minus, Sign::Plus] {
            let exact = det_exact(&build_dq_quadratic(&f, sign)).unwrap().to_f64().unwrap();
            let numeric = det_complex(&build_dq_complex(&f, &phi, sign).unwrap()).unwrap().value;
            let scale = (q as f64).powf((q as f64 - 5.0) / 2.0).max(1.0);
            assert!((numeric - Complex64::new(exact, 0.0)).norm() <= 1e-6 * scale, "q = {q}");
        }
    }
}

#[test]
fn shift_circulant_eigenvectors() {
    for q in [7u64, 9, 11, 13] {
        let f = FqCtx::from_q(q).unwrap();
        let n = f.n() as usize;
        let v = quadratic_shift_vector(&f);
        for r in 0..n {
            let lambda = lambda_r(&f, r as u64).unwrap().embed_complex();
            let u: Vec<Complex64> = (0..n)
                .map(|j| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (r * j) as f64 / n as f64))
                .collect();
            for i in 0..n {
                let row: Complex64 = (0..n).map(|j| u[j] * v[(j + n - i) % n] as f64).sum();
                assert!((row - lambda * u[i]).norm() <= 1e-6, "q = {q}, r = {r}, i = {i}");
            }
        }
    }
}
