//! Checks built on character values and Jacobi sums.

use num_bigint::BigInt;
use num_complex::Complex64;

use super::{close, field_or_report, CheckId, CheckReport, Draft, Tally, COMPLEX_TOLERANCE};
use crate::arith::{binom_mod_p, ModRing, PrimePowerCtx, Rational};
use crate::chars::{
    gauss_sum_complex, greene_binomial_sum, jacobi_aggregates, jacobi_sum, lambda_r, Character,
};
use crate::cyclo::CycNum;
use crate::ff::FqCtx;
use crate::linalg::{circulant, quadratic_shift_vector};
use crate::padic::{gamma_p, jacobi_sum_valuation, GammaArg};

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn char_draft(id: CheckId, q: u64, k: u64) -> Draft {
    Draft::new(id).param("q", q).param("k", k)
}

/// Checks on `D_q^∓(ψ) = [ψ(x_j ∓ x_i)]`.
pub mod difference_matrix {
    use super::*;
    use crate::linalg::{build_dq_complex, build_dq_quadratic, det_complex, det_exact, Sign};
    use crate::verify::Tagged;

    /// Exact determinants for the quadratic character:
    /// `det D^- = -2 q^{(q-5)/2}` or `0`, and `det D^+ = (-1)^{n+1} (2 - φ(2)) q^{n-2}`.
    pub fn exact_quadratic_values(field: &FqCtx) -> (Rational, Rational) {
        let q = field.q() as i64;
        let n = field.n() as i64;
        let q_pow = |e: i64| {
            if e >= 0 {
                Rational::from_integer(BigInt::from(q).pow(e as u32))
            } else {
                Rational::new(1.into(), BigInt::from(q).pow((-e) as u32))
            }
        };
        let minus = if q % 4 == 1 {
            q_pow((q - 5) / 2) * Rational::from_integer((-2).into())
        } else {
            Rational::from_integer(0.into())
        };
        let phi = Character::quadratic(field);
        let phi2 = phi.value(&field.from_int(2)).as_integer().expect("quadratic values are integers");
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let plus = q_pow(n - 2) * Rational::from_integer(BigInt::from(sign) * (BigInt::from(2) - phi2));
        (minus, plus)
    }

    /// Fraction-free determinant of `D_q^∓(φ)` against its exact value.
    pub fn quadratic(q: u64) -> Vec<CheckReport> {
        let base = || Draft::new(CheckId::T5).param("q", q).param("character", "quadratic");
        let (field, _) = match field_or_report(q, base()) {
            Ok(x) => x,
            Err(r) => return vec![r],
        };
        let (minus, plus) = exact_quadratic_values(&field);
        [(Sign::Minus, minus), (Sign::Plus, plus)]
            .into_iter()
            .map(|(sign, expected)| {
                let draft = base().param("sign", sign.symbol().to_string()).param("engine", "exact");
                match det_exact(&build_dq_quadratic(&field, sign)) {
                    Ok(d) => draft.compare(
                        Tagged::rational(&Rational::from_integer(d)),
                        Tagged::rational(&expected),
                        "Bareiss on the {0,1,-1} matrix | Gauss-sum formula with G(phi)^2 = phi(-1) q",
                    ),
                    Err(e) => draft.error(&e),
                }
            })
            .collect()
    }

    /// `det D^-(ψ) = -((1 + ψ(-1))/q²) G^{q-1}` and
    /// `det D^+(ψ) = ((-1)^{(q+1)/2} ψ(-1) / q²)(2 - conj ψ(2)) G^{q-1}`.
    pub fn gauss_formula(psi: &Character<'_>, sign: Sign) -> Complex64 {
        let field = psi.field();
        let q = field.q() as f64;
        let g_pow = gauss_sum_complex(psi).powu((field.q() - 1) as u32);
        let eps = psi.at_minus_one() as f64;
        match sign {
            Sign::Minus => -g_pow * ((1.0 + eps) / (q * q)),
            Sign::Plus => {
                let s = if ((field.q() + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let psi2 = psi.value_complex(&field.from_int(2)).conj();
                g_pow * (Complex64::new(2.0, 0.0) - psi2) * (s * eps / (q * q))
            }
        }
    }

    /// Size of `det D_q^∓(ψ)` for nontrivial ψ: `q^{(q-5)/2}`.
    pub fn magnitude(q: u64) -> f64 {
        (q as f64).powf((q as f64 - 5.0) / 2.0)
    }

    /// Complex LU determinants of `D_q^∓(χ^k)` against the Gauss-sum formulas.
    pub fn complex(q: u64, k: u64) -> Vec<CheckReport> {
        let base = || char_draft(CheckId::T5, q, k);
        let (field, _) = match field_or_report(q, base()) {
            Ok(x) => x,
            Err(r) => return vec![r],
        };
        let psi = Character::new(&field, k as i64);
        [Sign::Minus, Sign::Plus]
            .into_iter()
            .map(|sign| {
                let draft = base().param("sign", sign.symbol().to_string()).param("engine", "complex");
                let m = match build_dq_complex(&field, &psi, sign) {
                    Ok(m) => m,
                    Err(e) => return draft.error(&e),
                };
                let lhs = match det_complex(&m) {
                    Ok(d) => d.value,
                    Err(e) => return draft.error(&e),
                };
                let rhs = gauss_formula(&psi, sign);
                draft.decide(
                    Tagged::complex(lhs),
                    Tagged::complex(rhs),
                    close(lhs, rhs, magnitude(q), COMPLEX_TOLERANCE),
                    "partial-pivot LU | Gauss-sum formula",
                    None,
                )
            })
            .collect()
    }
}

/// Product and reciprocal sums over `J_q(ψ, χ^r)`, the finite-field Sury sum
/// and the two auxiliary Jacobi-sum identities.
pub fn jacobi_aggregate_identities(q: u64, k: u64) -> CheckReport {
    let (field, draft) = match field_or_report(q, char_draft(CheckId::L51, q, k)) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let psi = Character::new(&field, k as i64);
    let m = field.order();
    let agg = match jacobi_aggregates(&psi) {
        Ok(a) => a,
        Err(e) => return draft.error(&e),
    };
    let mut t = Tally::default();

    let qf = q as f64;
    let expected_a = gauss_sum_complex(&psi).powu((q - 1) as u32) / qf;
    t.record(close(agg.a_q, expected_a, qf.powf((qf - 3.0) / 2.0), COMPLEX_TOLERANCE), || {
        format!("product of Jacobi sums {} vs G^(q-1)/q {}", agg.a_q, expected_a)
    });

    let factor = rat(1 - q as i64, q as i64);
    let s_expected = &factor * Rational::from_integer((1 + psi.at_minus_one()).into());
    t.record(agg.s_q.as_rational().as_ref() == Some(&s_expected), || {
        format!("sum of reciprocals is {:?}, expected {s_expected}", agg.s_q.as_rational())
    });

    let two = CycNum::from_int(m, 2);
    let conj_psi2 = psi.value(&field.from_int(2)).conj();
    let two_minus = &two - &conj_psi2;
    let t_expected = two_minus.scale(&factor);
    t.record(agg.t_q == t_expected, || "alternating sum of reciprocals differs".to_string());

    match greene_binomial_sum(&psi) {
        Ok(g) => {
            let expected = two_minus.scale(&Rational::from_integer((1 - q as i64).into()));
            t.record(g == expected, || "binomial reciprocal sum differs".to_string());
        }
        Err(e) => t.record(false, || format!("binomial reciprocal sum: {e}")),
    }

    let gen = Character::generator(&field);
    let even_sum = (0..=(q - 3) / 2).fold(CycNum::zero(m), |acc, r| {
        &acc + &jacobi_sum(&psi, &gen.pow(2 * r as i64)).expect("same field")
    });
    let even_expected = psi.value(&field.from_int(2)).scale(&rat(q as i64 - 1, 2));
    t.record(even_sum == even_expected, || "sum over even powers differs".to_string());

    let full_sum = (0..m).fold(CycNum::zero(m), |acc, r| {
        &acc + &jacobi_sum(&psi, &gen.pow(r as i64)).expect("same field")
    });
    t.record(full_sum.is_zero(), || "full row of Jacobi sums does not sum to zero".to_string());

    draft.tally(t, "exact Q(zeta_{q-1}) sums of Jacobi sums | complex Gauss sums for the product")
}

/// `M_q(ψ) ξ_r = α_r ξ_r` and `N_q(ψ) ξ_r = β_r ξ_r` for every `r`, exactly.
pub fn shift_circulant_eigen(q: u64, k: u64) -> CheckReport {
    let (field, draft) = match field_or_report(q, char_draft(CheckId::L52, q, k)) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let psi = Character::new(&field, k as i64);
    let m = field.order();
    let n = field.n();
    let mut t = Tally::default();
    // log(g^t - 1) = n + log(1 - g^t); log(g^t + 1) = log(1 - g^{t+n}).
    let log_minus = |s: u64| field.log_one_minus(s).map(|l| (l + n) % m);
    let log_plus = |s: u64| field.log_one_minus((s + n) % m);
    let gen = Character::generator(&field);
    for r in 0..m {
        let j = match jacobi_sum(&psi, &gen.pow(r as i64)) {
            Ok(j) => j,
            Err(e) => return draft.error(&e),
        };
        let alpha = j.scale(&Rational::from_integer(psi.at_minus_one().into()));
        let beta = if r % 2 == 0 { j.clone() } else { -&j };
        for (name, eig, log) in [("M", &alpha, &log_minus as &dyn Fn(u64) -> Option<u64>), ("N", &beta, &log_plus)] {
            // Row i times ζ^{-ri}; rows whose exponent counts repeat row 0's
            // share its value and skip the reduction.
            let mut first: Option<(Vec<i64>, bool)> = None;
            for i in 0..m {
                let mut counts = vec![0i64; m as usize];
                for col in 0..m {
                    if let Some(l) = log((col + m - i) % m) {
                        let e = (k * l + r * col + m * m - r * i % m) % m;
                        counts[e as usize] += 1;
                    }
                }
                let ok = match &first {
                    Some((c0, ok0)) if *c0 == counts => *ok0,
                    _ => CycNum::from_exponent_counts(m, &counts) == *eig,
                };
                if first.is_none() {
                    first = Some((counts, ok));
                }
                t.record(ok, || format!("{name} row {i} fails for r = {r}"));
            }
        }
    }
    draft.tally(t, "exact row-by-eigenvector products | eigenvalues from Jacobi sums")
}

/// The eigenvalues `λ_r` of the circulant of `a_i = φ(1 + g^{2i})`.
pub fn quadratic_eigenvalues(q: u64) -> CheckReport {
    let (field, draft) = match field_or_report(q, Draft::new(CheckId::L41).param("q", q)) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let (p, n, m) = (field.p(), field.n(), field.order());
    let mut t = Tally::default();
    let lambdas = match (0..n).map(|r| lambda_r(&field, r)).collect::<crate::Result<Vec<_>>>() {
        Ok(l) => l,
        Err(e) => return draft.error(&e),
    };
    t.record(lambdas[0] == CycNum::from_int(m, -1), || "lambda_0 is not -1".to_string());

    let a = quadratic_shift_vector(&field);
    for (r, lam) in lambdas.iter().enumerate() {
        let mut counts = vec![0i64; m as usize];
        for (kk, &ak) in a.iter().enumerate() {
            let e = ((m - (2 * r as u64 * kk as u64) % m) % m) as usize;
            counts[e] += ak;
        }
        let direct = CycNum::from_exponent_counts(m, &counts);
        t.record(&direct == lam, || format!("lambda_{r} differs from the direct character sum"));
    }

    // C_n(a) u_r = λ_r u_r with u_r = (ζ^{-2rj})_j, in the complex embedding.
    let c = circulant(&a);
    for (r, lam) in lambdas.iter().enumerate() {
        let u: Vec<Complex64> = (0..n)
            .map(|j| crate::chars::root_of_unity((m - (2 * r as u64 * j) % m) % m, m))
            .collect();
        let lam_c = lam.embed_complex();
        let residual = (0..n as usize)
            .map(|i| {
                let row: Complex64 = (0..n as usize).map(|j| u[j] * *c.get(i, j) as f64).sum();
                (row - lam_c * u[i]).norm()
            })
            .fold(0.0, f64::max);
        t.record(residual <= COMPLEX_TOLERANCE, || format!("eigenvector residual {residual:e} for r = {r}"));
    }

    let ctx = *field.ctx();
    let omega = Character::generator(&field);
    let quad = omega.pow(-(n as i64));
    for r in 1..n {
        match jacobi_sum(&quad, &omega.pow(-((n + r) as i64))).and_then(|j| j.reduce_mod_p(&field)) {
            Ok(v) => t.record(v.is_zero(), || format!("J(w^-n, w^-(n+{r})) does not reduce to 0")),
            Err(e) => t.record(false, || e.to_string()),
        }
        match jacobi_sum_valuation(&ctx, n, n + r) {
            Ok(v) => t.record(v > Rational::from_integer(0.into()), || format!("predicted valuation {v} at r = {r}")),
            Err(e) => t.record(false, || e.to_string()),
        }
    }

    if field.f() == 1 {
        let ring = ModRing::new(p).expect("small prime");
        let neg_half = ring.neg(ring.inv(2).expect("odd"));
        for r in 1..n {
            let expected = ring.mul(neg_half, binom_mod_p(n, r, p));
            match lambdas[r as usize].reduce_mod_p(&field) {
                Ok(v) => t.record(v.coeffs()[0] == expected, || {
                    format!("lambda_{r} reduces to {} instead of {expected}", v.coeffs()[0])
                }),
                Err(e) => t.record(false, || e.to_string()),
            }
            t.record(gamma_chain(&ctx, r) == Some(expected), || format!("Gamma_p chain fails at r = {r}"));
        }
    }
    draft.tally(t, "exact Q(zeta_{q-1}) eigenvalues | reduction zeta -> g | digit sums | Gamma_p mod p")
}

/// `((-1)^{r+1} / 2) Γ_p(p-n) Γ_p(p-r) / Γ_p(p-n-r) mod p`.
fn gamma_chain(ctx: &PrimePowerCtx, r: u64) -> Option<u64> {
    let (p, n) = (ctx.p(), ctx.n());
    let g = |x| gamma_p(GammaArg::Int(x), p, 1).ok().map(|v| v.value);
    let ring = ModRing::new(p).ok()?;
    let ratio = ring.div(ring.mul(g(p - n)?, g(p - r)?), g(p - n - r)?).ok()?;
    let half = ring.inv(2).ok()?;
    let signed = if r % 2 == 1 { half } else { ring.neg(half) };
    Some(ring.mul(signed, ratio))
}
