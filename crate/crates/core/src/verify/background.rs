//! Classical Legendre and character matrices, the product of squared
//! differences of squares, and digit sums.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use super::{close, field_or_report, CheckId, CheckReport, Draft, Tagged, Tally, COMPLEX_TOLERANCE};
use crate::arith::{legendre, ModRing, PrimePowerCtx};
use crate::chars::{gauss_sum_complex, Character};
use crate::linalg::{
    build_carlitz_complex, build_chapman, build_sun, build_sun_legendre, det_complex, det_exact,
    det_mod_p, ChapmanVariant, Sign,
};
use crate::padic::{digit_sum_from_fractions, digit_sum_inequality_counterexample};

fn minus_one_pow(e: u64) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The classical Gauss-sum evaluation of `det [ψ(j ∓ i)]_{1≤i,j≤p-1}`.
pub fn carlitz_formula(psi: &Character<'_>, sign: Sign) -> Complex64 {
    let p = psi.field().p();
    let m = psi.order();
    let g_pow = gauss_sum_complex(psi).powu((p - 1) as u32) / p as f64;
    match sign {
        Sign::Minus => g_pow * minus_one_pow((p - 1) / m),
        Sign::Plus if m % 2 == 1 => g_pow * minus_one_pow((p - 1) / (2 * m)),
        Sign::Plus => g_pow * minus_one_pow((p - 1) / m) * psi.delta().powu((p - 1) as u32),
    }
}

pub fn carlitz(p: u64, k: u64, sign: Sign) -> CheckReport {
    let id = match sign {
        Sign::Minus => CheckId::CarlitzMinus,
        Sign::Plus => CheckId::CarlitzPlus,
    };
    let (field, draft) = match field_or_report(p, Draft::new(id).param("p", p).param("k", k)) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let psi = Character::new(&field, k as i64);
    let lhs = match build_carlitz_complex(&field, &psi, sign).and_then(|m| det_complex(&m)) {
        Ok(d) => d.value,
        Err(e) => return draft.error(&e),
    };
    let rhs = carlitz_formula(&psi, sign);
    let scale = (p as f64).powf((p as f64 - 3.0) / 2.0);
    draft.decide(
        Tagged::complex(lhs),
        Tagged::complex(rhs),
        close(lhs, rhs, scale, COMPLEX_TOLERANCE),
        "partial-pivot LU | Gauss-sum formula",
        None,
    )
}

/// Exact determinants of the two Legendre Hankel matrices for `p ≡ 3 (mod 4)`,
/// against the quoted values `-2^{(p-1)/2}` and `0`.
pub fn chapman(p: u64) -> Vec<CheckReport> {
    let draft = |variant: u8| Draft::new(CheckId::Chapman3).param("p", p).param("variant", variant);
    if p % 4 == 1 {
        return vec![draft(0).skip("p = 1 (mod 4) values need the fundamental unit of Q(sqrt p)")];
    }
    let quoted = [-(BigInt::one() << ((p - 1) / 2)), BigInt::from(0)];
    [(0u8, ChapmanVariant::Zero), (1, ChapmanVariant::One)]
        .into_iter()
        .map(|(v, variant)| {
            let d = draft(v);
            match build_chapman(p, variant).and_then(|m| det_exact(&m)) {
                Ok(det) => d.compare(
                    Tagged::integer(&det),
                    Tagged::integer(&quoted[v as usize]),
                    "Bareiss on the Legendre matrix | quoted closed form",
                ),
                Err(e) => d.error(&e),
            }
        })
        .collect()
}

/// `-det [((i² + j²)/p)]` is a nonzero square mod `p`.
pub fn sun_square(p: u64) -> CheckReport {
    let draft = Draft::new(CheckId::SunSq).param("p", p);
    let det = match build_sun_legendre(p).and_then(|m| det_exact(&m)) {
        Ok(d) => d,
        Err(e) => return draft.error(&e),
    };
    let residue = (-&det % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
    let symbol = legendre(residue.to_i64().expect("reduced"), p).expect("odd prime");
    draft.compare(
        Tagged::symbol(symbol as i64),
        Tagged::symbol(1),
        "Bareiss on the Legendre matrix, Legendre symbol of -det | nonzero square",
    )
}

/// `det [(i² + j²)^{p-3}] ≡ (1/4) Π_{r=1}^{(p-3)/4} (r + 1/4)² (mod p)` for `p ≡ 3 (mod 4)`.
pub fn sun_shifted(p: u64) -> CheckReport {
    let draft = Draft::new(CheckId::Sun24).param("p", p);
    if p % 4 != 3 {
        return draft.skip("stated for p = 3 (mod 4) only");
    }
    let lhs = match build_sun(p, p - 3).and_then(|m| det_mod_p(&m, p)) {
        Ok(d) => d,
        Err(e) => return draft.error(&e),
    };
    let ring = ModRing::new(p).expect("small prime");
    let quarter = ring.inv(4).expect("odd prime");
    let rhs = (1..=(p - 3) / 4).fold(quarter, |acc, r| {
        let t = ring.add(r % p, quarter);
        ring.mul(acc, ring.mul(t, t))
    });
    draft.compare(Tagged::residue(p, lhs), Tagged::residue(p, rhs), "F_p elimination | product formula")
}

/// `(-1)^{(n-1)(n-2)/2} Π_{2≤i<j≤n} (s_j - s_i)² = (-1/2)^{n-2}` in `F_q`.
pub fn square_product(q: u64) -> CheckReport {
    let (field, draft) = match field_or_report(q, Draft::new(CheckId::SquareProduct).param("q", q)) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let s = field.nonzero_squares();
    let n = field.n() as usize;
    let mut lhs = field.one();
    for j in 1..n {
        for i in 1..j {
            let d = field.sub(&s[j], &s[i]);
            lhs = field.mul(&lhs, &field.mul(&d, &d));
        }
    }
    if ((n - 1) * (n - 2) / 2) % 2 == 1 {
        lhs = field.neg(&lhs);
    }
    let neg_half = field.neg(&field.inv(&field.from_int(2)).expect("odd characteristic"));
    let rhs = field.pow(&neg_half, n as u64 - 2);
    draft.compare(Tagged::fq(&field, &lhs), Tagged::fq(&field, &rhs), "F_q product | closed form")
}

/// The digit-sum fraction formula for every `r ∈ [0, q-2]` and the strict
/// inequality `s(n) + s(n+r) > s(r)` for every `r ∈ [0, n-1]`.
pub fn digit_sums(q: u64) -> CheckReport {
    let draft = Draft::new(CheckId::DigitSums).param("q", q);
    let ctx = match PrimePowerCtx::from_q(q) {
        Ok(c) => c,
        Err(e) => return draft.error(&e),
    };
    let mut t = Tally::default();
    let p = ctx.p();
    for r in 0..=q - 2 {
        let mut digits = 0;
        let mut rest = r;
        while rest > 0 {
            digits += rest % p;
            rest /= p;
        }
        let frac = digit_sum_from_fractions(r, &ctx);
        t.record(digits == frac, || format!("s({r}) = {digits} but the fraction formula gives {frac}"));
    }
    let bad = digit_sum_inequality_counterexample(&ctx);
    t.record(bad.is_none(), || format!("inequality fails at r = {}", bad.unwrap_or_default()));
    draft.tally(t, "base-p digits | fractional parts; exhaustive inequality")
}
