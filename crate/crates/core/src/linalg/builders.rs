use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{almost_circulant, circulant, Matrix};
use crate::arith::{jacobi_symbol, pow_mod};
use crate::chars::Character;
use crate::cyclo::CycNum;
use crate::error::{out_of_range, Error, Result};
use crate::ff::{FqCtx, FqElem};

/// Which combination `x_j ∓ x_i` a difference/sum matrix uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn combine(self, field: &FqCtx, xj: &FqElem, xi: &FqElem) -> FqElem {
        match self {
            Sign::Minus => field.sub(xj, xi),
            Sign::Plus => field.add(xj, xi),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

fn require_nontrivial(psi: &Character<'_>) -> Result<()> {
    if psi.is_trivial() {
        return Err(Error::Unsupported("trivial character".into()));
    }
    Ok(())
}

fn require_prime_field(field: &FqCtx) -> Result<()> {
    if field.f() != 1 {
        return Err(Error::Unsupported(format!(
            "defined over prime fields only, got q = {}",
            field.q()
        )));
    }
    Ok(())
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !crate::arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// `[(s_i + s_j)^m]` for `2 ≤ i, j ≤ n`, with `s_i = g^{2(i-1)}`.
pub fn build_bq(field: &FqCtx, m: u64) -> Result<Matrix<FqElem>> {
    if field.q() < 7 {
        return Err(out_of_range(field.q(), "needs q >= 7"));
    }
    if m > field.q() - 1 {
        return Err(out_of_range(m, "exponent must be at most q - 1"));
    }
    let s = field.nonzero_squares();
    let s = &s[1..];
    Ok(Matrix::from_fn(s.len(), s.len(), |i, j| {
        field.pow(&field.add(&s[i], &s[j]), m)
    }))
}

/// `[ψ(x_j ∓ x_i)]` for `2 ≤ i, j ≤ q - 1`, with `x_i = g^{i-1}`.
pub fn build_dq(field: &FqCtx, psi: &Character<'_>, sign: Sign) -> Result<Matrix<CycNum>> {
    require_nontrivial(psi)?;
    let x = dq_points(field);
    Ok(Matrix::from_fn(x.len(), x.len(), |i, j| {
        psi.value(&sign.combine(field, &x[j], &x[i]))
    }))
}

/// The same matrix embedded in `C`.
pub fn build_dq_complex(
    field: &FqCtx,
    psi: &Character<'_>,
    sign: Sign,
) -> Result<Matrix<Complex64>> {
    require_nontrivial(psi)?;
    let x = dq_points(field);
    Ok(Matrix::from_fn(x.len(), x.len(), |i, j| {
        psi.value_complex(&sign.combine(field, &x[j], &x[i]))
    }))
}

/// `D_q^∓(φ)` for the quadratic character, as a `{0, ±1}` integer matrix.
pub fn build_dq_quadratic(field: &FqCtx, sign: Sign) -> Matrix<BigInt> {
    let x = dq_points(field);
    Matrix::from_fn(x.len(), x.len(), |i, j| {
        BigInt::from(quadratic_value(field, &sign.combine(field, &x[j], &x[i])))
    })
}

fn dq_points(field: &FqCtx) -> Vec<FqElem> {
    (1..field.order()).map(|e| field.gen_pow(e)).collect()
}

fn quadratic_value(field: &FqCtx, x: &FqElem) -> i64 {
    match field.log(x) {
        None => 0,
        Some(l) if l % 2 == 0 => 1,
        Some(_) => -1,
    }
}

/// `[ψ(j ∓ i)]` for `1 ≤ i, j ≤ p - 1`.
pub fn build_carlitz(field: &FqCtx, psi: &Character<'_>, sign: Sign) -> Result<Matrix<CycNum>> {
    carlitz_with(field, psi, sign, |x| psi.value(x))
}

pub fn build_carlitz_complex(
    field: &FqCtx,
    psi: &Character<'_>,
    sign: Sign,
) -> Result<Matrix<Complex64>> {
    carlitz_with(field, psi, sign, |x| psi.value_complex(x))
}

fn carlitz_with<T>(
    field: &FqCtx,
    psi: &Character<'_>,
    sign: Sign,
    value: impl Fn(&FqElem) -> T,
) -> Result<Matrix<T>> {
    require_prime_field(field)?;
    require_nontrivial(psi)?;
    let p = field.p() as usize;
    Ok(Matrix::from_fn(p - 1, p - 1, |i, j| {
        let xi = field.from_int(i as i64 + 1);
        let xj = field.from_int(j as i64 + 1);
        value(&sign.combine(field, &xj, &xi))
    }))
}

/// Index set of a Chapman matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChapmanVariant {
    /// Indices `0..=(p-1)/2`.
    Zero,
    /// Indices `1..=(p-1)/2`.
    One,
}

/// `[((i + j) / p)]` over the variant's index range.
pub fn build_chapman(p: u64, variant: ChapmanVariant) -> Result<Matrix<BigInt>> {
    require_odd_prime(p)?;
    let start = match variant {
        ChapmanVariant::Zero => 0,
        ChapmanVariant::One => 1,
    };
    let dim = ((p - 1) / 2 + 1 - start) as usize;
    Ok(Matrix::from_fn(dim, dim, |i, j| {
        let s = i as u64 + j as u64 + 2 * start;
        BigInt::from(jacobi_symbol(s % p, p))
    }))
}

/// `[(i² + j²)^m mod p]` for `1 ≤ i, j ≤ (p-1)/2`.
pub fn build_sun(p: u64, m: u64) -> Result<Matrix<u64>> {
    require_odd_prime(p)?;
    let h = ((p - 1) / 2) as usize;
    Ok(Matrix::from_fn(h, h, |i, j| {
        let (i, j) = (i as u64 + 1, j as u64 + 1);
        pow_mod((i * i + j * j) % p, m, p)
    }))
}

/// `[((i² + j²) / p)]` for `1 ≤ i, j ≤ (p-1)/2`, as integers.
pub fn build_sun_legendre(p: u64) -> Result<Matrix<BigInt>> {
    require_odd_prime(p)?;
    let h = ((p - 1) / 2) as usize;
    Ok(Matrix::from_fn(h, h, |i, j| {
        let (i, j) = (i as u64 + 1, j as u64 + 1);
        BigInt::from(jacobi_symbol((i * i + j * j) % p, p))
    }))
}

/// `a_i = φ(1 + g^{2i})` for `0 ≤ i < n`. Its almost-circulant reduces to
/// `B_q(n)` mod `p`.
pub fn quadratic_shift_vector(field: &FqCtx) -> Vec<i64> {
    (0..field.n())
        .map(|i| {
            let x = field.add(&field.one(), &field.gen_pow(2 * i));
            quadratic_value(field, &x)
        })
        .collect()
}

/// The `n × n` circulant of [`quadratic_shift_vector`].
pub fn quadratic_shift_circulant(field: &FqCtx) -> Matrix<i64> {
    circulant(&quadratic_shift_vector(field))
}

/// The `(n-1) × (n-1)` almost-circulant of [`quadratic_shift_vector`].
pub fn quadratic_shift_almost_circulant(field: &FqCtx) -> Matrix<i64> {
    almost_circulant(&quadratic_shift_vector(field))
}

/// The circulants `[ψ(g^{j-i} ∓ 1)]` for `0 ≤ i, j ≤ q - 2`.
pub fn build_shift_circulant(
    field: &FqCtx,
    psi: &Character<'_>,
    sign: Sign,
) -> Result<Matrix<CycNum>> {
    require_nontrivial(psi)?;
    let one = field.one();
    let v: Vec<CycNum> = (0..field.order())
        .map(|k| psi.value(&sign.combine(field, &field.gen_pow(k), &one)))
        .collect();
    Ok(circulant(&v))
}
