//! Multiplicative characters of `F_q`, Jacobi and Gauss sums.
//!
//! Every character is a power of the generator character `χ`, defined by
//! `χ(g^a) = ζ_{q-1}^a`. Reducing `ζ_{q-1}` to `g` turns `χ` into the identity
//! on `F_q^×`, so `χ` plays the part of the Teichmüller character and
//! `ω^{-s}` is the character with exponent `-s mod (q - 1)`.

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::Rational;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ff::{FqCtx, FqElem};

/// The character `x ↦ ζ_{q-1}^{k log_g x}`, extended by `ψ(0) = 0`.
#[derive(Debug, Clone, Copy)]
pub struct Character<'f> {
    field: &'f FqCtx,
    k: u64,
}

impl PartialEq for Character<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.k == other.k
    }
}

impl<'f> Character<'f> {
    /// `χ^k`, with `k` taken mod `q - 1`.
    pub fn new(field: &'f FqCtx, k: i64) -> Self {
        Character {
            field,
            k: k.rem_euclid(field.order() as i64) as u64,
        }
    }

    pub fn trivial(field: &'f FqCtx) -> Self {
        Self::new(field, 0)
    }

    /// The quadratic character `φ`, exponent `n = (q - 1) / 2`.
    pub fn quadratic(field: &'f FqCtx) -> Self {
        Self::new(field, field.n() as i64)
    }

    /// The generator `χ` of the character group.
    pub fn generator(field: &'f FqCtx) -> Self {
        Self::new(field, 1)
    }

    /// All nontrivial characters, by exponent.
    pub fn nontrivial(field: &'f FqCtx) -> impl Iterator<Item = Character<'f>> {
        (1..field.order()).map(move |k| Self::new(field, k as i64))
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn field(&self) -> &'f FqCtx {
        self.field
    }

    fn m(&self) -> u64 {
        self.field.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    /// Order of the character, `(q - 1) / gcd(k, q - 1)`.
    pub fn order(&self) -> u64 {
        self.m() / self.k.gcd(&self.m())
    }

    pub fn pow(&self, e: i64) -> Self {
        let m = self.m() as i128;
        let k = (self.k as i128 * e as i128).rem_euclid(m) as i64;
        Self::new(self.field, k)
    }

    pub fn mul(&self, other: &Character<'f>) -> Self {
        Self::new(self.field, (self.k + other.k) as i64)
    }

    /// Complex conjugate character `χ^{-k}`.
    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    /// Exponent `e` with `ψ(x) = ζ^e`, or `None` at zero.
    pub fn exponent_at(&self, x: &FqElem) -> Option<u64> {
        self.field.log(x).map(|l| self.exponent_at_log(l))
    }

    fn exponent_at_log(&self, log: u64) -> u64 {
        ((self.k as u128 * log as u128) % self.m() as u128) as u64
    }

    /// `ψ(x)` as an exact element of `Q(ζ_{q-1})`.
    pub fn value(&self, x: &FqElem) -> CycNum {
        match self.exponent_at(x) {
            Some(e) => CycNum::zeta_pow(self.m(), e),
            None => CycNum::zero(self.m()),
        }
    }

    pub fn value_complex(&self, x: &FqElem) -> Complex64 {
        match self.exponent_at(x) {
            Some(e) => root_of_unity(e, self.m()),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// `ψ(-1) = (-1)^k`.
    pub fn at_minus_one(&self) -> i64 {
        if self.k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `δ(ψ)`: 1 when `ψ(-1) = 1`, `-i` otherwise.
    pub fn delta(&self) -> Complex64 {
        if self.at_minus_one() == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, -1.0)
        }
    }
}

pub(crate) fn root_of_unity(e: u64, m: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (e % m) as f64 / m as f64)
}

fn same_field(a: &Character<'_>, b: &Character<'_>) -> Result<()> {
    if !std::ptr::eq(a.field, b.field) {
        return Err(Error::Unsupported("characters of different fields".into()));
    }
    Ok(())
}

/// `J_q(ψ, χ) = sum_{x} ψ(x) χ(1 - x)`, exactly.
pub fn jacobi_sum(psi: &Character<'_>, chi: &Character<'_>) -> Result<CycNum> {
    same_field(psi, chi)?;
    let field = psi.field;
    let m = field.order();
    let mut counts = vec![0i64; m as usize];
    // x = g^a ranges over F_q^×; x = 1 drops out since χ(0) = 0.
    for a in 0..m {
        if let Some(b) = field.log_one_minus(a) {
            let e = (psi.exponent_at_log(a) + chi.exponent_at_log(b)) % m;
            counts[e as usize] += 1;
        }
    }
    let j = CycNum::from_exponent_counts(m, &counts);
    debug_assert!(j.is_integral());
    Ok(j)
}

/// `J_q(ψ, χ^r)` for `r = 0, ..., q - 2`.
pub fn jacobi_row(psi: &Character<'_>) -> Vec<CycNum> {
    let gen = Character::generator(psi.field);
    (0..psi.m())
        .map(|r| jacobi_sum(psi, &gen.pow(r as i64)).expect("same field"))
        .collect()
}

/// `G_q(ψ) = sum_x ψ(x) ζ_p^{Tr x}` in double precision.
pub fn gauss_sum_complex(psi: &Character<'_>) -> Complex64 {
    let field = psi.field;
    let p = field.p();
    let m = field.order();
    (0..m)
        .map(|a| {
            let x = field.gen_pow(a);
            let tr = field.trace_of_index(field.index(&x));
            root_of_unity(psi.exponent_at_log(a), m) * root_of_unity(tr, p)
        })
        .sum()
}

/// The product and the two reciprocal sums over `J_q(ψ, χ^r)`.
#[derive(Debug, Clone)]
pub struct JacobiAggregates {
    /// `prod_r J_q(ψ, χ^r)` in the complex embedding.
    pub a_q: Complex64,
    /// `sum_r 1 / J_q(ψ, χ^r)`, exact.
    pub s_q: CycNum,
    /// `sum_r (-1)^r / J_q(ψ, χ^r)`, exact.
    pub t_q: CycNum,
}

fn require_nontrivial(psi: &Character<'_>) -> Result<()> {
    if psi.is_trivial() {
        return Err(Error::Unsupported("character must be nontrivial".into()));
    }
    Ok(())
}

pub fn jacobi_aggregates(psi: &Character<'_>) -> Result<JacobiAggregates> {
    require_nontrivial(psi)?;
    let m = psi.m();
    let row = jacobi_row(psi);
    let a_q = row.iter().map(CycNum::embed_complex).product();
    let mut s_q = CycNum::zero(m);
    let mut t_q = CycNum::zero(m);
    for (r, j) in row.iter().enumerate() {
        let inv = j.inv()?;
        s_q = &s_q + &inv;
        t_q = if r % 2 == 0 { &t_q + &inv } else { &t_q - &inv };
    }
    Ok(JacobiAggregates { a_q, s_q, t_q })
}

/// `sum_r binom(ψ; χ^r)^{-1}` where `binom(A; B) = (B(-1) / q) J_q(A, conj B)`.
pub fn greene_binomial_sum(psi: &Character<'_>) -> Result<CycNum> {
    require_nontrivial(psi)?;
    let field = psi.field;
    let m = psi.m();
    let gen = Character::generator(field);
    let mut acc = CycNum::zero(m);
    for r in 0..m {
        let b = gen.pow(r as i64);
        let scale = Rational::new(b.at_minus_one().into(), (field.q() as i64).into());
        let binom = jacobi_sum(psi, &b.conj())?.scale(&scale);
        acc = &acc + &binom.inv()?;
    }
    Ok(acc)
}

/// Eigenvalue `λ_r` of the circulant built from `ω^{-n}(1 + g^{2i})`:
///
/// `λ_r = ((-1)^r / 2) J(ω^{-n}, ω^{-r}) + ((-1)^{n+r} / 2) J(ω^{-n}, ω^{-(n+r)})`.
pub fn lambda_r(field: &FqCtx, r: u64) -> Result<CycNum> {
    let n = field.n();
    if field.q() < 7 {
        return Err(crate::error::out_of_range(field.q(), "needs q >= 7"));
    }
    if r >= n {
        return Err(crate::error::out_of_range(r, "r must lie in [0, n - 1]"));
    }
    let omega = Character::generator(field);
    let quad = omega.pow(-(n as i64));
    let first = jacobi_sum(&quad, &omega.pow(-(r as i64)))?;
    let second = jacobi_sum(&quad, &omega.pow(-((n + r) as i64)))?;
    let sign = |e: u64| if e % 2 == 0 { 1 } else { -1 };
    let c1 = Rational::new(sign(r).into(), 2.into());
    let c2 = Rational::new(sign(n + r).into(), 2.into());
    Ok(&first.scale(&c1) + &second.scale(&c2))
}

/// Eigenvalues of the circulants `[ψ(g^{j-i} - 1)]` and `[ψ(g^{j-i} + 1)]`.
#[derive(Debug, Clone)]
pub struct AlphaBeta {
    pub alpha: CycNum,
    pub beta: CycNum,
}

/// `α_r = ψ(-1) J_q(ψ, χ^r)` and `β_r = (-1)^r J_q(ψ, χ^r)`.
pub fn alpha_beta_r(psi: &Character<'_>, r: u64) -> Result<AlphaBeta> {
    require_nontrivial(psi)?;
    let j = jacobi_sum(psi, &Character::generator(psi.field).pow(r as i64))?;
    let alpha = j.scale(&Rational::from_integer(psi.at_minus_one().into()));
    let beta = if r % 2 == 0 { j } else { -&j };
    Ok(AlphaBeta { alpha, beta })
}
