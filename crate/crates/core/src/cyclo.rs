//! Exact arithmetic in `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, ..., ζ^{φ(m)-1}` of
//! `Q[x] / Φ_m(x)` as an integer numerator vector over one positive common
//! denominator, so equality is coordinate-wise. The complex embedding sends
//! `ζ_m` to `e^{2πi/m}`; [`CycNum::reduce_mod_p`] sends it to a power of the
//! field generator, which is the reduction modulo the prime above `p` that
//! the Teichmüller character is pinned to.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ff::{FqCtx, FqElem};

/// The ring data for one conductor: `m` and the monic `Φ_m`.
#[derive(Debug)]
pub struct CycloRing {
    m: u64,
    // Φ_m, constant term first, monic, length φ(m) + 1.
    phi: Vec<i64>,
    phi_big: Vec<BigInt>,
}

impl CycloRing {
    /// Shared ring for conductor `m`, built once per process.
    pub fn get(m: u64) -> Arc<CycloRing> {
        assert!(m >= 1, "conductor must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloRing>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = cache.lock().unwrap().get(&m) {
            return r.clone();
        }
        let phi = cyclotomic_poly(m);
        let ring = Arc::new(CycloRing {
            m,
            phi_big: phi.iter().map(|&c| BigInt::from(c)).collect(),
            phi,
        });
        cache.lock().unwrap().entry(m).or_insert(ring).clone()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `φ(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// The cyclotomic polynomial, constant term first.
    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    // Remainder of an integer polynomial modulo Φ_m.
    fn reduce_big(&self, mut poly: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for k in (d..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            for (t, &pc) in self.phi[..d].iter().enumerate() {
                if pc != 0 {
                    poly[k - d + t] -= &c * pc;
                }
            }
        }
        poly.resize(d, BigInt::zero());
        poly
    }

    // Same, on small integers; None on overflow.
    fn reduce_small(&self, poly: &[i64]) -> Option<Vec<i64>> {
        let d = self.degree();
        let mut r: Vec<i128> = poly.iter().map(|&c| c as i128).collect();
        for k in (d..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            r[k] = 0;
            for (t, &pc) in self.phi[..d].iter().enumerate() {
                let delta = c.checked_mul(pc as i128)?;
                r[k - d + t] = r[k - d + t].checked_sub(delta)?;
            }
        }
        r.resize(d, 0);
        r.into_iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

/// `Φ_m` by dividing `x^m - 1` by `Φ_d` for every proper divisor `d`.
fn cyclotomic_poly(m: u64) -> Vec<i64> {
    let m = m as usize;
    let mut poly = vec![0i128; m + 1];
    poly[0] = -1;
    poly[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            let div: Vec<i128> = cyclotomic_poly(d as u64).iter().map(|&c| c as i128).collect();
            poly = exact_monic_div(&poly, &div);
        }
    }
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient fits i64"))
        .collect()
}

fn exact_monic_div(num: &[i128], div: &[i128]) -> Vec<i128> {
    let dd = div.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k];
        quot[k - dd] = c;
        for (t, &dc) in div.iter().enumerate() {
            rem[k - dd + t] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Exact element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CycNum {
    ring: Arc<CycloRing>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.ring.m == other.ring.m && self.den == other.den && self.num == other.num
    }
}
impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(m={}, {})", self.ring.m, self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = Rational::new(c.clone(), self.den.clone());
            terms.push(match k {
                0 => format!("{coeff}"),
                1 => format!("({coeff})*z"),
                _ => format!("({coeff})*z^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CycNum {
    fn from_parts(ring: Arc<CycloRing>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycNum { ring, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            self.num.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.num.iter_mut().for_each(|c| *c /= &g);
            self.den /= &g;
        }
    }

    pub fn zero(m: u64) -> Self {
        let ring = CycloRing::get(m);
        let d = ring.degree();
        CycNum { ring, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u64, a: i64) -> Self {
        Self::from_rational(m, &Rational::from_integer(a.into()))
    }

    pub fn from_rational(m: u64, r: &Rational) -> Self {
        let mut out = Self::zero(m);
        out.num[0] = r.numer().clone();
        out.den = r.denom().clone();
        out.normalize();
        out
    }

    /// `ζ_m^e`.
    pub fn zeta_pow(m: u64, e: u64) -> Self {
        let mut counts = vec![0i64; m as usize];
        counts[(e % m) as usize] = 1;
        Self::from_exponent_counts(m, &counts)
    }

    /// `sum_e counts[e] ζ_m^e`; `counts` has length `m`.
    pub fn from_exponent_counts(m: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, m, "one count per exponent");
        let ring = CycloRing::get(m);
        let num = match ring.reduce_small(counts) {
            Some(small) => small.into_iter().map(BigInt::from).collect(),
            None => ring.reduce_big(counts.iter().map(|&c| BigInt::from(c)).collect()),
        };
        Self::from_parts(ring, num, BigInt::one())
    }

    /// Build from power-basis coordinates (length `φ(m)`).
    pub fn from_coeffs(m: u64, coeffs: &[Rational]) -> Result<Self> {
        let ring = CycloRing::get(m);
        if coeffs.len() != ring.degree() {
            return Err(Error::Dimension(format!(
                "Q(ζ_{m}) has dimension {}, got {} coordinates",
                ring.degree(),
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(ring, num, den))
    }

    pub fn m(&self) -> u64 {
        self.ring.m
    }

    pub fn degree(&self) -> usize {
        self.ring.degree()
    }

    /// Power-basis coordinates as exact rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// All coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as an integer, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    fn check(&self, other: &CycNum) -> Result<()> {
        if self.ring.m != other.ring.m {
            return Err(Error::ConductorMismatch(self.ring.m, other.ring.m));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check(other)?;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Ok(Self::from_parts(self.ring.clone(), num, &self.den * &other.den))
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check(other)?;
        let d = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.ring.reduce_big(prod);
        Ok(Self::from_parts(self.ring.clone(), num, &self.den * &other.den))
    }

    /// Multiplicative inverse. Uses `conj(a) / (a conj(a))` when that norm is
    /// rational, and otherwise the extended Euclidean algorithm against `Φ_m`.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::NotInvertible(format!("0 in Q(ζ_{})", self.m())));
        }
        let conj = self.conj();
        if let Some(norm) = (self * &conj).as_rational() {
            return Ok(conj.scale(&norm.recip()));
        }
        self.inv_euclid()
    }

    fn inv_euclid(&self) -> Result<CycNum> {
        let phi: Vec<Rational> = self.ring.phi_big.iter().cloned().map(Rational::from_integer).collect();
        let a: Vec<Rational> = self.num.iter().cloned().map(Rational::from_integer).collect();
        // Invariant: s1 * a ≡ r1 (mod Φ_m), s0 * a ≡ r0.
        let (mut r0, mut r1) = (phi, rpoly_trim(a));
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (quot, rem) = rpoly_divmod(&r0, &r1);
            let next_s = rpoly_sub(&s0, &rpoly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        // r0 is a nonzero constant because Φ_m is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let scale = Rational::from_integer(self.den.clone()) / &r0[0];
        let den = s0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut num: Vec<BigInt> = s0.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        num.resize(self.degree().max(num.len()), BigInt::zero());
        let num = self.ring.reduce_big(num);
        let out = Self::from_parts(self.ring.clone(), num, den);
        Ok(out.scale(&scale))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        self.try_mul(&other.inv()?)
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rational) -> CycNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.ring.clone(), num, &self.den * r.denom())
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut acc = CycNum::one(self.m());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        let m = self.m() as usize;
        let mut poly = vec![BigInt::zero(); m];
        for (k, c) in self.num.iter().enumerate() {
            poly[(m - k) % m] += c;
        }
        let num = self.ring.reduce_big(poly);
        Self::from_parts(self.ring.clone(), num, self.den.clone())
    }

    /// Value under `ζ_m ↦ e^{2πi/m}` in double precision.
    pub fn embed_complex(&self) -> Complex64 {
        let m = self.m() as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, theta)
            })
            .sum()
    }

    /// Image in `F_q` under `ζ_m ↦ g^{(q-1)/m}` and rationals reduced mod `p`.
    ///
    /// Requires `m | q - 1` and a denominator prime to `p`.
    pub fn reduce_mod_p(&self, field: &FqCtx) -> Result<FqElem> {
        let m = self.m();
        if field.order() % m != 0 {
            return Err(Error::ConductorMismatch(m, field.order()));
        }
        let p = field.p();
        let p_big = BigInt::from(p);
        let den = self.den.mod_floor(&p_big).to_u64().unwrap();
        let den_inv = crate::arith::inv_mod(den, p).ok_or_else(|| {
            Error::NotInvertible(format!("denominator {} mod {p}", self.den))
        })?;
        let step = field.order() / m;
        let mut acc = field.zero();
        for (k, c) in self.num.iter().enumerate() {
            let c = c.mod_floor(&p_big).to_u64().unwrap();
            if c == 0 {
                continue;
            }
            let term = field.mul(&field.from_int(c as i64), &field.gen_pow(step * k as u64));
            acc = field.add(&acc, &term);
        }
        Ok(field.mul(&acc, &field.from_int(den_inv as i64)))
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            ring: self.ring.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

// Operator forms panic on a conductor mismatch; use the `try_` methods to
// handle it.
impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.try_add(rhs).expect("conductor mismatch")
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.try_sub(rhs).expect("conductor mismatch")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.try_mul(rhs).expect("conductor mismatch")
    }
}

/// Serialized form: conductor plus power-basis coordinates as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycNumRepr {
    pub m: u64,
    pub coeffs: Vec<String>,
}

impl From<&CycNum> for CycNumRepr {
    fn from(c: &CycNum) -> Self {
        CycNumRepr {
            m: c.m(),
            coeffs: c.coeffs().iter().map(|r| r.to_string()).collect(),
        }
    }
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr::from(self).serialize(s)
    }
}

// Rational polynomials, constant term first, trimmed (zero = empty).

fn rpoly_trim(mut a: Vec<Rational>) -> Vec<Rational> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn rpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    rpoly_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn rpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rpoly_trim(out)
}

fn rpoly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (t, bc) in b.iter().enumerate() {
            rem[k - db + t] -= &c * bc;
        }
        quot[k - db] = c;
    }
    rem.truncate(db);
    (rpoly_trim(quot), rpoly_trim(rem))
}
