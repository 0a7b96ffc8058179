//! Scalar domains for matrix entries.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{inv_mod, mul_mod, Rational};
use crate::cyclo::CycNum;
use crate::ff::{FqCtx, FqElem};

/// A commutative ring with identity, described by a context value.
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// A ring in which every nonzero element has an inverse.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// `Z`, arbitrary precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
}

/// `Q`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// `F_p` on plain residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> crate::Result<Self> {
        if p == 2 || !crate::arith::is_prime(p) {
            return Err(crate::Error::NotOddPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            inv_mod(*a, self.p)
        }
    }
}

impl Ring for FqCtx {
    type Elem = FqElem;
    fn zero(&self) -> FqElem {
        FqCtx::zero(self)
    }
    fn one(&self) -> FqElem {
        FqCtx::one(self)
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqCtx::add(self, a, b)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqCtx::sub(self, a, b)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqCtx::mul(self, a, b)
    }
    fn from_bigint(&self, n: &BigInt) -> FqElem {
        let r = n.mod_floor(&BigInt::from(self.p())).to_i64().unwrap();
        self.from_int(r)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_zero()
    }
}

impl Field for FqCtx {
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        FqCtx::inv(self, a).ok()
    }
}

/// `Q(ζ_m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cyclotomic {
    pub m: u64,
}

impl Ring for Cyclotomic {
    type Elem = CycNum;
    fn zero(&self) -> CycNum {
        CycNum::zero(self.m)
    }
    fn one(&self) -> CycNum {
        CycNum::one(self.m)
    }
    fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a + b
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a - b
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> CycNum {
        CycNum::from_rational(self.m, &Rational::from_integer(n.clone()))
    }
    fn is_zero(&self, a: &CycNum) -> bool {
        a.is_zero()
    }
}

impl Field for Cyclotomic {
    fn inv(&self, a: &CycNum) -> Option<CycNum> {
        a.inv().ok()
    }
}

/// `C` in double precision. Equality is exact bitwise equality, so only
/// closed-form evaluations belong here; elimination uses the pivoting LU.
#[derive(Debug, Clone, Copy, Default)]
pub struct Complexes;

impl Ring for Complexes {
    type Elem = Complex64;
    fn zero(&self) -> Complex64 {
        Complex64::zero()
    }
    fn one(&self) -> Complex64 {
        Complex64::one()
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> Complex64 {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Field for Complexes {
    fn inv(&self, a: &Complex64) -> Option<Complex64> {
        (!a.is_zero()).then(|| a.inv())
    }
}
