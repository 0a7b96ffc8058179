use crate::error::{Error, Result};

/// Largest modulus accepted by [`ModRing`].
pub const MOD_RING_CAP: u64 = 10_000_000_000_000;

/// `a * b mod m` through a 128-bit intermediate.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The ring `Z / mZ` for `1 <= m <= 10^13`.
///
/// Residues are plain `u64` values in `[0, m)`. The cap guarantees that the
/// square of a prime up to `3 * 10^6` is a valid modulus while every product
/// stays well inside the 128-bit multiplication path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModRing {
    modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(crate::error::out_of_range(0, "modulus must be positive"));
        }
        if modulus > MOD_RING_CAP {
            return Err(Error::ModulusTooLarge(modulus));
        }
        Ok(Self { modulus })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as i128 - b as i128)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.modulus)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        inv_mod(a % self.modulus, self.modulus)
            .ok_or_else(|| Error::NotInvertible(format!("{a} mod {}", self.modulus)))
    }

    /// `a / b`, failing when `b` is not a unit.
    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }
}
