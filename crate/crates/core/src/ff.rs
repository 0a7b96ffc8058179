//! Explicit finite fields `F_{p^f}` in a polynomial basis.
//!
//! Construction is deterministic: the modulus is the lexicographically
//! smallest monic irreducible polynomial of degree `f` and the generator is
//! the lexicographically smallest primitive element, both comparing
//! coefficient vectors from the constant term upwards.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, mul_mod, prime_factors, PrimePowerCtx};
use crate::error::{Error, Result};

/// Largest field size for which a discrete-log table is built.
pub const FIELD_TABLE_BOUND: u64 = 1 << 20;

/// Element of `F_q`: exactly `f` coordinates in `[0, p)`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// An explicit field `F_q` with a fixed generator and discrete-log table.
#[derive(Debug)]
pub struct FqCtx {
    ctx: PrimePowerCtx,
    modulus: Vec<u64>,
    generator: FqElem,
    // log_table[index(x)] = log_g(x); entry 0 is unused.
    log_table: Vec<u32>,
    // exp_table[a] = index(g^a) for a in [0, q - 1).
    exp_table: Vec<u32>,
    trace_table: OnceLock<Vec<u32>>,
    // zech[a] = log_g(1 - g^a), u32::MAX when g^a = 1.
    zech_table: OnceLock<Vec<u32>>,
}

impl FqCtx {
    /// Build `F_{p^f}`; requires `p` odd prime and `p^f <= 2^20`.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        let q = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
        if p == 2 || !crate::arith::is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if f == 0 {
            return Err(crate::error::out_of_range(f, "exponent must be positive"));
        }
        if q > FIELD_TABLE_BOUND as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let ctx = PrimePowerCtx::new(p, f)?;
        let modulus = smallest_irreducible(p, f as usize);
        let mut field = FqCtx {
            ctx,
            modulus,
            generator: FqElem { coeffs: vec![0; f as usize] },
            log_table: Vec::new(),
            exp_table: Vec::new(),
            trace_table: OnceLock::new(),
            zech_table: OnceLock::new(),
        };
        field.generator = field.find_generator();
        field.fill_tables();
        Ok(field)
    }

    /// Build the field of size `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        let c = PrimePowerCtx::from_q(q)?;
        Self::new(c.p(), c.f())
    }

    pub fn ctx(&self) -> &PrimePowerCtx {
        &self.ctx
    }
    pub fn p(&self) -> u64 {
        self.ctx.p()
    }
    pub fn f(&self) -> u32 {
        self.ctx.f()
    }
    pub fn q(&self) -> u64 {
        self.ctx.q()
    }
    pub fn n(&self) -> u64 {
        self.ctx.n()
    }
    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u64 {
        self.ctx.q() - 1
    }

    /// Monic modulus polynomial, constant term first (length `f + 1`).
    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &FqElem {
        &self.generator
    }

    fn deg(&self) -> usize {
        self.ctx.f() as usize
    }

    pub fn zero(&self) -> FqElem {
        FqElem { coeffs: vec![0; self.deg()] }
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, a: i64) -> FqElem {
        let mut e = self.zero();
        e.coeffs[0] = a.rem_euclid(self.p() as i64) as u64;
        e
    }

    /// Element from a coordinate vector; entries are reduced mod `p`.
    pub fn elem(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() != self.deg() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, got {}",
                self.deg(),
                coeffs.len()
            )));
        }
        Ok(FqElem {
            coeffs: coeffs.iter().map(|c| c % self.p()).collect(),
        })
    }

    /// Integer encoding `sum c_i p^i` in `[0, q)`.
    pub fn index(&self, a: &FqElem) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p() + c)
    }

    pub fn from_index(&self, mut idx: u64) -> FqElem {
        let p = self.p();
        let coeffs = (0..self.deg())
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect();
        FqElem { coeffs }
    }

    /// Every element of the field in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q()).map(|i| self.from_index(i))
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p();
        FqElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % p).collect(),
        }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p();
        FqElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + p - y) % p).collect(),
        }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem {
            coeffs: poly_mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p()),
        }
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
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

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        let log = self.log(a).ok_or_else(|| Error::NotInvertible("0 in F_q".into()))?;
        Ok(self.gen_pow((self.order() - log) % self.order()))
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Discrete logarithm base the generator; `None` at zero.
    pub fn log(&self, a: &FqElem) -> Option<u64> {
        self.log_of_index(self.index(a))
    }

    pub(crate) fn log_of_index(&self, idx: u64) -> Option<u64> {
        if idx == 0 {
            None
        } else {
            Some(self.log_table[idx as usize] as u64)
        }
    }

    /// `g^e` for any exponent.
    pub fn gen_pow(&self, e: u64) -> FqElem {
        self.from_index(self.exp_table[(e % self.order()) as usize] as u64)
    }

    /// Absolute trace `Tr_{F_q/F_p}(a) = sum_{i<f} a^{p^i}` as a residue.
    pub fn trace(&self, a: &FqElem) -> u64 {
        let mut acc = self.zero();
        let mut frob = a.clone();
        for _ in 0..self.deg() {
            acc = self.add(&acc, &frob);
            frob = self.pow(&frob, self.p());
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }

    /// Trace indexed by element index, computed once.
    pub(crate) fn trace_of_index(&self, idx: u64) -> u64 {
        let table = self.trace_table.get_or_init(|| {
            self.elements().map(|x| self.trace(&x) as u32).collect()
        });
        table[idx as usize] as u64
    }

    /// `log_g(1 - g^a)`, or `None` when `g^a = 1`.
    pub fn log_one_minus(&self, a: u64) -> Option<u64> {
        let table = self.zech_table.get_or_init(|| {
            (0..self.order())
                .map(|a| {
                    let x = self.gen_pow(a);
                    self.log(&self.sub(&self.one(), &x)).map_or(u32::MAX, |l| l as u32)
                })
                .collect()
        });
        match table[(a % self.order()) as usize] {
            u32::MAX => None,
            l => Some(l as u64),
        }
    }

    /// Is `a` a nonzero square, i.e. `a^n = 1`.
    pub fn is_square(&self, a: &FqElem) -> bool {
        self.log(a).is_some_and(|l| l % 2 == 0)
    }

    /// The nonzero squares in canonical order `s_i = g^{2(i-1)}`, `s_1 = 1`.
    pub fn nonzero_squares(&self) -> Vec<FqElem> {
        (0..self.n()).map(|i| self.gen_pow(2 * i)).collect()
    }

    fn find_generator(&self) -> FqElem {
        let order = self.order();
        let factors = prime_factors(order);
        lex_vectors(self.p(), self.deg())
            .map(|coeffs| FqElem { coeffs })
            .find(|g| {
                !g.is_zero()
                    && self.pow(g, order) == self.one()
                    && factors.iter().all(|l| self.pow(g, order / l) != self.one())
            })
            .expect("F_q^x is cyclic")
    }

    fn fill_tables(&mut self) {
        let order = self.order() as usize;
        let mut log = vec![u32::MAX; self.q() as usize];
        let mut exp = Vec::with_capacity(order);
        let mut cur = self.one();
        for a in 0..order {
            let idx = self.index(&cur) as usize;
            assert_eq!(log[idx], u32::MAX, "generator powers repeat");
            log[idx] = a as u32;
            exp.push(idx as u32);
            cur = self.mul(&cur, &self.generator);
        }
        assert_eq!(cur, self.one());
        self.log_table = log;
        self.exp_table = exp;
    }
}

// Coefficient vectors of length `len` over F_p, lexicographic with the
// constant term most significant.
fn lex_vectors(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(len as u32);
    (0..total).map(move |mut t| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = t % p;
            t /= p;
        }
        v
    })
}

fn smallest_irreducible(p: u64, f: usize) -> Vec<u64> {
    lex_vectors(p, f)
        .map(|mut v| {
            v.push(1);
            v
        })
        .find(|h| is_irreducible(h, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Rabin-style test: monic `h` of degree `f` is irreducible iff
/// `gcd(x^{p^i} - x, h) = 1` for every `1 <= i <= f / 2`.
pub(crate) fn is_irreducible(h: &[u64], p: u64) -> bool {
    let f = h.len() - 1;
    if f <= 1 {
        return f == 1;
    }
    let mut x = vec![0u64; f];
    x[1] = 1;
    let mut frob = x.clone();
    for _ in 1..=f / 2 {
        frob = poly_powmod(&frob, p, h, p);
        let diff = poly_trim(
            frob.iter().zip(&x).map(|(a, b)| (a + p - b) % p).collect(),
        );
        let g = poly_gcd(diff, h.to_vec(), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

// Product of two residues modulo monic `h`, result of length deg(h).
fn poly_mulmod(a: &[u64], b: &[u64], h: &[u64], p: u64) -> Vec<u64> {
    let f = h.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    for k in (f..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (t, &hc) in h[..f].iter().enumerate() {
            let idx = k - f + t;
            prod[idx] = (prod[idx] + p - mul_mod(c, hc, p)) % p;
        }
    }
    prod.truncate(f);
    prod.resize(f, 0);
    prod
}

fn poly_powmod(a: &[u64], mut e: u64, h: &[u64], p: u64) -> Vec<u64> {
    let f = h.len() - 1;
    let mut acc = vec![0u64; f];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, h, p);
        }
        base = poly_mulmod(&base, &base, h, p);
        e >>= 1;
    }
    acc
}

// Monic gcd over F_p; the zero polynomial is the empty vector.
fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = poly_trim(a);
    b = poly_trim(b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p).expect("nonzero leading coefficient");
        a.iter_mut().for_each(|c| *c = mul_mod(*c, inv, p));
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).expect("nonzero leading coefficient");
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        let c = mul_mod(lead, inv, p);
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, bc, p)) % p;
        }
        r = poly_trim(r);
    }
    r
}
