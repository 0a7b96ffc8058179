//! Closed-form determinants.

use num_complex::Complex64;

use super::domain::{Field, Ring};
use crate::arith::binom;
use crate::chars::root_of_unity;
use crate::error::{out_of_range, Error, Result};

fn vandermonde_pair<R: Ring>(ring: &R, x: &[R::Elem], y: &[R::Elem]) -> R::Elem {
    let mut acc = ring.one();
    for j in 0..x.len() {
        for i in 0..j {
            acc = ring.mul(&acc, &ring.sub(&x[j], &x[i]));
            acc = ring.mul(&acc, &ring.sub(&y[j], &y[i]));
        }
    }
    acc
}

/// `σ_0, …, σ_len` of the given values.
fn elementary_symmetric_all<R: Ring>(ring: &R, values: &[R::Elem]) -> Vec<R::Elem> {
    let mut e = vec![ring.zero(); values.len() + 1];
    e[0] = ring.one();
    for (done, v) in values.iter().enumerate() {
        for k in (1..=done + 1).rev() {
            let t = ring.mul(&e[k - 1], v);
            e[k] = ring.add(&e[k], &t);
        }
    }
    e
}

fn binom_product_except<R: Ring>(ring: &R, l: u64, skip: Option<u64>) -> R::Elem {
    let mut acc = ring.one();
    for r in (0..=l).filter(|&r| Some(r) != skip) {
        acc = ring.mul(&acc, &ring.from_bigint(&binom(l, r)));
    }
    acc
}

/// `det[h(x_i + y_j)]` for `h(t) = Σ_k h_k t^k` of degree below `m = |x|`:
///
/// `a_{m-1}^m · Π_r C(m-1, r) · Π_{i<j} (x_i - x_j)(y_j - y_i)`.
pub fn det_linear_kernel_formula<R: Ring>(
    ring: &R,
    x: &[R::Elem],
    y: &[R::Elem],
    h_coeffs: &[R::Elem],
) -> Result<R::Elem> {
    let m = x.len();
    if y.len() != m || h_coeffs.len() != m {
        return Err(Error::Dimension(format!(
            "expected |x| = |y| = |h| but got {}, {}, {}",
            m,
            y.len(),
            h_coeffs.len()
        )));
    }
    if m == 0 {
        return Ok(ring.one());
    }
    let lead = ring.pow(&h_coeffs[m - 1], m as u64);
    let binoms = binom_product_except(ring, m as u64 - 1, None);
    // Π (x_i - x_j)(y_j - y_i) differs from Π (x_j - x_i)(y_j - y_i) by (-1)^{C(m,2)}.
    let mut v = vandermonde_pair(ring, x, y);
    if (m * (m - 1) / 2) % 2 == 1 {
        v = ring.neg(&v);
    }
    Ok(ring.mul(&ring.mul(&lead, &binoms), &v))
}

/// `det[(x_i + y_j)^l]` for `l = |x|`:
///
/// `(-1)^{l(l-1)/2} Π_{i<j} (x_j - x_i)(y_j - y_i) Σ_k σ_k(x) σ_{l-k}(y) Π_{r≠k} C(l, r)`.
pub fn det_gsz<R: Ring>(ring: &R, x: &[R::Elem], y: &[R::Elem]) -> Result<R::Elem> {
    let l = x.len();
    if y.len() != l {
        return Err(Error::Dimension(format!("|x| = {} but |y| = {}", l, y.len())));
    }
    let sx = elementary_symmetric_all(ring, x);
    let sy = elementary_symmetric_all(ring, y);
    let mut sum = ring.zero();
    for k in 0..=l {
        let u = ring.mul(&ring.mul(&sx[k], &sy[l - k]), &binom_product_except(ring, l as u64, Some(k as u64)));
        sum = ring.add(&sum, &u);
    }
    let mut v = ring.mul(&vandermonde_pair(ring, x, y), &sum);
    if (l * l.saturating_sub(1) / 2) % 2 == 1 {
        v = ring.neg(&v);
    }
    Ok(v)
}

/// Circulant and almost-circulant determinants from the circulant's
/// eigenvalues: `det C_n = Π λ_k` and `det W_n = (1/n) Σ_l Π_{k≠l} λ_k`.
pub fn circulant_eigen_det<F: Field>(field: &F, eigs: &[F::Elem]) -> Result<(F::Elem, F::Elem)> {
    let n = eigs.len();
    if n < 2 {
        return Err(out_of_range(n, "circulant needs n >= 2"));
    }
    // Prefix/suffix products avoid dividing by a possibly zero eigenvalue.
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(field.one());
    for e in eigs {
        prefix.push(field.mul(prefix.last().unwrap(), e));
    }
    let mut suffix = field.one();
    let mut sum = field.zero();
    for l in (0..n).rev() {
        sum = field.add(&sum, &field.mul(&prefix[l], &suffix));
        suffix = field.mul(&suffix, &eigs[l]);
    }
    let n_inv = field
        .inv(&field.from_i64(n as i64))
        .ok_or_else(|| Error::NotInvertible(format!("{n} in the coefficient field")))?;
    Ok((prefix[n].clone(), field.mul(&sum, &n_inv)))
}

/// `λ_l = Σ_j a_j ρ^{lj}` with `ρ = e^{2πi/n}`.
pub fn circulant_eigenvalues_complex(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len() as u64;
    (0..n)
        .map(|l| {
            v.iter()
                .enumerate()
                .map(|(j, a)| a * root_of_unity(l * j as u64 % n, n))
                .sum()
        })
        .collect()
}
