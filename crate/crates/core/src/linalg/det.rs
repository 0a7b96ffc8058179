use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::domain::{Field, PrimeField};
use super::Matrix;
use crate::error::Result;
use crate::ff::{FqCtx, FqElem};

/// Determinant over any exact field by Gaussian elimination.
///
/// Pivots on the first nonzero entry of each column; a column without one
/// makes the matrix singular.
pub fn det_field<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    m.require_square()?;
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return Ok(field.zero());
        };
        if piv != col {
            a.swap(piv, col);
            det = field.neg(&det);
        }
        let pivot_inv = field.inv(&a[col][col]).expect("pivot is nonzero");
        det = field.mul(&det, &a[col][col]);
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            if field.is_zero(&row[col]) {
                continue;
            }
            let factor = field.mul(&row[col], &pivot_inv);
            for k in col..n {
                let t = field.mul(&factor, &pivot_row[k]);
                row[k] = field.sub(&row[k], &t);
            }
        }
    }
    Ok(det)
}

/// Determinant of a residue matrix over `F_p`.
pub fn det_mod_p(m: &Matrix<u64>, p: u64) -> Result<u64> {
    let field = PrimeField::new(p)?;
    det_field(&field, &m.map(|&x| x % p))
}

/// Determinant of a matrix over `F_q`.
pub fn det_fq(field: &FqCtx, m: &Matrix<FqElem>) -> Result<FqElem> {
    det_field(field, m)
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn det_exact(m: &Matrix<BigInt>) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // Exact by Sylvester's identity.
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Result of the floating-point engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDet {
    pub value: Complex64,
    /// `|det| < 1e-6 * ||M||_∞^dim`; never a claim of exact singularity.
    pub numerically_singular: bool,
}

/// Complex determinant by LU with partial pivoting.
pub fn det_complex(m: &Matrix<Complex64>) -> Result<ComplexDet> {
    m.require_square()?;
    let n = m.rows();
    let norm = (0..n)
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut a = m.to_rows();
    let mut det = Complex64::one();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .expect("nonempty range");
        if a[piv][col].norm() == 0.0 {
            det = Complex64::zero();
            break;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pivot = a[col][col];
        det *= pivot;
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let factor = row[col] / pivot;
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                row[k] -= factor * pivot_row[k];
            }
        }
    }
    let threshold = 1e-6 * norm.powi(n as i32);
    Ok(ComplexDet {
        value: det,
        numerically_singular: det.norm() < threshold,
    })
}
