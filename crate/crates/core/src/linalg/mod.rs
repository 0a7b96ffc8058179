//! Dense matrices, the cyclotomic matrix builders, determinant engines and
//! closed-form determinant evaluations.

mod builders;
mod det;
pub mod domain;
mod formulas;

pub use builders::*;
pub use det::*;
pub use formulas::*;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix over a homogeneous scalar domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.entries.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }

    /// `[a_{σ(i) σ(j)}]` for a permutation `σ` of the index set.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self
    where
        T: Clone,
    {
        assert!(self.is_square() && perm.len() == self.rows);
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], perm[j]).clone())
    }

    pub fn transpose(&self) -> Self
    where
        T: Clone,
    {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// Square matrix with entries `v[(j - i) mod n]`.
pub fn circulant<T: Clone>(v: &[T]) -> Matrix<T> {
    let n = v.len();
    Matrix::from_fn(n, n, |i, j| v[(j + n - i) % n].clone())
}

/// The circulant with its first row and column deleted.
pub fn almost_circulant<T: Clone>(v: &[T]) -> Matrix<T> {
    let n = v.len();
    Matrix::from_fn(n - 1, n - 1, |i, j| v[(j + n - i) % n].clone())
}

/// JSON form of a matrix: a domain tag plus row-major entries as strings,
/// so big integers survive without precision loss.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedMatrix {
    pub domain: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<u64>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl TaggedMatrix {
    pub fn new<T: ToString>(domain: &str, modulus: Option<u64>, m: &Matrix<T>) -> Self {
        TaggedMatrix {
            domain: domain.to_string(),
            modulus,
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}
