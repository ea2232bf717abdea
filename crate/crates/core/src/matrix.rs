//! Dense square-or-rectangular matrices over cyclotomic numbers.

use alloc::vec::Vec;
use core::fmt;

use crate::cyclotomic::CycloNum;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl Matrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycloNum) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| CycloNum::from_integer((i == j) as i64))
    }

    pub fn diagonal(d: &[CycloNum]) -> Self {
        let zero = CycloNum::from_integer(0);
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { zero.clone() })
    }

    /// Permutation matrix with entry `(i, j) = 1` iff `i = perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, |i, j| CycloNum::from_integer((perm[j] == i) as i64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<CycloNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, f: impl FnMut(&CycloNum) -> CycloNum) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl FnMut(&CycloNum) -> Result<CycloNum>) -> Result<Self> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        self.map(|x| x * c)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc: Option<CycloNum> = None;
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let p = a * b;
                acc = Some(match acc {
                    Some(s) => s + p,
                    None => p,
                });
            }
            acc.unwrap_or_else(|| self.get(i, 0).zero_like().lift_like(other.get(0, j)))
        }))
    }

    pub fn add(&self, other: &Matrix) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.cols,
            });
        }
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::NonInvertibleInput)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = &*x * &p;
            }
            for x in inv[col].iter_mut() {
                *x = &*x * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let d = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &d;
                    let d = &f * &inv[col][c];
                    inv[r][c] = &inv[r][c] - &d;
                }
            }
        }
        Matrix::from_rows(inv)
    }

    /// `λ` with `self = λ·other`, if one exists. `λ` is taken from the first
    /// nonzero entry of `other`.
    pub fn proportional_to(&self, other: &Matrix) -> Option<CycloNum> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let k = other.data.iter().position(|x| !x.is_zero())?;
        let lambda = self.data[k].div(&other.data[k]).ok()?;
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| *a == &lambda * b)
            .then_some(lambda)
    }

    /// Position of the first entry that differs, in row-major order.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
