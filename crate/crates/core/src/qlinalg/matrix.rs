use std::fmt;

use super::echelon::{to_sparse, Echelon, SparseVec};
use super::{Rat, Subspace};
use crate::error::{BggError, Result};

/// A dense matrix of exact rationals, stored row-major.
///
/// Zero-row and zero-column matrices are ordinary values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<RatMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(BggError::Shape("ragged matrix rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix with an explicit shape; `rows` may be empty when `r == 0`.
    pub fn from_rows_shaped(r: usize, c: usize, rows: Vec<Vec<Rat>>) -> Result<RatMatrix> {
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(BggError::Shape(format!(
                "expected a {r}x{c} matrix, got {} rows",
                rows.len()
            )));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> RatMatrix {
        let r: Vec<Vec<Rat>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Rat::from_int(x)).collect())
            .collect();
        RatMatrix::from_rows(r).expect("rectangular literal")
    }

    /// Matrix whose columns are the given sparse vectors of length `nrows`.
    pub fn from_sparse_cols(nrows: usize, cols: &[SparseVec]) -> RatMatrix {
        let mut m = RatMatrix::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn from_dense_cols(nrows: usize, cols: &[Vec<Rat>]) -> RatMatrix {
        let mut m = RatMatrix::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| to_sparse(self.row(i))).collect()
    }

    pub fn sparse_cols(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if !x.is_zero() {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        cols
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(BggError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        let other_rows = other.sparse_rows();
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in &other_rows[k] {
                    out_row[*j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Panics on a shape mismatch; use [`RatMatrix::try_mul`] for checked use.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        self.try_mul(other).expect("matrix shape mismatch")
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_sparse_vec(&self, v: &[(usize, Rat)]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.rows];
        for (j, b) in v {
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, *j);
                if !a.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = RatMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[[a, b], [c, d]]` assembled from four blocks.
    pub fn block(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix, d: &RatMatrix) -> RatMatrix {
        a.hstack(b).vstack(&c.hstack(d))
    }

    pub fn block_diag(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
        RatMatrix::block(
            a,
            &RatMatrix::zeros(a.rows, b.cols),
            &RatMatrix::zeros(b.rows, a.cols),
            b,
        )
    }

    /// Submatrix of the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(&to_sparse(self.row(i)));
        }
        e
    }

    pub fn rank(&self) -> usize {
        // Eliminating along the shorter side is cheaper.
        if self.rows <= self.cols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }

    /// Rank together with a basis of the right null space.
    pub fn rank_kernel(&self) -> (usize, Subspace) {
        let rref = self.row_echelon().into_rref();
        let rank = rref.rank();
        let (ker, free) = rref.kernel();
        (rank, Subspace::from_pivoted(self.cols, ker, free))
    }

    pub fn kernel(&self) -> Subspace {
        self.rank_kernel().1
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, &self.sparse_cols())
    }

    /// Some `x` with `self * x = b`, or `None` if `b` is outside the column space.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(BggError::Shape(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut e = Echelon::new(n + 1);
        for i in 0..self.rows {
            let mut row = to_sparse(self.row(i));
            if !b[i].is_zero() {
                row.push((n, b[i].clone()));
            }
            e.insert(&row);
        }
        let rref = e.into_rref();
        if rref.pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); n];
        for row in &rref.rows {
            if let Some((c, v)) = row.last() {
                if *c == n {
                    x[row[0].0] = v.clone();
                }
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(RatMatrix::zeros(0, 0));
        }
        let aug = self.hstack(&RatMatrix::identity(n));
        let rref = aug.row_echelon().into_rref();
        if rref.rank() < n || rref.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for (i, row) in rref.rows.iter().enumerate() {
            for (c, v) in row {
                if *c >= n {
                    inv.set(i, c - n, v.clone());
                }
            }
        }
        Some(inv)
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_kernel_examples() {
        let (r, k) = RatMatrix::identity(2).rank_kernel();
        assert_eq!((r, k.dim()), (2, 0));

        let a = RatMatrix::from_i64(&[&[1, 1]]);
        let (r, k) = a.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k.dim(), 1);
        let v = k.basis_dense()[0].clone();
        assert_eq!(v[0], -v[1].clone());
        assert!(!v[0].is_zero());

        let ones = RatMatrix::from_i64(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        let (r, k) = ones.rank_kernel();
        assert_eq!((r, k.dim()), (1, 2));
        for v in k.basis_dense() {
            assert!(ones.mul_vec(&v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn empty_matrices() {
        let a = RatMatrix::zeros(0, 3);
        let (r, k) = a.rank_kernel();
        assert_eq!((r, k.dim()), (0, 3));
        let b = RatMatrix::zeros(3, 0);
        assert_eq!(b.rank(), 0);
        assert_eq!(b.kernel().dim(), 0);
        assert_eq!(a.mul(&RatMatrix::zeros(3, 2)).shape(), (0, 2));
        assert_eq!(b.mul(&RatMatrix::zeros(0, 4)), RatMatrix::zeros(3, 4));
    }

    #[test]
    fn solve_examples() {
        let b: Vec<Rat> = vec![Rat::new(3, 2), Rat::from_int(-7)];
        assert_eq!(RatMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));

        let a = RatMatrix::from_i64(&[&[1, 1]]);
        let x = a.solve(&[Rat::from_int(2)]).unwrap().expect("consistent");
        assert_eq!(a.mul_vec(&x), vec![Rat::from_int(2)]);

        let z = RatMatrix::zeros(1, 1);
        assert_eq!(z.solve(&[Rat::one()]).unwrap(), None);
        assert!(z.solve(&[Rat::one(), Rat::one()]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
