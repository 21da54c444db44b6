use super::echelon::{to_dense, to_sparse, Echelon, SparseVec};
use super::{Rat, RatMatrix};
use crate::error::{BggError, Result};

/// A linear subspace of `Q^ambient` with a basis in pivoted form: for each basis
/// vector `i` there is a pivot coordinate `pivots[i]` where it is 1 and every
/// other basis vector is 0. Coordinates of a member are read off the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| vec![(i, Rat::one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vecs: &[SparseVec]) -> Subspace {
        let mut e = Echelon::new(ambient);
        for v in vecs {
            e.insert(v);
        }
        let rref = e.into_rref();
        Subspace {
            ambient,
            pivots: rref.pivots.clone(),
            basis: rref.rows,
        }
    }

    pub fn span_dense(ambient: usize, vecs: &[Vec<Rat>]) -> Subspace {
        let sv: Vec<SparseVec> = vecs.iter().map(|v| to_sparse(v)).collect();
        Subspace::span(ambient, &sv)
    }

    /// Column span of a matrix (alias of [`RatMatrix::column_space`]).
    pub fn from_columns(m: &RatMatrix) -> Subspace {
        m.column_space()
    }

    pub(crate) fn from_pivoted(ambient: usize, basis: Vec<SparseVec>, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(basis.len(), pivots.len());
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_dense(&self) -> Vec<Vec<Rat>> {
        self.basis.iter().map(|v| to_dense(v, self.ambient)).collect()
    }

    /// `ambient x dim` matrix whose columns are the basis.
    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_sparse_cols(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in this basis, assuming `v` lies in the subspace.
    pub fn coords(&self, v: &[Rat]) -> Vec<Rat> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn coords_checked(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let c = self.coords(v);
        (self.combine(&c) == v).then_some(c)
    }

    /// `sum_i c_i * basis_i` as a dense vector.
    pub fn combine(&self, c: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (i, x) in b {
                out[*i] += ci * x;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords_checked(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && other
                .basis_dense()
                .iter()
                .all(|v| self.contains(v))
    }

    /// Matrix expressing each column of `m` (which must lie in the subspace)
    /// in this basis.
    pub fn coords_matrix(&self, m: &RatMatrix) -> RatMatrix {
        self.pivot_rows_of(m)
    }

    fn pivot_rows_of(&self, m: &RatMatrix) -> RatMatrix {
        let cols: Vec<usize> = (0..m.cols()).collect();
        m.select(&self.pivots, &cols)
    }
}

/// `dim U - dim W` for `W` contained in `U`.
pub fn quotient_dim(u: &Subspace, w: &Subspace) -> Result<usize> {
    if u.ambient_dim() != w.ambient_dim() {
        return Err(BggError::Shape(format!(
            "ambient dimensions differ: {} vs {}",
            u.ambient_dim(),
            w.ambient_dim()
        )));
    }
    if !u.contains_subspace(w) {
        return Err(BggError::NotContained);
    }
    Ok(u.dim() - w.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn quotient_dim_examples() {
        let line = Subspace::span_dense(3, &[v(&[1, 2, 3])]);
        assert_eq!(quotient_dim(&line, &line).unwrap(), 0);
        assert_eq!(quotient_dim(&Subspace::full(3), &line).unwrap(), 2);
        let plane = Subspace::span_dense(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let diag = Subspace::span_dense(3, &[v(&[1, 1, 0])]);
        assert_eq!(quotient_dim(&plane, &diag).unwrap(), 1);
        assert!(matches!(
            quotient_dim(&diag, &plane),
            Err(BggError::NotContained)
        ));
        assert!(quotient_dim(&plane, &line).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = Subspace::span_dense(4, &[v(&[1, 2, 0, 1]), v(&[0, 1, 1, 1])]);
        let x = s.combine(&v(&[3, -2]));
        let c = s.coords_checked(&x).unwrap();
        assert_eq!(s.combine(&c), x);
        assert!(!s.contains(&v(&[0, 0, 0, 1])));
    }
}
