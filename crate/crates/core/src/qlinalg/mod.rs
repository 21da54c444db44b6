//! Exact linear algebra over the rationals.
//!
//! Everything else in the crate reduces to rank, kernel and solve computations
//! in this module. There is no floating point anywhere.

mod echelon;
mod matrix;
mod rat;
mod subspace;

pub use echelon::{rank_of, to_dense, to_sparse, Echelon, Rref, SparseVec};
pub use matrix::RatMatrix;
pub use rat::Rat;
pub use subspace::{quotient_dim, Subspace};

/// Rank and kernel of `a`; the kernel basis is linearly independent and
/// `rank + dim kernel = cols(a)`.
pub fn rank_kernel(a: &RatMatrix) -> (usize, Subspace) {
    a.rank_kernel()
}

/// Some solution of `a x = b`, `None` when `b` is outside the column space.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> crate::Result<Option<Vec<Rat>>> {
    a.solve(b)
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
                let rows = (0..r)
                    .map(|i| xs[i * c..(i + 1) * c].iter().map(|&x| Rat::from_int(x)).collect())
                    .collect();
                RatMatrix::from_rows_shaped(r, c, rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(a in small_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn kernel_vectors_are_killed(a in small_matrix()) {
            let (r, k) = rank_kernel(&a);
            prop_assert_eq!(r + k.dim(), a.cols());
            for v in k.basis_dense() {
                prop_assert!(a.mul_vec(&v).iter().all(Rat::is_zero));
            }
            prop_assert_eq!(k.basis_matrix().rank(), k.dim());
        }

        #[test]
        fn solve_is_exact(a in small_matrix(), seed in prop::collection::vec(-3i64..=3, 6)) {
            let b: Vec<Rat> = (0..a.rows()).map(|i| Rat::from_int(seed[i])).collect();
            match solve(&a, &b).unwrap() {
                Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
                None => {
                    let bcol = RatMatrix::from_dense_cols(a.rows(), &[b.clone()]);
                    prop_assert!(a.hstack(&bcol).rank() > a.rank());
                }
            }
        }
    }
}
