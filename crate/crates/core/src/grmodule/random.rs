use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DegreewiseModule;
use crate::algebra::{Algebra, AlgebraKind};
use crate::qlinalg::{Rat, RatMatrix};

/// One linear condition on the unknown `X`: `X P = rhs` or `Q X = 0`.
enum Condition {
    Right(RatMatrix, RatMatrix),
    Left(RatMatrix),
}

/// A random module with the given dimension profile, deterministic in `seed`.
///
/// The action matrices are chosen variable by variable and, within a variable,
/// degree by degree. Each relation is linear in the newest unknown once the
/// earlier ones are fixed, so every matrix is a particular solution plus a
/// random kernel element with entries in `[-2, 2]`. A variable whose system
/// becomes inconsistent acts by zero.
pub fn random_module(algebra: Algebra, profile: &BTreeMap<i32, usize>, seed: u64) -> DegreewiseModule {
    let dims: BTreeMap<i32, usize> = profile.iter().filter(|(_, n)| **n > 0).map(|(d, n)| (*d, *n)).collect();
    let Some((&lo, &hi)) = dims.keys().next().zip(dims.keys().next_back()) else {
        return DegreewiseModule::zero(algebra);
    };
    let dim = |d: i32| dims.get(&d).copied().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = algebra.nvars();
    let zero = |d: i32| RatMatrix::zeros(dim(d + 1), dim(d));
    let mut act: Vec<BTreeMap<i32, RatMatrix>> = vec![BTreeMap::new(); nv];
    let get = |act: &Vec<BTreeMap<i32, RatMatrix>>, j: usize, d: i32| -> RatMatrix {
        act[j].get(&d).cloned().unwrap_or_else(|| zero(d))
    };

    for k in 0..nv {
        let mut consistent = true;
        for d in lo..hi {
            if dim(d) * dim(d + 1) == 0 {
                continue;
            }
            let mut conds = Vec::new();
            let prev_k = get(&act, k, d - 1);
            match algebra.kind {
                AlgebraKind::Exterior => {
                    conds.push(Condition::Right(prev_k.clone(), RatMatrix::zeros(dim(d + 1), dim(d - 1))));
                    for j in 0..k {
                        let rhs = get(&act, j, d).mul(&prev_k).scale(&Rat::from_int(-1));
                        conds.push(Condition::Right(get(&act, j, d - 1), rhs));
                    }
                }
                AlgebraKind::Symmetric => {
                    for j in 0..k {
                        let rhs = get(&act, j, d).mul(&prev_k);
                        conds.push(Condition::Right(get(&act, j, d - 1), rhs));
                    }
                }
                AlgebraKind::TwoStep => {
                    for j in 0..=k {
                        conds.push(Condition::Right(
                            get(&act, j, d - 1),
                            RatMatrix::zeros(dim(d + 1), dim(d - 1)),
                        ));
                    }
                    for j in 0..k {
                        conds.push(Condition::Left(get(&act, j, d + 1)));
                    }
                }
            }
            match sample(dim(d + 1), dim(d), &conds, &mut rng) {
                Some(x) => {
                    act[k].insert(d, x);
                }
                None => {
                    consistent = false;
                    break;
                }
            }
        }
        if !consistent {
            act[k].clear();
        }
    }

    let action = act
        .into_iter()
        .enumerate()
        .flat_map(|(j, m)| m.into_iter().map(move |(d, x)| ((j, d), x)))
        .collect();
    let m = DegreewiseModule::from_parts(algebra, (lo, hi), &dims, action).expect("sampler shapes");
    debug_assert!(super::validate(&m).is_ok());
    m
}

/// Random solution of the conditions on a `rows x cols` unknown.
fn sample(rows: usize, cols: usize, conds: &[Condition], rng: &mut ChaCha8Rng) -> Option<RatMatrix> {
    let nx = rows * cols;
    let mut eq_rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for c in conds {
        match c {
            Condition::Right(p, b) => {
                for r in 0..rows {
                    for c2 in 0..p.cols() {
                        let mut e = vec![Rat::zero(); nx];
                        for s in 0..cols {
                            e[r * cols + s] = p.get(s, c2).clone();
                        }
                        eq_rows.push(e);
                        rhs.push(b.get(r, c2).clone());
                    }
                }
            }
            Condition::Left(q) => {
                for r2 in 0..q.rows() {
                    for c2 in 0..cols {
                        let mut e = vec![Rat::zero(); nx];
                        for s in 0..rows {
                            e[s * cols + c2] = q.get(r2, s).clone();
                        }
                        eq_rows.push(e);
                        rhs.push(Rat::zero());
                    }
                }
            }
        }
    }
    let (particular, kernel) = if eq_rows.is_empty() {
        (vec![Rat::zero(); nx], crate::qlinalg::Subspace::full(nx))
    } else {
        let a = RatMatrix::from_rows_shaped(eq_rows.len(), nx, eq_rows).expect("rectangular");
        let x = a.solve(&rhs).ok()??;
        (x, a.kernel())
    };
    let coeffs: Vec<Rat> = (0..kernel.dim()).map(|_| Rat::from_int(rng.random_range(-2..=2))).collect();
    let free = kernel.combine(&coeffs);
    let mut out = RatMatrix::zeros(rows, cols);
    for i in 0..nx {
        out.set(i / cols, i % cols, &particular[i] + &free[i]);
    }
    Some(out)
}
