use std::collections::BTreeMap;

use super::DegreewiseModule;
use crate::algebra::{Algebra, AlgebraKind, Monomial};
use crate::error::{BggError, Result};
use crate::qlinalg::{Rat, RatMatrix};

/// A free module `sum_i A(-g_i)` with its monomial basis. The basis of degree
/// `d` lists `(generator i, monomial of degree d - g_i)`, generators in order
/// and monomials lexicographically within each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    algebra: Algebra,
    gens: Vec<i32>,
    window: (i32, i32),
}

impl FreeModule {
    /// `hi` is required for the polynomial ring and ignored otherwise.
    pub fn new(algebra: Algebra, gens: Vec<i32>, hi: Option<i32>) -> Result<FreeModule> {
        let lo = gens.iter().copied().min().unwrap_or(0);
        let window = match algebra.top_degree() {
            Some(top) => match gens.iter().max() {
                Some(&g) => (lo, g + top),
                None => (0, -1),
            },
            None => {
                let hi = hi.ok_or_else(|| {
                    BggError::Input("a free module over the polynomial ring needs a window top".into())
                })?;
                (lo, hi)
            }
        };
        Ok(FreeModule { algebra, gens, window })
    }

    /// Same generators, symmetric-side window `[lo, hi]`.
    pub fn with_window(algebra: Algebra, gens: Vec<i32>, lo: i32, hi: i32) -> FreeModule {
        FreeModule { algebra, gens, window: (lo, hi) }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn gens(&self) -> &[i32] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < self.window.0 || d > self.window.1 {
            return 0;
        }
        self.gens.iter().map(|&g| self.algebra.degree_dim(d - g)).sum()
    }

    pub fn basis(&self, d: i32) -> Vec<(usize, Monomial)> {
        if d < self.window.0 || d > self.window.1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (i, &g) in self.gens.iter().enumerate() {
            for m in self.algebra.monomials(d - g) {
                out.push((i, m));
            }
        }
        out
    }

    /// Position of `(gen, mono)` in the degree-`d` basis.
    pub fn index_of(&self, d: i32, gen: usize, mono: &[usize]) -> Option<usize> {
        if d < self.window.0 || d > self.window.1 {
            return None;
        }
        let mut off = 0;
        for (i, &g) in self.gens.iter().enumerate() {
            if i == gen {
                let ms = self.algebra.monomials(d - g);
                return ms.binary_search_by(|m| m.as_slice().cmp(mono)).ok().map(|p| off + p);
            }
            off += self.algebra.degree_dim(d - g);
        }
        None
    }

    /// Offset of generator `gen`'s block in degree `d`.
    pub fn block_offset(&self, d: i32, gen: usize) -> usize {
        self.gens[..gen]
            .iter()
            .map(|&g| self.algebra.degree_dim(d - g))
            .sum()
    }

    /// Matrix of `x_j` from degree `d` to `d + 1`.
    pub fn action(&self, j: usize, d: i32) -> RatMatrix {
        let src = self.basis(d);
        let mut m = RatMatrix::zeros(self.dim(d + 1), src.len());
        if m.rows() == 0 {
            return m;
        }
        for (c, (i, mono)) in src.iter().enumerate() {
            if let Some((sign, prod)) = self.algebra.mul_var(j, mono) {
                if let Some(r) = self.index_of(d + 1, *i, &prod) {
                    m.set(r, c, Rat::from_int(sign));
                }
            }
        }
        m
    }

    pub fn module(&self) -> DegreewiseModule {
        let (lo, hi) = self.window;
        let mut dims = BTreeMap::new();
        let mut action = BTreeMap::new();
        for d in lo..=hi {
            dims.insert(d, self.dim(d));
            if d < hi {
                for j in 0..self.algebra.nvars() {
                    let a = self.action(j, d);
                    if !a.is_zero() {
                        action.insert((j, d), a);
                    }
                }
            }
        }
        DegreewiseModule::from_parts(self.algebra, (lo, hi), &dims, action).expect("free module shapes")
    }
}

/// Direct sum of rank-one free modules on the given generator degrees. The
/// polynomial ring needs the window top `hi`.
pub fn construct_free(algebra: Algebra, generator_degrees: &[i32], hi: Option<i32>) -> Result<DegreewiseModule> {
    let f = FreeModule::new(algebra, generator_degrees.to_vec(), hi)?;
    if algebra.kind == AlgebraKind::Symmetric && generator_degrees.is_empty() {
        let hi = f.window.1;
        return DegreewiseModule::from_parts(algebra, (hi + 1, hi), &BTreeMap::new(), BTreeMap::new());
    }
    Ok(f.module())
}
