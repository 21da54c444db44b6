use std::collections::BTreeMap;

use super::hom::{common_window, normalize_row, Blocks};
use super::DegreewiseModule;
use crate::error::{BggError, Result};
use crate::qlinalg::{Echelon, Rat, RatMatrix, SparseVec};

/// A cocycle `phi_j[d]: M_d -> N_{d+1}` describing the module `N (+) M` with
/// action `[[A^N_j, phi_j], [0, A^M_j]]`. Missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExtensionClass {
    cocycle: BTreeMap<(usize, i32), RatMatrix>,
}

impl ExtensionClass {
    pub fn zero() -> ExtensionClass {
        ExtensionClass::default()
    }

    pub fn from_cocycle(cocycle: BTreeMap<(usize, i32), RatMatrix>) -> ExtensionClass {
        ExtensionClass {
            cocycle: cocycle.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    pub fn cocycle(&self) -> &BTreeMap<(usize, i32), RatMatrix> {
        &self.cocycle
    }

    pub fn is_zero(&self) -> bool {
        self.cocycle.is_empty()
    }

    /// `phi_j[d]` with the shape `N.dim(d+1) x M.dim(d)`.
    pub fn phi(&self, j: usize, d: i32, m: &DegreewiseModule, n: &DegreewiseModule) -> RatMatrix {
        self.cocycle
            .get(&(j, d))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(n.dim(d + 1), m.dim(d)))
    }

    pub fn add(&self, other: &ExtensionClass) -> ExtensionClass {
        let mut out = self.cocycle.clone();
        for (k, m) in &other.cocycle {
            let e = match out.remove(k) {
                Some(x) => x.add(m),
                None => m.clone(),
            };
            out.insert(*k, e);
        }
        ExtensionClass::from_cocycle(out)
    }

    pub fn scale(&self, s: &Rat) -> ExtensionClass {
        ExtensionClass::from_cocycle(self.cocycle.iter().map(|(k, m)| (*k, m.scale(s))).collect())
    }

    /// The middle term `E = N (+) M` of the extension `0 -> N -> E -> M -> 0`.
    pub fn realize(&self, m: &DegreewiseModule, n: &DegreewiseModule) -> Result<DegreewiseModule> {
        let (lo, hi) = common_window(m, n)?;
        for ((_, d), x) in &self.cocycle {
            if x.shape() != (n.dim(d + 1), m.dim(*d)) {
                return Err(BggError::Shape(format!("cocycle block in degree {d} has the wrong shape")));
            }
        }
        let mut dims = BTreeMap::new();
        let mut action = BTreeMap::new();
        for d in lo..=hi {
            dims.insert(d, n.dim(d) + m.dim(d));
            if d == hi {
                continue;
            }
            for j in 0..m.nvars() {
                let blk = RatMatrix::block(
                    &n.act(j, d),
                    &self.phi(j, d, m, n),
                    &RatMatrix::zeros(m.dim(d + 1), n.dim(d)),
                    &m.act(j, d),
                );
                action.insert((j, d), blk);
            }
        }
        DegreewiseModule::from_parts(m.algebra(), (lo, hi), &dims, action)
    }

    /// Whether the realized module satisfies all relations.
    pub fn is_cocycle(&self, m: &DegreewiseModule, n: &DegreewiseModule) -> bool {
        match self.realize(m, n) {
            Ok(e) => super::validate(&e).is_ok(),
            Err(_) => false,
        }
    }
}

/// `Ext^1(M, N)_0` as cocycles modulo coboundaries.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    blocks: Blocks<(usize, i32)>,
    coboundaries: Echelon,
    cocycle_dim: usize,
    basis: Vec<SparseVec>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cocycle_dim(&self) -> usize {
        self.cocycle_dim
    }

    pub fn coboundary_rank(&self) -> usize {
        self.coboundaries.rank()
    }

    /// Cocycles representing a basis of the quotient.
    pub fn classes(&self) -> Vec<ExtensionClass> {
        self.basis
            .iter()
            .map(|v| ExtensionClass::from_cocycle(self.blocks.unpack(v)))
            .collect()
    }

    pub fn combine(&self, coeffs: &[Rat]) -> ExtensionClass {
        let mut acc = ExtensionClass::zero();
        for (c, cls) in coeffs.iter().zip(self.classes()) {
            if !c.is_zero() {
                acc = acc.add(&cls.scale(c));
            }
        }
        acc
    }

    /// True iff the cocycle is a coboundary, i.e. the extension splits.
    pub fn is_trivial(&self, class: &ExtensionClass) -> bool {
        let v = self.blocks.pack(&class.cocycle);
        self.coboundaries.contains(&v)
    }
}

pub fn ext1_0(m: &DegreewiseModule, n: &DegreewiseModule) -> Result<ExtSpace> {
    let (lo, hi) = common_window(m, n)?;
    let nv = m.nvars();
    let mut blocks: Blocks<(usize, i32)> = Blocks::new();
    for j in 0..nv {
        for d in lo..hi {
            blocks.push((j, d), n.dim(d + 1), m.dim(d));
        }
    }
    let len = blocks.len();

    let mut eqs = Echelon::new(len);
    let relations = m.algebra().relations();
    for d in lo..=hi - 2 {
        let (rows, cols) = (n.dim(d + 2), m.dim(d));
        if rows * cols == 0 {
            continue;
        }
        for rel in &relations {
            let mut terms = Vec::new();
            for &(c, a, b) in &rel.terms {
                let an_rows = n.act(a, d + 1).sparse_rows();
                let am_cols = m.act(b, d).sparse_cols();
                terms.push((Rat::from_int(c), a, b, an_rows, am_cols));
            }
            for r in 0..rows {
                for col in 0..cols {
                    let mut row = Vec::new();
                    for (c, a, b, an_rows, am_cols) in &terms {
                        for (s, x) in &an_rows[r] {
                            if let Some(v) = blocks.var((*b, d), *s, col) {
                                row.push((v, c * x));
                            }
                        }
                        for (s, x) in &am_cols[col] {
                            if let Some(v) = blocks.var((*a, d + 1), r, *s) {
                                row.push((v, c * x));
                            }
                        }
                    }
                    let row = normalize_row(row);
                    if !row.is_empty() {
                        eqs.insert(&row);
                    }
                }
            }
        }
    }
    let (cocycles, _) = eqs.into_rref().kernel();

    let mut cob = Echelon::new(len);
    for d in lo..=hi {
        let (nr, mc) = (n.dim(d), m.dim(d));
        if nr * mc == 0 {
            continue;
        }
        let an: Vec<Vec<SparseVec>> = (0..nv).map(|j| n.act(j, d).sparse_cols()).collect();
        let am: Vec<Vec<SparseVec>> = (0..nv).map(|j| m.act(j, d - 1).sparse_rows()).collect();
        for s in 0..nr {
            for t in 0..mc {
                let mut row = Vec::new();
                for j in 0..nv {
                    for (r, x) in &an[j][s] {
                        if let Some(v) = blocks.var((j, d), *r, t) {
                            row.push((v, x.clone()));
                        }
                    }
                    for (c, x) in &am[j][t] {
                        if let Some(v) = blocks.var((j, d - 1), s, *c) {
                            row.push((v, -x));
                        }
                    }
                }
                let row = normalize_row(row);
                if !row.is_empty() {
                    cob.insert(&row);
                }
            }
        }
    }

    let mut ext = cob.clone();
    let basis: Vec<SparseVec> = cocycles.iter().filter(|z| ext.insert(z)).cloned().collect();
    Ok(ExtSpace {
        blocks,
        coboundaries: cob,
        cocycle_dim: cocycles.len(),
        basis,
    })
}
