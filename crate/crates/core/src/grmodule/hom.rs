use std::collections::BTreeMap;

use super::DegreewiseModule;
use crate::algebra::AlgebraKind;
use crate::error::{BggError, Result};
use crate::qlinalg::{Echelon, Rat, RatMatrix, SparseVec};

/// A degree-0 homomorphism as one matrix per degree. Degrees without an entry
/// carry the zero map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedMap {
    mats: BTreeMap<i32, RatMatrix>,
}

impl GradedMap {
    pub fn zero() -> GradedMap {
        GradedMap::default()
    }

    pub fn identity(m: &DegreewiseModule) -> GradedMap {
        GradedMap {
            mats: m
                .dims()
                .into_iter()
                .map(|(d, n)| (d, RatMatrix::identity(n)))
                .collect(),
        }
    }

    pub fn from_mats(mats: BTreeMap<i32, RatMatrix>) -> GradedMap {
        GradedMap {
            mats: mats.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    pub fn at(&self, d: i32) -> Option<&RatMatrix> {
        self.mats.get(&d)
    }

    /// The component in degree `d` with the shape `target.dim(d) x source.dim(d)`.
    pub fn component(&self, d: i32, source: &DegreewiseModule, target: &DegreewiseModule) -> RatMatrix {
        self.mats
            .get(&d)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(target.dim(d), source.dim(d)))
    }

    pub fn mats(&self) -> &BTreeMap<i32, RatMatrix> {
        &self.mats
    }

    pub fn is_zero(&self) -> bool {
        self.mats.values().all(RatMatrix::is_zero)
    }

    /// `self o other`.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        let mut mats = BTreeMap::new();
        for (d, f) in &other.mats {
            if let Some(g) = self.mats.get(d) {
                let p = g.mul(f);
                if !p.is_zero() {
                    mats.insert(*d, p);
                }
            }
        }
        GradedMap { mats }
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        let mut mats = self.mats.clone();
        for (d, m) in &other.mats {
            let e = match mats.remove(d) {
                Some(x) => x.add(m),
                None => m.clone(),
            };
            if !e.is_zero() {
                mats.insert(*d, e);
            }
        }
        GradedMap { mats }
    }

    pub fn scale(&self, s: &Rat) -> GradedMap {
        if s.is_zero() {
            return GradedMap::zero();
        }
        GradedMap {
            mats: self.mats.iter().map(|(d, m)| (*d, m.scale(s))).collect(),
        }
    }

    /// Checks the intertwining identities `f_{d+1} A_j = A_j f_d`.
    pub fn is_homomorphism(&self, source: &DegreewiseModule, target: &DegreewiseModule) -> bool {
        let (lo, hi) = match common_window(source, target) {
            Ok(w) => w,
            Err(_) => return false,
        };
        for (d, m) in &self.mats {
            if m.shape() != (target.dim(*d), source.dim(*d)) {
                return false;
            }
        }
        for d in lo..hi {
            let f0 = self.component(d, source, target);
            let f1 = self.component(d + 1, source, target);
            for j in 0..source.nvars() {
                if f1.mul(&source.act(j, d)) != target.act(j, d).mul(&f0) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every component is square and invertible and all nonzero
    /// degrees of both modules are covered.
    pub fn is_isomorphism(&self, source: &DegreewiseModule, target: &DegreewiseModule) -> bool {
        if source.dims() != target.dims() {
            return false;
        }
        source
            .dims()
            .into_iter()
            .all(|(d, n)| self.component(d, source, target).rank() == n)
    }
}

/// The window shared by two modules for Hom and Ext computations. Symmetric
/// modules must agree on the window top; finite kinds use the union.
pub(crate) fn common_window(m: &DegreewiseModule, n: &DegreewiseModule) -> Result<(i32, i32)> {
    if m.algebra() != n.algebra() {
        return Err(BggError::KindMismatch(format!("{} vs {}", m.algebra(), n.algebra())));
    }
    if m.kind() == AlgebraKind::Symmetric {
        if m.hi() != n.hi() {
            return Err(BggError::WindowMismatch(format!(
                "window tops differ: {} vs {}",
                m.hi(),
                n.hi()
            )));
        }
        return Ok((m.lo().min(n.lo()), m.hi()));
    }
    match (m.support(), n.support()) {
        (Some((a, b)), Some((c, d))) => Ok((a.min(c), b.max(d))),
        (Some(w), None) | (None, Some(w)) => Ok(w),
        (None, None) => Ok((0, -1)),
    }
}

/// Position of matrix blocks inside one long coordinate vector.
#[derive(Clone, Debug)]
pub(crate) struct Blocks<K: Ord + Copy> {
    index: BTreeMap<K, (usize, usize, usize)>,
    len: usize,
}

impl<K: Ord + Copy> Blocks<K> {
    pub(crate) fn new() -> Blocks<K> {
        Blocks {
            index: BTreeMap::new(),
            len: 0,
        }
    }

    /// Registers a `rows x cols` block; empty blocks are skipped.
    pub(crate) fn push(&mut self, key: K, rows: usize, cols: usize) {
        if rows * cols == 0 {
            return;
        }
        self.index.insert(key, (self.len, rows, cols));
        self.len += rows * cols;
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    /// Variable index of entry `(r, c)` of block `key`.
    pub(crate) fn var(&self, key: K, r: usize, c: usize) -> Option<usize> {
        self.index.get(&key).map(|&(off, _, cols)| off + r * cols + c)
    }

    pub(crate) fn get(&self, key: &K) -> Option<(usize, usize, usize)> {
        self.index.get(key).copied()
    }

    /// Splits a coordinate vector into its blocks.
    pub(crate) fn unpack(&self, v: &[(usize, Rat)]) -> BTreeMap<K, RatMatrix> {
        let mut out: BTreeMap<K, RatMatrix> = BTreeMap::new();
        let mut starts: Vec<(usize, K)> = self.index.iter().map(|(k, &(off, _, _))| (off, *k)).collect();
        starts.sort_by_key(|e| e.0);
        for (i, x) in v {
            let p = starts.partition_point(|(off, _)| *off <= *i) - 1;
            let key = starts[p].1;
            let (off, rows, cols) = self.index[&key];
            let m = out.entry(key).or_insert_with(|| RatMatrix::zeros(rows, cols));
            let loc = i - off;
            m.set(loc / cols, loc % cols, x.clone());
        }
        out
    }

    pub(crate) fn pack(&self, blocks: &BTreeMap<K, RatMatrix>) -> SparseVec {
        let mut out = Vec::new();
        for (k, m) in blocks {
            if let Some((off, rows, cols)) = self.get(k) {
                debug_assert_eq!(m.shape(), (rows, cols));
                for r in 0..rows {
                    for c in 0..cols {
                        let x = m.get(r, c);
                        if !x.is_zero() {
                            out.push((off + r * cols + c, x.clone()));
                        }
                    }
                }
            }
        }
        out.sort_by_key(|e| e.0);
        out
    }
}

/// Sums duplicate indices and drops zeros.
pub(crate) fn normalize_row(entries: Vec<(usize, Rat)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    for (i, x) in entries {
        *acc.entry(i).or_insert_with(Rat::zero) += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// The space of degree-0 homomorphisms `M -> N`, as the kernel of the
/// intertwining system. Basis vector `i` is 1 at free column `free[i]` and 0
/// at the other free columns, so coordinates are read off those columns.
#[derive(Clone, Debug)]
pub struct HomSpace {
    blocks: Blocks<i32>,
    basis: Vec<SparseVec>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn map(&self, i: usize) -> GradedMap {
        GradedMap::from_mats(self.blocks.unpack(&self.basis[i]))
    }

    pub fn maps(&self) -> Vec<GradedMap> {
        (0..self.dim()).map(|i| self.map(i)).collect()
    }

    pub fn vector_of(&self, f: &GradedMap) -> SparseVec {
        self.blocks.pack(&f.mats)
    }

    pub fn ambient_len(&self) -> usize {
        self.blocks.len()
    }

    /// Coordinates of a homomorphism in the basis.
    pub fn coords(&self, f: &GradedMap) -> Vec<Rat> {
        let v = self.vector_of(f);
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, x) in v {
            if let Ok(p) = self.free.binary_search(&i) {
                out[p] = x;
            }
        }
        out
    }

    pub fn combine(&self, coeffs: &[Rat]) -> GradedMap {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in b {
                *acc.entry(*i).or_insert_with(Rat::zero) += c * x;
            }
        }
        let v: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        GradedMap::from_mats(self.blocks.unpack(&v))
    }
}

/// `Hom(M, N)_0`. Symmetric-kind modules must share the window top.
pub fn hom0(m: &DegreewiseModule, n: &DegreewiseModule) -> Result<HomSpace> {
    let (lo, hi) = common_window(m, n)?;
    let mut blocks = Blocks::new();
    for d in lo..=hi {
        blocks.push(d, n.dim(d), m.dim(d));
    }
    let mut ech = Echelon::new(blocks.len());
    for d in lo..hi {
        let (rows, cols) = (n.dim(d + 1), m.dim(d));
        if rows * cols == 0 {
            continue;
        }
        for j in 0..m.nvars() {
            let am = m.act(j, d);
            let an = n.act(j, d);
            let am_cols = am.sparse_cols();
            let an_rows = an.sparse_rows();
            for r in 0..rows {
                for c in 0..cols {
                    let mut row = Vec::new();
                    for (s, x) in &am_cols[c] {
                        if let Some(v) = blocks.var(d + 1, r, *s) {
                            row.push((v, x.clone()));
                        }
                    }
                    for (s, x) in &an_rows[r] {
                        if let Some(v) = blocks.var(d, *s, c) {
                            row.push((v, -x));
                        }
                    }
                    let row = normalize_row(row);
                    if !row.is_empty() {
                        ech.insert(&row);
                    }
                }
            }
        }
    }
    let (basis, free) = ech.into_rref().kernel();
    Ok(HomSpace { blocks, basis, free })
}
