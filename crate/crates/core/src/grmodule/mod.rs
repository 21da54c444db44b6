//! Finitely generated graded modules presented degreewise: a finite-dimensional
//! vector space in each degree and one matrix per variable and degree.
//!
//! Over the polynomial ring a module is infinite, so symmetric-kind modules
//! carry an explicit window `[lo, hi]` and only the data inside it. Exterior
//! and two-step modules are finite-dimensional and their window is always
//! trimmed to the support.

mod decompose;
mod ext;
mod free;
mod hom;
mod random;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Algebra, AlgebraKind};
use crate::error::{BggError, Result};
use crate::qlinalg::{Rat, RatMatrix, Subspace};

pub use decompose::{end0_is_local, is_isomorphic_0, strip_free_summands, EndReport, Stripped};
pub use ext::{ext1_0, ExtSpace, ExtensionClass};
pub use free::{construct_free, FreeModule};
pub use hom::{hom0, GradedMap, HomSpace};
pub use random::random_module;

#[derive(Clone, PartialEq, Eq)]
pub struct DegreewiseModule {
    algebra: Algebra,
    lo: i32,
    hi: i32,
    dims: Vec<usize>,
    /// `action[j][d - lo]` has shape `dim(d + 1) x dim(d)`.
    action: Vec<Vec<RatMatrix>>,
}

/// The first relation found not to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: &'static str,
    pub vars: (usize, usize),
    pub degree: i32,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (j, k) = self.vars;
        if j == k {
            write!(f, "violation={} var={} degree={}", self.relation, j, self.degree)
        } else {
            write!(f, "violation={} var={},{} degree={}", self.relation, j, k, self.degree)
        }
    }
}

impl DegreewiseModule {
    /// The zero module. Symmetric-kind zero modules get the empty window.
    pub fn zero(algebra: Algebra) -> DegreewiseModule {
        DegreewiseModule {
            algebra,
            lo: 0,
            hi: -1,
            dims: Vec::new(),
            action: vec![Vec::new(); algebra.nvars()],
        }
    }

    /// Builds a module from its window, the dimension of each degree and the
    /// nonzero action matrices `(variable, degree) -> matrix`. Missing matrices
    /// are zero. Shapes are checked; relations are not (see [`validate`]).
    pub fn from_parts(
        algebra: Algebra,
        window: (i32, i32),
        dims: &BTreeMap<i32, usize>,
        action: BTreeMap<(usize, i32), RatMatrix>,
    ) -> Result<DegreewiseModule> {
        let (lo, hi) = window;
        for (&d, &n) in dims {
            if n > 0 && (d < lo || d > hi) {
                return Err(BggError::Shape(format!(
                    "degree {d} has dimension {n} but lies outside the window [{lo}, {hi}]"
                )));
            }
        }
        let len = (hi - lo + 1).max(0) as usize;
        let dimv: Vec<usize> = (0..len)
            .map(|i| dims.get(&(lo + i as i32)).copied().unwrap_or(0))
            .collect();
        let dim = |d: i32| -> usize {
            if d < lo || d > hi {
                0
            } else {
                dimv[(d - lo) as usize]
            }
        };
        let mut act: Vec<Vec<RatMatrix>> = (0..algebra.nvars())
            .map(|_| (0..len).map(|i| {
                let d = lo + i as i32;
                RatMatrix::zeros(dim(d + 1), dim(d))
            }).collect())
            .collect();
        for ((j, d), m) in action {
            if j >= algebra.nvars() {
                return Err(BggError::Shape(format!("variable index {j} out of range")));
            }
            if m.shape() != (dim(d + 1), dim(d)) {
                if m.is_zero() && (d < lo || d > hi) {
                    continue;
                }
                return Err(BggError::Shape(format!(
                    "action of x{j} in degree {d} must be {}x{}, got {}x{}",
                    dim(d + 1),
                    dim(d),
                    m.rows(),
                    m.cols()
                )));
            }
            if d < lo || d > hi {
                continue;
            }
            act[j][(d - lo) as usize] = m;
        }
        Ok(DegreewiseModule {
            algebra,
            lo,
            hi,
            dims: dimv,
            action: act,
        }
        .normalized())
    }

    /// Same as [`DegreewiseModule::from_parts`] with the window spanned by `dims`.
    pub fn from_dims_and_action(
        algebra: Algebra,
        dims: &BTreeMap<i32, usize>,
        action: BTreeMap<(usize, i32), RatMatrix>,
    ) -> Result<DegreewiseModule> {
        let lo = dims.keys().next().copied().unwrap_or(0);
        let hi = dims.keys().next_back().copied().unwrap_or(-1);
        DegreewiseModule::from_parts(algebra, (lo, hi), dims, action)
    }

    /// Trims finite-dimensional kinds to their support.
    fn normalized(self) -> DegreewiseModule {
        if self.algebra.kind == AlgebraKind::Symmetric {
            return self;
        }
        let first = self.dims.iter().position(|&n| n > 0);
        let last = self.dims.iter().rposition(|&n| n > 0);
        match (first, last) {
            (Some(a), Some(b)) => {
                if a == 0 && b + 1 == self.dims.len() {
                    return self;
                }
                let lo = self.lo + a as i32;
                let hi = self.lo + b as i32;
                let mut action: Vec<Vec<RatMatrix>> = self
                    .action
                    .into_iter()
                    .map(|v| v.into_iter().skip(a).take(b - a + 1).collect())
                    .collect();
                // The last map now points at a degree outside the window.
                for v in action.iter_mut() {
                    if let Some(m) = v.last_mut() {
                        *m = RatMatrix::zeros(0, m.cols());
                    }
                }
                DegreewiseModule {
                    algebra: self.algebra,
                    lo,
                    hi,
                    dims: self.dims[a..=b].to_vec(),
                    action,
                }
            }
            _ => DegreewiseModule::zero(self.algebra),
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn kind(&self) -> AlgebraKind {
        self.algebra.kind
    }

    pub fn nvars(&self) -> usize {
        self.algebra.nvars()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn window(&self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    /// True for symmetric-kind modules, whose data is a finite window of an
    /// infinite module.
    pub fn is_truncated(&self) -> bool {
        self.algebra.kind == AlgebraKind::Symmetric
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < self.lo || d > self.hi {
            0
        } else {
            self.dims[(d - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.degrees()
            .map(|d| (d, self.dim(d)))
            .filter(|(_, n)| *n > 0)
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Degrees with nonzero pieces.
    pub fn support(&self) -> Option<(i32, i32)> {
        let d = self.dims();
        Some((*d.keys().next()?, *d.keys().next_back()?))
    }

    /// Action of `x_j` from degree `d` to `d + 1`.
    pub fn act(&self, j: usize, d: i32) -> Cow<'_, RatMatrix> {
        if d >= self.lo && d <= self.hi {
            let m = &self.action[j][(d - self.lo) as usize];
            if m.rows() == self.dim(d + 1) {
                return Cow::Borrowed(m);
            }
        }
        Cow::Owned(RatMatrix::zeros(self.dim(d + 1), self.dim(d)))
    }

    /// All nonzero action matrices keyed by `(variable, degree)`.
    pub fn action_map(&self) -> BTreeMap<(usize, i32), RatMatrix> {
        let mut out = BTreeMap::new();
        for j in 0..self.nvars() {
            for d in self.degrees() {
                let m = self.act(j, d);
                if !m.is_zero() {
                    out.insert((j, d), m.into_owned());
                }
            }
        }
        out
    }

    /// Action of the monomial `x_{m[0]} x_{m[1]} ...` on degree `d`
    /// (the last variable is applied first).
    pub fn act_monomial(&self, m: &[usize], d: i32) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.dim(d));
        let mut deg = d;
        for &j in m.iter().rev() {
            acc = self.act(j, deg).mul(&acc);
            deg += 1;
        }
        acc
    }

    /// Action of `sum_j xi_j x_j` from degree `d` to `d + 1`.
    pub fn act_linear_form(&self, xi: &[Rat], d: i32) -> RatMatrix {
        let mut acc = RatMatrix::zeros(self.dim(d + 1), self.dim(d));
        for (j, c) in xi.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.act(j, d).scale(c));
            }
        }
        acc
    }

    /// Subspace `J M_d` spanned by the images of all variables.
    pub fn radical_image(&self, d: i32) -> Subspace {
        let mut cols = Vec::new();
        for j in 0..self.nvars() {
            cols.extend(self.act(j, d - 1).sparse_cols());
        }
        Subspace::span(self.dim(d), &cols)
    }

    /// The submodule with the given piece in each degree of the window. The
    /// subspaces must be stable under the action; this is not checked.
    pub fn submodule(&self, pieces: &[Subspace]) -> DegreewiseModule {
        assert_eq!(pieces.len(), self.dims.len());
        let dims: Vec<usize> = pieces.iter().map(Subspace::dim).collect();
        let mats: Vec<RatMatrix> = pieces.iter().map(Subspace::basis_matrix).collect();
        let action = (0..self.nvars())
            .map(|j| {
                (0..pieces.len())
                    .map(|i| {
                        let d = self.lo + i as i32;
                        if i + 1 < pieces.len() {
                            let img = self.act(j, d).mul(&mats[i]);
                            pieces[i + 1].coords_matrix(&img)
                        } else {
                            RatMatrix::zeros(0, dims[i])
                        }
                    })
                    .collect()
            })
            .collect();
        DegreewiseModule {
            algebra: self.algebra,
            lo: self.lo,
            hi: self.hi,
            dims,
            action,
        }
        .normalized()
    }

    /// Re-windows a symmetric-kind module: pads with zeros below and cuts
    /// above. Raising `hi` past the known data is an error.
    pub fn rewindow(&self, lo: i32, hi: i32) -> Result<DegreewiseModule> {
        if self.kind() != AlgebraKind::Symmetric {
            return Ok(self.clone());
        }
        if hi > self.hi && !self.is_zero() {
            return Err(BggError::WindowMismatch(format!(
                "cannot extend window top from {} to {hi}",
                self.hi
            )));
        }
        if let Some((s, _)) = self.support() {
            if s < lo {
                return Err(BggError::WindowMismatch(format!(
                    "module has a nonzero piece in degree {s} below the new window bottom {lo}"
                )));
            }
        }
        let dims: BTreeMap<i32, usize> = self.dims().into_iter().filter(|(d, _)| *d <= hi).collect();
        let action = self
            .action_map()
            .into_iter()
            .filter(|((_, d), _)| *d < hi)
            .collect();
        DegreewiseModule::from_parts(self.algebra, (lo, hi), &dims, action)
    }
}

impl fmt::Debug for DegreewiseModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DegreewiseModule({}, window [{}, {}], dims {:?})", self.algebra, self.lo, self.hi, self.dims())
    }
}

/// Checks every quadratic relation of the algebra on the module.
pub fn validate(m: &DegreewiseModule) -> std::result::Result<(), Violation> {
    for d in m.lo..=m.hi - 2 {
        if m.dim(d) == 0 || m.dim(d + 2) == 0 {
            continue;
        }
        for rel in m.algebra.relations() {
            let mut acc = RatMatrix::zeros(m.dim(d + 2), m.dim(d));
            for &(c, a, b) in &rel.terms {
                let prod = m.act(a, d + 1).mul(&m.act(b, d));
                acc = acc.add(&prod.scale(&Rat::from_int(c)));
            }
            if !acc.is_zero() {
                return Err(Violation {
                    relation: rel.name,
                    vars: rel.vars(),
                    degree: d,
                });
            }
        }
    }
    Ok(())
}

/// The one-dimensional module concentrated in degree `d`, all actions zero.
pub fn construct_simple(algebra: Algebra, d: i32) -> DegreewiseModule {
    DegreewiseModule::from_parts(algebra, (d, d), &BTreeMap::from([(d, 1)]), BTreeMap::new())
        .expect("valid shapes")
}

/// `M(i)`: the piece in degree `d` is `M_{d+i}`.
pub fn shift(m: &DegreewiseModule, i: i32) -> DegreewiseModule {
    let mut out = m.clone();
    if !m.dims.is_empty() || m.kind() == AlgebraKind::Symmetric {
        out.lo -= i;
        out.hi -= i;
    }
    out
}

/// `M_{>=k}`: pieces below `k` replaced by zero.
pub fn truncate(m: &DegreewiseModule, k: i32) -> DegreewiseModule {
    let dims: BTreeMap<i32, usize> = m.dims().into_iter().filter(|(d, _)| *d >= k).collect();
    let action = m
        .action_map()
        .into_iter()
        .filter(|((_, d), _)| *d >= k)
        .collect();
    DegreewiseModule::from_parts(m.algebra, m.window(), &dims, action).expect("valid shapes")
}

/// Blockwise direct sum. Symmetric-kind summands must share the window top.
pub fn direct_sum(m: &DegreewiseModule, n: &DegreewiseModule) -> Result<DegreewiseModule> {
    if m.algebra != n.algebra {
        return Err(BggError::KindMismatch(format!("{} vs {}", m.algebra, n.algebra)));
    }
    if m.is_zero() && m.kind() != AlgebraKind::Symmetric {
        return Ok(n.clone());
    }
    if n.is_zero() && n.kind() != AlgebraKind::Symmetric {
        return Ok(m.clone());
    }
    let (lo, hi) = if m.kind() == AlgebraKind::Symmetric {
        if m.hi != n.hi {
            return Err(BggError::WindowMismatch(format!(
                "window tops differ: {} vs {}",
                m.hi, n.hi
            )));
        }
        (m.lo.min(n.lo), m.hi)
    } else {
        (m.lo.min(n.lo), m.hi.max(n.hi))
    };
    let mut dims = BTreeMap::new();
    let mut action = BTreeMap::new();
    for d in lo..=hi {
        dims.insert(d, m.dim(d) + n.dim(d));
        for j in 0..m.nvars() {
            let blk = RatMatrix::block_diag(&m.act(j, d), &n.act(j, d));
            if d < hi {
                action.insert((j, d), blk);
            }
        }
    }
    DegreewiseModule::from_parts(m.algebra, (lo, hi), &dims, action)
}

/// Graded vector-space dual of an exterior module: degree `d` is the dual of
/// degree `-d`, and `x_j` acts by the transpose of its action on `M_{-d-1}`.
pub fn graded_dual(m: &DegreewiseModule) -> Result<DegreewiseModule> {
    if m.kind() != AlgebraKind::Exterior {
        return Err(BggError::KindMismatch(format!(
            "graded dual needs an exterior module, got {}",
            m.kind()
        )));
    }
    if m.is_zero() {
        return Ok(m.clone());
    }
    let dims: BTreeMap<i32, usize> = m.dims().into_iter().map(|(d, n)| (-d, n)).collect();
    let mut action = BTreeMap::new();
    for ((j, d), a) in m.action_map() {
        action.insert((j, -d - 1), a.transpose());
    }
    DegreewiseModule::from_parts(m.algebra, (-m.hi, -m.lo), &dims, action)
}

#[cfg(test)]
mod tests;
