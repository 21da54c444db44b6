//! Minimal free resolutions computed degreewise by exact kernels: projective
//! covers, syzygies, cosyzygies, Betti tables and the linearity test.

mod betti;

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{AlgebraKind, Monomial};
use crate::error::{BggError, Result};
use crate::grmodule::{graded_dual, DegreewiseModule, FreeModule, GradedMap};
use crate::qlinalg::{Echelon, Rat, RatMatrix, SparseVec, Subspace};

pub use betti::{betti_table, is_linear, single_generator_degree, BettiTable, Linearity};

/// Basis lookup for a free module, degree by degree.
#[derive(Clone, Debug)]
pub struct IndexedFree {
    free: FreeModule,
    bases: BTreeMap<i32, Vec<(usize, Monomial)>>,
    index: HashMap<(i32, usize, Monomial), usize>,
}

impl IndexedFree {
    pub fn new(free: FreeModule) -> IndexedFree {
        let (lo, hi) = free.window();
        let mut bases = BTreeMap::new();
        let mut index = HashMap::new();
        for d in lo..=hi {
            let b = free.basis(d);
            for (p, (i, m)) in b.iter().enumerate() {
                index.insert((d, *i, m.clone()), p);
            }
            bases.insert(d, b);
        }
        IndexedFree { free, bases, index }
    }

    pub fn free(&self) -> &FreeModule {
        &self.free
    }

    pub fn basis(&self, d: i32) -> &[(usize, Monomial)] {
        self.bases.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, d: i32) -> usize {
        self.basis(d).len()
    }

    pub fn index_of(&self, d: i32, gen: usize, mono: &[usize]) -> Option<usize> {
        self.index.get(&(d, gen, mono.to_vec())).copied()
    }

    /// `x_j v` for `v` in degree `d`, as a sparse vector in degree `d + 1`.
    pub fn act_sparse(&self, j: usize, d: i32, v: &[(usize, Rat)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        let basis = self.basis(d);
        for (p, x) in v {
            let (i, m) = &basis[*p];
            if let Some((sign, prod)) = self.free.algebra().mul_var(j, m) {
                if let Some(q) = self.index_of(d + 1, *i, &prod) {
                    let e = acc.entry(q).or_insert_with(Rat::zero);
                    if sign > 0 {
                        *e += x;
                    } else {
                        *e -= x;
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

/// A minimal projective cover `p: P -> M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub free: IndexedFree,
    /// `p_d` with shape `M.dim(d) x P.dim(d)`.
    pub maps: BTreeMap<i32, RatMatrix>,
    /// Image in `M_{g_i}` of generator `i`.
    pub gen_images: Vec<Vec<Rat>>,
}

impl Cover {
    pub fn gens(&self) -> &[i32] {
        self.free.free().gens()
    }

    pub fn module(&self) -> DegreewiseModule {
        self.free.free().module()
    }

    pub fn map(&self) -> GradedMap {
        GradedMap::from_mats(self.maps.clone())
    }
}

/// Minimal cover: generators are lifts of a basis of `M / JM`, degree by
/// degree, so the kernel lies in `JP`.
pub fn projective_cover(m: &DegreewiseModule) -> Result<Cover> {
    let mut gens = Vec::new();
    let mut gen_images = Vec::new();
    for d in m.degrees() {
        let n = m.dim(d);
        if n == 0 {
            continue;
        }
        let jm = m.radical_image(d);
        let mut e = Echelon::new(n);
        for b in jm.basis() {
            e.insert(b);
        }
        for i in 0..n {
            let unit = vec![(i, Rat::one())];
            if e.insert(&unit) {
                gens.push(d);
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                gen_images.push(v);
            }
        }
    }
    let free = if m.kind() == AlgebraKind::Symmetric {
        FreeModule::with_window(m.algebra(), gens, m.lo(), m.hi())
    } else {
        FreeModule::new(m.algebra(), gens, None)?
    };
    let free = IndexedFree::new(free);
    let (lo, hi) = free.free().window();
    let mut maps: BTreeMap<i32, RatMatrix> = BTreeMap::new();
    for d in lo..=hi {
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(free.dim(d));
        for (i, mono) in free.basis(d) {
            if mono.is_empty() {
                cols.push(gen_images[*i].clone());
                continue;
            }
            let rest = &mono[1..];
            let prev = free.index_of(d - 1, *i, rest).expect("monomial tail in basis");
            let src = maps[&(d - 1)].col(prev);
            cols.push(m.act(mono[0], d - 1).mul_vec(&src));
        }
        maps.insert(d, RatMatrix::from_dense_cols(m.dim(d), &cols));
    }
    Ok(Cover {
        free,
        maps,
        gen_images,
    })
}

/// `Omega M = ker p` together with the cover and the inclusion into `P`.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub module: DegreewiseModule,
    pub cover: Cover,
    /// The kernel of `p_d` inside `P_d`.
    pub inclusion: BTreeMap<i32, Subspace>,
}

pub fn syzygy_data(m: &DegreewiseModule) -> Result<Syzygy> {
    let cover = projective_cover(m)?;
    let (module, inclusion) = kernel_module(&cover, m)?;
    Ok(Syzygy {
        module,
        cover,
        inclusion,
    })
}

fn kernel_module(cover: &Cover, m: &DegreewiseModule) -> Result<(DegreewiseModule, BTreeMap<i32, Subspace>)> {
    let free = &cover.free;
    let (lo, hi) = free.free().window();
    let mut inclusion = BTreeMap::new();
    for d in lo..=hi {
        inclusion.insert(d, cover.maps[&d].kernel());
    }
    let mut dims = BTreeMap::new();
    let mut action = BTreeMap::new();
    for d in lo..=hi {
        let k = &inclusion[&d];
        dims.insert(d, k.dim());
        if d == hi || k.dim() == 0 {
            continue;
        }
        let next = &inclusion[&(d + 1)];
        for j in 0..m.nvars() {
            let mut a = RatMatrix::zeros(next.dim(), k.dim());
            for (c, v) in k.basis().iter().enumerate() {
                let img = free.act_sparse(j, d, v);
                let dense = crate::qlinalg::to_dense(&img, free.dim(d + 1));
                for (r, x) in next.coords(&dense).into_iter().enumerate() {
                    a.set(r, c, x);
                }
            }
            action.insert((j, d), a);
        }
    }
    let window = if m.kind() == AlgebraKind::Symmetric { (m.lo(), m.hi()) } else { (lo, hi) };
    Ok((DegreewiseModule::from_parts(m.algebra(), window, &dims, action)?, inclusion))
}

pub fn syzygy(m: &DegreewiseModule) -> Result<DegreewiseModule> {
    Ok(syzygy_data(m)?.module)
}

fn require_exterior(m: &DegreewiseModule, what: &str) -> Result<()> {
    if m.kind() != AlgebraKind::Exterior {
        return Err(BggError::KindMismatch(format!("{what} needs an exterior module, got {}", m.kind())));
    }
    Ok(())
}

/// `Omega^{-1} M = D Omega D M`.
pub fn cosyzygy(m: &DegreewiseModule) -> Result<DegreewiseModule> {
    require_exterior(m, "cosyzygy")?;
    graded_dual(&syzygy(&graded_dual(m)?)?)
}

/// Injective envelope `iota: M -> I(M)` with `I(M) = D P(DM)`, kept in the
/// form needed to parametrize maps out of `I(M)`.
#[derive(Clone, Debug)]
pub struct InjectiveEnvelope {
    /// Projective cover of the dual module.
    pub dual_cover: Cover,
}

impl InjectiveEnvelope {
    pub fn new(m: &DegreewiseModule) -> Result<InjectiveEnvelope> {
        require_exterior(m, "injective envelope")?;
        Ok(InjectiveEnvelope {
            dual_cover: projective_cover(&graded_dual(m)?)?,
        })
    }

    /// Degrees of the socle generators of `I(M)`: generator `i` of the dual
    /// cover in degree `g_i` gives a free summand generated in `-g_i - nvars`.
    pub fn generator_degrees(&self) -> Vec<i32> {
        let nv = self.dual_cover.free.free().algebra().nvars() as i32;
        self.dual_cover.gens().iter().map(|g| -g - nv).collect()
    }

    /// `iota_d = transpose(p_{-d})`, shape `I.dim(d) x M.dim(d)`, with rows
    /// indexed by the dual basis of `P(DM)_{-d}`.
    pub fn iota(&self, d: i32) -> Option<RatMatrix> {
        self.dual_cover.maps.get(&(-d)).map(RatMatrix::transpose)
    }

    /// For each `(i, S)` in the basis of `P(DM)_{-d}`, the monomial `c` and sign
    /// with `(i, S)^* = sign * x_c (i, top)^*` inside `I(M)`.
    pub fn dual_basis_words(&self, d: i32) -> Vec<(usize, i64, Vec<usize>)> {
        let free = &self.dual_cover.free;
        let alg = free.free().algebra();
        let top: Vec<usize> = (0..alg.nvars()).collect();
        free.basis(-d)
            .iter()
            .map(|(i, s)| {
                let mut t = top.clone();
                let mut sign = 1i64;
                let mut word = Vec::new();
                for c in top.iter().filter(|c| !s.contains(c)) {
                    let pos = t.iter().position(|x| x == c).expect("present");
                    t.remove(pos);
                    // x_c (i, T)^* = sign(c, T \ c) (i, T \ c)^*
                    sign *= if pos % 2 == 0 { 1 } else { -1 };
                    word.push(*c);
                }
                word.reverse();
                (*i, sign, word)
            })
            .collect()
    }
}

/// A minimal resolution `... -> P_1 -> P_0 -> M` up to a length.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// `covers[i]` covers `Omega^i M`.
    pub covers: Vec<Cover>,
    /// `syzygies[i] = Omega^{i+1} M` with its inclusion into `P_i`.
    pub syzygies: Vec<(DegreewiseModule, BTreeMap<i32, Subspace>)>,
}

/// Computes `P_0 .. P_length`.
pub fn resolve(m: &DegreewiseModule, length: usize) -> Result<Resolution> {
    let mut covers = Vec::new();
    let mut syzygies = Vec::new();
    let mut cur = m.clone();
    for i in 0..=length {
        let cover = projective_cover(&cur)?;
        if i < length {
            let (k, inc) = kernel_module(&cover, &cur)?;
            covers.push(cover);
            syzygies.push((k.clone(), inc));
            cur = k;
        } else {
            covers.push(cover);
        }
    }
    Ok(Resolution { covers, syzygies })
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.covers.len() - 1
    }

    pub fn generator_degrees(&self, i: usize) -> &[i32] {
        self.covers[i].gens()
    }

    /// Images in `P_i` of the generators of `P_{i+1}`: `(degree, dense vector)`.
    pub fn differential_images(&self, i: usize) -> Vec<(i32, Vec<Rat>)> {
        let next = &self.covers[i + 1];
        let inc = &self.syzygies[i].1;
        next.gens()
            .iter()
            .zip(&next.gen_images)
            .map(|(g, v)| (*g, inc[g].combine(v)))
            .collect()
    }

    /// Coefficient matrices of a linear differential `P_{i+1} -> P_i`:
    /// `C_s[u][t]` is the coefficient of `x_s e_u` in the image of generator `t`.
    /// Fails when some image is not linear in the generators of `P_i`.
    pub fn linear_coefficients(&self, i: usize) -> Result<Vec<RatMatrix>> {
        let p = &self.covers[i].free;
        let nv = p.free().algebra().nvars();
        let rows = p.free().rank();
        let imgs = self.differential_images(i);
        let mut cs = vec![RatMatrix::zeros(rows, imgs.len()); nv];
        for (t, (g, v)) in imgs.iter().enumerate() {
            let basis = p.basis(*g);
            for (pos, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let (u, mono) = &basis[pos];
                if mono.len() != 1 {
                    return Err(BggError::NotLinear {
                        row: i + 1,
                        degree: *g,
                        value: 1,
                    });
                }
                cs[mono[0]].set(*u, t, x.clone());
            }
        }
        Ok(cs)
    }
}

#[cfg(test)]
mod tests;
