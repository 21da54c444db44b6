use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom0, DegreewiseModule, GradedMap, HomSpace};
use crate::algebra::{monomial_sign, AlgebraKind};
use crate::error::{BggError, Result};
use crate::qlinalg::{Echelon, Rat, RatMatrix, SparseVec, Subspace};

/// Structure of `End(M)_0`: the radical is the kernel of the trace form and
/// the residue is the quotient by it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndReport {
    pub dim: usize,
    pub radical_dim: usize,
    pub residue_dim: usize,
    /// Whether the residue algebra is a division algebra, i.e. the module is
    /// indecomposable.
    pub division: bool,
}

impl EndReport {
    pub fn indecomposable(&self) -> bool {
        self.division
    }
}

/// Multiplication table of an algebra given on a basis.
struct StructureConstants {
    r: usize,
    /// `table[a][b]` holds the coordinates of `e_a e_b`.
    table: Vec<Vec<Vec<Rat>>>,
}

impl StructureConstants {
    fn of_end(h: &HomSpace) -> StructureConstants {
        let maps: Vec<GradedMap> = h.maps();
        let r = maps.len();
        let table = maps
            .iter()
            .map(|fa| maps.iter().map(|fb| h.coords(&fa.compose(fb))).collect())
            .collect();
        StructureConstants { r, table }
    }

    fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.r];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (e, c) in self.table[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[e] += &s * c;
                    }
                }
            }
        }
        out
    }

    fn unit_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.r];
        v[i] = Rat::one();
        v
    }

    /// Kernel of the trace form `(a, b) -> tr(L_{ab})`.
    fn radical(&self) -> Subspace {
        let tr: Vec<Rat> = (0..self.r)
            .map(|e| (0..self.r).map(|b| self.table[e][b][b].clone()).sum())
            .collect();
        let mut form = RatMatrix::zeros(self.r, self.r);
        for a in 0..self.r {
            for b in 0..self.r {
                let v: Rat = (0..self.r).map(|e| &self.table[a][b][e] * &tr[e]).sum();
                form.set(a, b, v);
            }
        }
        form.kernel()
    }
}

pub fn end0_is_local(m: &DegreewiseModule) -> Result<EndReport> {
    if m.is_zero() {
        return Err(BggError::ZeroModule);
    }
    let h = hom0(m, m)?;
    let sc = StructureConstants::of_end(&h);
    let rad = sc.radical();
    let residue = sc.r - rad.dim();
    let division = residue == 1 || residue_is_division(&sc, &rad, &h.coords(&GradedMap::identity(m)), m.total_dim() as u64);
    Ok(EndReport {
        dim: sc.r,
        radical_dim: rad.dim(),
        residue_dim: residue,
        division,
    })
}

/// Looks for an element of the semisimple quotient whose minimal polynomial
/// has a rational root while having degree above one. Such an element gives a
/// zero divisor, so the quotient is not a division algebra. Finding none among
/// the probes is taken as evidence of a division algebra.
fn residue_is_division(sc: &StructureConstants, rad: &Subspace, one: &[Rat], seed: u64) -> bool {
    let mut red = Echelon::new(sc.r);
    for b in rad.basis() {
        red.insert(b);
    }
    let mut probes: Vec<Vec<Rat>> = (0..sc.r).map(|i| sc.unit_vec(i)).collect();
    for a in 0..sc.r {
        for b in a + 1..sc.r {
            let s: Vec<Rat> = probes[a].iter().zip(&probes[b]).map(|(x, y)| x + y).collect();
            probes.push(s);
            probes.push(sc.mul(&sc.unit_vec(a), &sc.unit_vec(b)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    for _ in 0..8 {
        probes.push((0..sc.r).map(|_| Rat::from_int(rng.random_range(-5..=5))).collect());
    }
    for x in probes {
        if let Some(p) = min_poly_mod(sc, &red, one, &x) {
            if p.len() > 2 && has_rational_root(&p) {
                return false;
            }
        }
    }
    true
}

fn reduce_dense(red: &Echelon, v: &[Rat]) -> SparseVec {
    red.reduce(&crate::qlinalg::to_sparse(v))
}

/// Minimal polynomial (coefficients from the constant term up, monic) of `x`
/// modulo the radical. `None` for elements of the radical.
fn min_poly_mod(sc: &StructureConstants, red: &Echelon, one: &[Rat], x: &[Rat]) -> Option<Vec<Rat>> {
    if reduce_dense(red, x).is_empty() {
        return None;
    }
    let mut powers = vec![one.to_vec()];
    loop {
        let next = sc.mul(powers.last().expect("nonempty"), x);
        powers.push(next);
        let k = powers.len();
        let mut mat = RatMatrix::zeros(sc.r, k - 1);
        for (c, p) in powers[..k - 1].iter().enumerate() {
            for (i, v) in crate::qlinalg::to_dense(&reduce_dense(red, p), sc.r).into_iter().enumerate() {
                mat.set(i, c, v);
            }
        }
        let target: Vec<Rat> = crate::qlinalg::to_dense(&reduce_dense(red, &powers[k - 1]), sc.r);
        if let Ok(Some(sol)) = mat.solve(&target) {
            let mut p: Vec<Rat> = sol.into_iter().map(|c| -c).collect();
            p.push(Rat::one());
            return Some(p);
        }
        if k > sc.r + 1 {
            return None;
        }
    }
}

fn has_rational_root(p: &[Rat]) -> bool {
    if p[0].is_zero() {
        return true;
    }
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
        return false;
    };
    if a0 > 1_000_000 || an > 1_000_000 {
        return false;
    }
    let divisors = |n: u64| (1..=n).filter(move |d| n % d == 0);
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let x = Rat::new(sign * num as i64, den as i64);
                let mut acc = Rat::zero();
                for c in p.iter().rev() {
                    acc = &acc * &x + c;
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// Result of splitting off free summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub core: DegreewiseModule,
    pub free_part: Vec<i32>,
}

/// Splits `M = core (+) free` over the exterior algebra.
///
/// A free summand `R(-g)` exists iff some `v` in `M_g` has `x_0 ... x_n v != 0`.
/// The splitting map `f: M -> R(-g)` is built from a functional `mu` on
/// `M_{g+n+1}` with `mu(x_0 ... x_n v) = 1`: the coefficient of `x_S` in `f(m)`
/// is `sign(S', S) mu(x_{S'} m)` with `S'` the complement of `S`. Then
/// `f(v) = 1`, the pairing of `f` with `1 -> v` is nonzero, and the core is
/// `ker f`.
pub fn strip_free_summands(m: &DegreewiseModule) -> Result<Stripped> {
    if m.kind() != AlgebraKind::Exterior {
        return Err(BggError::KindMismatch(format!(
            "free summands are split over the exterior algebra, got {}",
            m.kind()
        )));
    }
    let nv = m.nvars();
    let top: Vec<usize> = (0..nv).collect();
    let mut core = m.clone();
    let mut free_part = Vec::new();
    'outer: loop {
        for g in core.degrees() {
            if core.dim(g) == 0 || core.dim(g + nv as i32) == 0 {
                continue;
            }
            let t = core.act_monomial(&top, g);
            let Some((i, k, w)) = first_nonzero(&t) else {
                continue;
            };
            let _ = i;
            let w_inv = w.recip();
            let mut pieces = Vec::new();
            for d in core.degrees() {
                let s = d - g;
                if s < 0 || s > nv as i32 {
                    pieces.push(Subspace::full(core.dim(d)));
                    continue;
                }
                let monos = core.algebra().monomials(s);
                let mut f = RatMatrix::zeros(monos.len(), core.dim(d));
                for (row, mono) in monos.iter().enumerate() {
                    let comp: Vec<usize> = top.iter().copied().filter(|x| !mono.contains(x)).collect();
                    let sign = monomial_sign(&comp, mono);
                    let act = core.act_monomial(&comp, d);
                    let scale = &w_inv * Rat::from_int(sign);
                    for c in 0..core.dim(d) {
                        f.set(row, c, act.get(k, c) * &scale);
                    }
                }
                pieces.push(f.kernel());
            }
            core = core.submodule(&pieces);
            free_part.push(g);
            continue 'outer;
        }
        break;
    }
    free_part.sort_unstable();
    Ok(Stripped { core, free_part })
}

fn first_nonzero(t: &RatMatrix) -> Option<(usize, usize, Rat)> {
    for c in 0..t.cols() {
        for r in 0..t.rows() {
            if !t.get(r, c).is_zero() {
                return Some((c, r, t.get(r, c).clone()));
            }
        }
    }
    None
}

const ISO_SEED: u64 = 0x1507_0000;

/// Searches `Hom(M, N)_0` for an isomorphism: first the basis maps, then
/// random combinations with coefficients in a range wider than the total
/// dimension (the degree of the determinant polynomial), retried.
pub fn is_isomorphic_0(m: &DegreewiseModule, n: &DegreewiseModule) -> Result<bool> {
    if m.algebra() != n.algebra() {
        return Err(BggError::KindMismatch(format!("{} vs {}", m.algebra(), n.algebra())));
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let h = hom0(m, n)?;
    Ok(find_isomorphism(&h, m, n).is_some())
}

pub(crate) fn find_isomorphism(h: &HomSpace, m: &DegreewiseModule, n: &DegreewiseModule) -> Option<GradedMap> {
    if h.dim() == 0 {
        return None;
    }
    for f in h.maps() {
        if f.is_isomorphism(m, n) {
            return Some(f);
        }
    }
    let bound = 2 * m.total_dim() as i64 + 10;
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED ^ m.total_dim() as u64);
    for _ in 0..12 {
        let coeffs: Vec<Rat> = (0..h.dim())
            .map(|_| Rat::from_int(rng.random_range(-bound..=bound)))
            .collect();
        let f = h.combine(&coeffs);
        if f.is_isomorphism(m, n) {
            return Some(f);
        }
    }
    None
}
