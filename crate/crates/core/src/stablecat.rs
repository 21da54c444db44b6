//! The stable category of graded exterior modules: maps modulo those factoring
//! through free modules, syzygy powers, the translate `tau = Omega^2 (n+1)`
//! and the dimension form of Serre duality.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::AlgebraKind;
use crate::error::{BggError, Result};
use crate::grmodule::{hom0, is_isomorphic_0, shift, strip_free_summands, DegreewiseModule, GradedMap};
use crate::homres::{cosyzygy, syzygy, InjectiveEnvelope};
use crate::qlinalg::{Echelon, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableHomReport {
    pub hom_dim: usize,
    pub proj_factoring_dim: usize,
    pub stable_dim: usize,
}

fn require_exterior(m: &DegreewiseModule) -> Result<()> {
    if m.kind() != AlgebraKind::Exterior {
        return Err(BggError::KindMismatch(format!(
            "the stable category is built over the exterior algebra, got {}",
            m.kind()
        )));
    }
    Ok(())
}

/// `dim Hom(M, N)_0` modulo maps factoring through a free module.
pub fn stable_hom0(m: &DegreewiseModule, n: &DegreewiseModule) -> Result<StableHomReport> {
    require_exterior(m)?;
    require_exterior(n)?;
    let env = InjectiveEnvelope::new(m)?;
    stable_hom0_with(&env, m, n)
}

/// As [`stable_hom0`] with a precomputed envelope of `m`.
///
/// A map `M -> N` factors through a free module iff it extends along the
/// envelope `iota: M -> I(M)`. Maps `I(M) -> N` are free choices of images of
/// the socle generators `(i, top)^*`, and `(i, S)^*` goes to
/// `sign * x_c y_i` for the word `c` recorded by the envelope.
pub fn stable_hom0_with(env: &InjectiveEnvelope, m: &DegreewiseModule, n: &DegreewiseModule) -> Result<StableHomReport> {
    let hom = hom0(m, n)?;
    if hom.dim() == 0 {
        return Ok(StableHomReport {
            hom_dim: 0,
            proj_factoring_dim: 0,
            stable_dim: 0,
        });
    }
    let gdeg = env.generator_degrees();
    // Per degree of M: dual-basis words and the rows of iota.
    let mut per_degree = Vec::new();
    for d in m.degrees() {
        if m.dim(d) == 0 || n.dim(d) == 0 {
            continue;
        }
        let Some(iota) = env.iota(d) else { continue };
        per_degree.push((d, env.dual_basis_words(d), iota));
    }
    let mut cache: HashMap<(Vec<usize>, i32), RatMatrix> = HashMap::new();
    let mut ech = Echelon::new(hom.ambient_len());
    'gens: for (i, &e) in gdeg.iter().enumerate() {
        let ny = n.dim(e);
        if ny == 0 {
            continue;
        }
        // terms[d] = list of (W, iota row) with W: N_e -> N_d.
        let mut terms: Vec<(i32, Vec<(RatMatrix, Vec<crate::qlinalg::Rat>)>)> = Vec::new();
        for (d, words, iota) in &per_degree {
            let mut t = Vec::new();
            for (q, (gi, sign, word)) in words.iter().enumerate() {
                if *gi != i {
                    continue;
                }
                let row = iota.row(q).to_vec();
                if row.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let w = cache
                    .entry((word.clone(), e))
                    .or_insert_with(|| n.act_monomial(word, e))
                    .clone();
                let w = if *sign < 0 { w.scale(&crate::qlinalg::Rat::from_int(-1)) } else { w };
                t.push((w, row));
            }
            if !t.is_empty() {
                terms.push((*d, t));
            }
        }
        for b in 0..ny {
            let mut mats = BTreeMap::new();
            for (d, t) in &terms {
                let mut acc = RatMatrix::zeros(n.dim(*d), m.dim(*d));
                for (w, row) in t {
                    let col = w.col(b);
                    for (r, cr) in col.iter().enumerate() {
                        if cr.is_zero() {
                            continue;
                        }
                        for (c, x) in row.iter().enumerate() {
                            if !x.is_zero() {
                                let v = acc.get(r, c) + cr * x;
                                acc.set(r, c, v);
                            }
                        }
                    }
                }
                mats.insert(*d, acc);
            }
            let f = GradedMap::from_mats(mats);
            ech.insert(&hom.vector_of(&f));
            if ech.rank() == hom.dim() {
                break 'gens;
            }
        }
    }
    let pf = ech.rank();
    Ok(StableHomReport {
        hom_dim: hom.dim(),
        proj_factoring_dim: pf,
        stable_dim: hom.dim() - pf,
    })
}

/// `Omega^i` of the stripped core; negative powers are cosyzygies.
pub fn omega_power(m: &DegreewiseModule, i: i32) -> Result<DegreewiseModule> {
    require_exterior(m)?;
    let mut cur = strip_free_summands(m)?.core;
    for _ in 0..i.unsigned_abs() {
        cur = if i > 0 { syzygy(&cur)? } else { cosyzygy(&cur)? };
    }
    Ok(cur)
}

/// Lazily computed `Omega^i M` for a fixed module.
#[derive(Clone, Debug)]
pub struct OmegaTower {
    powers: BTreeMap<i32, DegreewiseModule>,
}

impl OmegaTower {
    pub fn new(m: &DegreewiseModule) -> Result<OmegaTower> {
        require_exterior(m)?;
        Ok(OmegaTower {
            powers: BTreeMap::from([(0, strip_free_summands(m)?.core)]),
        })
    }

    pub fn get(&mut self, i: i32) -> Result<&DegreewiseModule> {
        if !self.powers.contains_key(&i) {
            let step = i.signum();
            let mut k = i - step;
            while !self.powers.contains_key(&k) {
                k -= step;
            }
            while k != i {
                let cur = &self.powers[&k];
                let next = if step > 0 { syzygy(cur)? } else { cosyzygy(cur)? };
                k += step;
                self.powers.insert(k, next);
            }
        }
        Ok(&self.powers[&i])
    }

    /// Computes every power in `lo..=hi`.
    pub fn fill(&mut self, lo: i32, hi: i32) -> Result<()> {
        self.get(lo)?;
        self.get(hi)?;
        Ok(())
    }

    /// A computed power, panicking when it is missing.
    pub fn computed(&self, i: i32) -> &DegreewiseModule {
        &self.powers[&i]
    }
}

/// `tau^i M = Omega^{2i} M (n i + i)`.
pub fn tau(m: &DegreewiseModule, i: u32) -> Result<DegreewiseModule> {
    if i == 0 {
        return Err(BggError::Input("tau power must be at least 1".into()));
    }
    let n = m.algebra().n() as i32;
    let i = i as i32;
    Ok(shift(&omega_power(m, 2 * i)?, n * i + i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SerreCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

/// Compares `dim stHom(X, Omega^{-m} Y)` with `dim stHom(Y, Omega^{m+1} X (n+1))`.
pub fn serre_check(x: &DegreewiseModule, y: &DegreewiseModule, m: i32) -> Result<SerreCheck> {
    let n = x.algebra().n() as i32;
    let lhs = stable_hom0(x, &omega_power(y, -m)?)?.stable_dim;
    let rhs = stable_hom0(y, &shift(&omega_power(x, m + 1)?, n + 1))?.stable_dim;
    Ok(SerreCheck {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

pub fn is_stably_isomorphic(m: &DegreewiseModule, n: &DegreewiseModule) -> Result<bool> {
    require_exterior(m)?;
    require_exterior(n)?;
    let a = strip_free_summands(m)?.core;
    let b = strip_free_summands(n)?.core;
    is_isomorphic_0(&a, &b)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::algebra::Algebra;
    use crate::grmodule::{construct_free, construct_simple, direct_sum, random_module, truncate};

    fn ext(n: usize) -> Algebra {
        Algebra::exterior(n)
    }

    fn k0(n: usize) -> DegreewiseModule {
        construct_simple(ext(n), 0)
    }

    fn free(n: usize) -> DegreewiseModule {
        construct_free(ext(n), &[0], None).unwrap()
    }

    fn j1(n: usize) -> DegreewiseModule {
        shift(&truncate(&free(n), 1), 1)
    }

    #[test]
    fn stable_hom_examples() {
        let r = stable_hom0(&k0(2), &k0(2)).unwrap();
        assert_eq!((r.hom_dim, r.proj_factoring_dim, r.stable_dim), (1, 0, 1));
        for m in [k0(3), j1(3), free(3), random_module(ext(3), &BTreeMap::from([(0, 2), (1, 2)]), 4)] {
            assert_eq!(stable_hom0(&free(3), &m).unwrap().stable_dim, 0);
        }
        let r = stable_hom0(&j1(2), &k0(2)).unwrap();
        assert_eq!((r.hom_dim, r.stable_dim), (2, 2));
        // The projection R -> k factors through R itself.
        let r = stable_hom0(&free(2), &k0(2)).unwrap();
        assert_eq!((r.hom_dim, r.proj_factoring_dim), (1, 1));
        let r = stable_hom0(&k0(2), &free(2)).unwrap();
        assert_eq!(r.stable_dim, 0);
    }

    #[test]
    fn omega_examples() {
        assert!(is_isomorphic_0(&omega_power(&k0(2), 1).unwrap(), &truncate(&free(2), 1)).unwrap());
        let m = random_module(ext(2), &BTreeMap::from([(0, 2), (1, 1)]), 9);
        let back = omega_power(&omega_power(&m, 1).unwrap(), -1).unwrap();
        assert!(is_isomorphic_0(&back, &strip_free_summands(&m).unwrap().core).unwrap());
        for i in -2..=2 {
            assert!(omega_power(&free(3), i).unwrap().is_zero());
        }
        let mut t = OmegaTower::new(&k0(2)).unwrap();
        t.fill(-2, 2).unwrap();
        assert_eq!(t.computed(2), &omega_power(&k0(2), 2).unwrap());
        assert_eq!(t.computed(-2), &omega_power(&k0(2), -2).unwrap());
    }

    #[test]
    fn tau_examples() {
        let t = tau(&k0(3), 1).unwrap();
        let gens = crate::homres::projective_cover(&t).unwrap().gens().to_vec();
        assert!(gens.iter().all(|&g| g == -1));
        assert_eq!(gens.len(), 6);
        assert!(tau(&free(3), 2).unwrap().is_zero());
        let t2 = tau(&k0(2), 2).unwrap();
        assert!(is_stably_isomorphic(&t2, &tau(&tau(&k0(2), 1).unwrap(), 1).unwrap()).unwrap());
        assert!(tau(&k0(2), 0).is_err());
    }

    #[test]
    fn serre_examples() {
        let s = serre_check(&k0(2), &k0(2), 0).unwrap();
        assert_eq!((s.lhs, s.rhs, s.equal), (1, 1, true));
        let s = serre_check(&free(2), &k0(2), 1).unwrap();
        assert_eq!((s.lhs, s.rhs), (0, 0));
        for m in -2..=2 {
            assert!(serre_check(&k0(3), &j1(3), m).unwrap().equal);
        }
    }

    #[test]
    fn stable_iso_examples() {
        let m = random_module(ext(2), &BTreeMap::from([(0, 2), (1, 2)]), 1);
        assert!(is_stably_isomorphic(&m, &direct_sum(&m, &free(2)).unwrap()).unwrap());
        assert!(!is_stably_isomorphic(&k0(2), &truncate(&free(2), 1)).unwrap());
        let back = omega_power(&omega_power(&k0(2), 1).unwrap(), -1).unwrap();
        assert!(is_stably_isomorphic(&back, &k0(2)).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(12))]

            #[test]
            fn serre_duality_dims(a in 1usize..3, b in 0usize..3, s1 in 0u64..300, s2 in 0u64..300, m in -2i32..=2) {
                let x = random_module(ext(2), &BTreeMap::from([(0, a), (1, b)]), s1);
                let y = random_module(ext(2), &BTreeMap::from([(0, b.max(1)), (1, a)]), s2);
                prop_assert!(serre_check(&x, &y, m).unwrap().equal);
            }

            #[test]
            fn stable_dim_invariant_under_strip_and_shift(a in 1usize..3, b in 0usize..3, s in 0u64..300, i in -2i32..=2) {
                let x = random_module(ext(2), &BTreeMap::from([(0, a), (1, b)]), s);
                let y = direct_sum(&j1(2), &free(2)).unwrap();
                let base = stable_hom0(&x, &y).unwrap().stable_dim;
                let xs = strip_free_summands(&x).unwrap().core;
                let ys = strip_free_summands(&y).unwrap().core;
                prop_assert_eq!(stable_hom0(&xs, &ys).unwrap().stable_dim, base);
                prop_assert_eq!(stable_hom0(&shift(&x, i), &shift(&y, i)).unwrap().stable_dim, base);
            }
        }
    }
}
