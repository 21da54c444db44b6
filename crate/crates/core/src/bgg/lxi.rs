use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraKind;
use crate::error::{BggError, Result};
use crate::grmodule::DegreewiseModule;
use crate::qlinalg::{Rat, RatMatrix};

/// Homology of the complex `... -> M_i -> M_{i+1} -> ...` with maps
/// `sum_j xi_j x_j`. Only nonzero dimensions are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LxiHomology {
    pub xi: Vec<Rat>,
    pub dims: BTreeMap<i32, usize>,
}

impl LxiHomology {
    pub fn dim(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// The single degree carrying homology, if there is exactly one.
    pub fn concentrated_in(&self) -> Option<i32> {
        (self.dims.len() == 1).then(|| *self.dims.keys().next().expect("one entry"))
    }

    pub fn euler(&self) -> i64 {
        self.dims.iter().map(|(i, n)| if i % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum()
    }
}

pub(crate) fn require_exterior(m: &DegreewiseModule) -> Result<()> {
    if m.kind() != AlgebraKind::Exterior {
        return Err(BggError::KindMismatch(format!("needs an exterior module, got {}", m.kind())));
    }
    Ok(())
}

pub fn lxi_homology(m: &DegreewiseModule, xi: &[Rat]) -> Result<LxiHomology> {
    require_exterior(m)?;
    if xi.len() != m.nvars() {
        return Err(BggError::Input(format!("xi needs {} coordinates, got {}", m.nvars(), xi.len())));
    }
    if xi.iter().all(Rat::is_zero) {
        return Err(BggError::Input("xi must be nonzero".into()));
    }
    let ranks: BTreeMap<i32, usize> = m.degrees().map(|d| (d, m.act_linear_form(xi, d).rank())).collect();
    let mut dims = BTreeMap::new();
    for d in m.degrees() {
        let h = m.dim(d) - ranks[&d] - ranks.get(&(d - 1)).copied().unwrap_or(0);
        if h > 0 {
            dims.insert(d, h);
        }
    }
    Ok(LxiHomology { xi: xi.to_vec(), dims })
}

/// Verdict of the randomized niceness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceVerdict {
    /// `H_i(L_xi M) = 0` for `i != 0` at every sampled point.
    NiceCertifiedRandomized { samples: usize },
    NotNice { witness: Vec<Rat>, degree: i32 },
    /// Only the deterministic points were sampled (`trials = 0`) and passed.
    Inconclusive { samples: usize },
}

impl NiceVerdict {
    pub fn is_not_nice(&self) -> bool {
        matches!(self, NiceVerdict::NotNice { .. })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, NiceVerdict::NiceCertifiedRandomized { .. })
    }
}

/// Sample points for the niceness and rank tests: coordinate points, pairwise
/// sums, points where some basis vector becomes a cycle or some dual basis
/// vector a cocycle (these find rank drops), then `trials` random points.
pub fn sample_points(m: &DegreewiseModule, trials: usize, seed: u64) -> Vec<Vec<Rat>> {
    let nv = m.nvars();
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |v: Vec<Rat>, out: &mut Vec<Vec<Rat>>| {
        if v.iter().any(|x| !x.is_zero()) && seen.insert(v.clone()) {
            out.push(v);
        }
    };
    let unit = |j: usize| -> Vec<Rat> { (0..nv).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect() };
    for j in 0..nv {
        push(unit(j), &mut out);
    }
    for j in 0..nv {
        for k in j + 1..nv {
            let v = (0..nv).map(|i| if i == j || i == k { Rat::one() } else { Rat::zero() }).collect();
            push(v, &mut out);
        }
    }
    let mut special = 0;
    'special: for d in m.degrees() {
        let (src, tgt) = (m.dim(d), m.dim(d + 1));
        if src * tgt == 0 {
            continue;
        }
        let acts: Vec<RatMatrix> = (0..nv).map(|j| m.act(j, d).into_owned()).collect();
        let mut systems = Vec::new();
        for c in 0..src {
            let cols: Vec<Vec<Rat>> = acts.iter().map(|a| a.col(c)).collect();
            systems.push(RatMatrix::from_dense_cols(tgt, &cols));
        }
        for r in 0..tgt {
            let cols: Vec<Vec<Rat>> = acts.iter().map(|a| a.row(r).to_vec()).collect();
            systems.push(RatMatrix::from_dense_cols(src, &cols));
        }
        for s in systems {
            let k = s.kernel();
            if k.dim() == 0 || k.dim() == nv {
                continue;
            }
            for v in k.basis_dense() {
                push(v, &mut out);
                special += 1;
                if special >= 64 {
                    break 'special;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < trials {
        let v: Vec<Rat> = (0..nv).map(|_| Rat::from_int(rng.random_range(-10..=10))).collect();
        if v.iter().all(Rat::is_zero) {
            continue;
        }
        push(v, &mut out);
        added += 1;
    }
    out
}

pub fn is_nice(m: &DegreewiseModule, trials: usize, seed: u64) -> Result<NiceVerdict> {
    require_exterior(m)?;
    let pts = sample_points(m, trials, seed);
    for xi in &pts {
        let h = lxi_homology(m, xi)?;
        if let Some((&d, _)) = h.dims.iter().find(|(d, _)| **d != 0) {
            return Ok(NiceVerdict::NotNice {
                witness: xi.clone(),
                degree: d,
            });
        }
    }
    Ok(if trials == 0 {
        NiceVerdict::Inconclusive { samples: pts.len() }
    } else {
        NiceVerdict::NiceCertifiedRandomized { samples: pts.len() }
    })
}

/// Where the `L_xi` homology lives across all sample points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Concentration {
    /// Every sample has homology only in this degree (or none at all).
    Single(Option<i32>),
    Spread { witness: Vec<Rat>, degrees: Vec<i32> },
}

pub fn homology_concentration(m: &DegreewiseModule, trials: usize, seed: u64) -> Result<Concentration> {
    require_exterior(m)?;
    let mut deg: Option<i32> = None;
    for xi in sample_points(m, trials, seed) {
        let h = lxi_homology(m, &xi)?;
        let degrees: Vec<i32> = h.dims.keys().copied().collect();
        let spread = match (degrees.as_slice(), deg) {
            ([], _) => false,
            ([d], None) => {
                deg = Some(*d);
                false
            }
            ([d], Some(e)) => *d != e,
            _ => true,
        };
        if spread {
            let mut degrees = degrees;
            if let Some(e) = deg {
                degrees.push(e);
            }
            degrees.sort_unstable();
            degrees.dedup();
            return Ok(Concentration::Spread { witness: xi, degrees });
        }
    }
    Ok(Concentration::Single(deg))
}

/// Total `L_xi` homology, asserted constant over the samples. For a nice
/// module this is `dim H_0`, the rank of the bundle.
pub fn sheaf_rank(m: &DegreewiseModule, trials: usize, seed: u64) -> Result<usize> {
    require_exterior(m)?;
    let mut rank: Option<usize> = None;
    for xi in sample_points(m, trials, seed) {
        let t = lxi_homology(m, &xi)?.total();
        match rank {
            None => rank = Some(t),
            Some(r) if r != t => return Err(BggError::NotABundle { first: r, other: t }),
            _ => {}
        }
    }
    Ok(rank.unwrap_or(0))
}
