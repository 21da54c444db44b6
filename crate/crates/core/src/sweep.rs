//! Seeded batch runs of the splitting, vanishing and rigidity checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::corpus::linear_corpus;
use crate::error::{BggError, Result};
use crate::grmodule::{ext1_0, random_module, DegreewiseModule, ExtensionClass};
use crate::koszul::{koszul_dual, lemma11_check, lemma12_check, lemma14_check};
use crate::qlinalg::{Rat, RatMatrix};
use crate::stablecat::serre_check;

pub const SUITES: &[&str] = &["lemma14", "serre", "lemma11", "lemma12"];

/// Window top used for the symmetric side of the sweeps; stability is checked
/// against `SWEEP_HI + 2`.
pub const SWEEP_HI: usize = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    /// Instances where the checked statement applied and held.
    pub passed: usize,
    /// Instances outside the hypotheses.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

fn item_rng(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn collect(suite: &str, seed: u64, outcomes: Vec<Result<Outcome>>) -> Result<SweepReport> {
    let mut r = SweepReport {
        suite: suite.to_string(),
        seed,
        count: outcomes.len(),
        ..SweepReport::default()
    };
    for o in outcomes {
        match o? {
            Outcome::Pass => r.passed += 1,
            Outcome::Skip => r.skipped += 1,
            Outcome::Fail(w) => r.failures.push(w),
        }
    }
    Ok(r)
}

pub fn run_sweep(suite: &str, seed: u64, count: usize) -> Result<SweepReport> {
    match suite {
        "lemma14" => sweep_lemma14(seed, count),
        "serre" => sweep_serre(seed, count),
        "lemma11" => sweep_lemma11(seed, count),
        "lemma12" => sweep_lemma12(seed, count),
        other => Err(BggError::Input(format!("unknown suite {other:?}; known suites: {}", SUITES.join(", ")))),
    }
}

/// Random two-step modules with dims at most `(3, 3)` over 2 and 3 variables.
pub fn sweep_lemma14(seed: u64, count: usize) -> Result<SweepReport> {
    let outcomes = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, i);
            let nv = 2 + i % 2;
            let a = rng.random_range(1..=3);
            let b = rng.random_range(0..=3);
            let s: u64 = rng.random();
            let m = random_module(Algebra::twostep(nv), &BTreeMap::from([(0, a), (1, b)]), s);
            Ok(match lemma14_check(&m)?.label() {
                "verified" => Outcome::Pass,
                "hypothesis-not-met" => Outcome::Skip,
                _ => Outcome::Fail(format!("nvars={nv} dims=({a},{b}) module_seed={s}")),
            })
        })
        .collect();
    collect("lemma14", seed, outcomes)
}

fn random_exterior(rng: &mut ChaCha8Rng, nv: usize) -> DegreewiseModule {
    let mut profile = BTreeMap::new();
    for d in 0..=2 {
        profile.insert(d, rng.random_range(0..=2usize));
    }
    if profile.values().all(|n| *n == 0) {
        profile.insert(0, 1);
    }
    random_module(Algebra::exterior(nv), &profile, rng.random())
}

/// Random pairs of exterior modules over 2 and 3 variables, `m` in `[-2, 2]`.
pub fn sweep_serre(seed: u64, count: usize) -> Result<SweepReport> {
    let outcomes = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, i);
            let nv = 2 + i % 2;
            let x = random_exterior(&mut rng, nv);
            let y = random_exterior(&mut rng, nv);
            let m = rng.random_range(-2..=2);
            let c = serre_check(&x, &y, m)?;
            Ok(if c.equal {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("item={i} nvars={nv} m={m} lhs={} rhs={}", c.lhs, c.rhs))
            })
        })
        .collect();
    collect("serre", seed, outcomes)
}

/// Koszul duals of the linear corpus over 2 and 3 variables on the window `[0, hi]`.
pub fn linear_window_pool(hi: usize) -> Result<Vec<(String, DegreewiseModule)>> {
    let mut out = Vec::new();
    for nv in [2usize, 3] {
        for (name, m) in linear_corpus(nv)? {
            out.push((format!("E({name}),nvars={nv}"), koszul_dual(&m, hi)?.dual));
        }
    }
    Ok(out)
}

/// `phi_j[d] = A^N_j psi_d - psi_{d+1} A^M_j` for a random `psi: M -> N`.
fn random_coboundary(rng: &mut ChaCha8Rng, m: &DegreewiseModule, n: &DegreewiseModule) -> ExtensionClass {
    let (lo, hi) = (m.lo().min(n.lo()), m.hi().max(n.hi()));
    let psi: BTreeMap<i32, RatMatrix> = (lo..=hi)
        .map(|d| {
            let mut p = RatMatrix::zeros(n.dim(d), m.dim(d));
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    p.set(r, c, Rat::from_int(rng.random_range(-2..=2)));
                }
            }
            (d, p)
        })
        .collect();
    let mut cocycle = BTreeMap::new();
    for j in 0..m.nvars() {
        for d in lo..hi {
            let a = n.act(j, d).mul(&psi[&d]).sub(&psi[&(d + 1)].mul(&m.act(j, d)));
            if !a.is_zero() {
                cocycle.insert((j, d), a);
            }
        }
    }
    ExtensionClass::from_cocycle(cocycle)
}

/// Random cocycles (class combination plus coboundary) between modules of the
/// linear window pool.
pub fn sweep_lemma11(seed: u64, count: usize) -> Result<SweepReport> {
    let pool = linear_window_pool(SWEEP_HI)?;
    let mut pairs = Vec::new();
    for (a, (na, ma)) in pool.iter().enumerate() {
        for (b, (nb, mb)) in pool.iter().enumerate() {
            if ma.algebra() == mb.algebra() {
                let e = ext1_0(ma, mb)?;
                pairs.push((a, b, format!("{na} -> {nb}"), e));
            }
        }
    }
    let with_ext: Vec<usize> = (0..pairs.len()).filter(|p| pairs[*p].3.dim() > 0).collect();
    let outcomes = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, i);
            let p = if !with_ext.is_empty() && rng.random_bool(0.8) {
                with_ext[rng.random_range(0..with_ext.len())]
            } else {
                rng.random_range(0..pairs.len())
            };
            let (a, b, label, ext) = &pairs[p];
            let (m, n) = (&pool[*a].1, &pool[*b].1);
            let coeffs: Vec<Rat> = (0..ext.dim()).map(|_| Rat::from_int(rng.random_range(-2..=2))).collect();
            let class = ext.combine(&coeffs).add(&random_coboundary(&mut rng, m, n));
            let r = lemma11_check(m, n, &class)?;
            Ok(if r.agree {
                Outcome::Pass
            } else {
                Outcome::Fail(format!(
                    "item={i} pair={label:?} split_s={} split_gamma={}",
                    r.split_s, r.split_gamma
                ))
            })
        })
        .collect();
    collect("lemma11", seed, outcomes)
}

/// `(A, m, r)` with `A` from the linear window pool; the verdict must hold on
/// the windows `hi` and `hi + 2`.
pub fn sweep_lemma12(seed: u64, count: usize) -> Result<SweepReport> {
    let small = linear_window_pool(SWEEP_HI)?;
    let large = linear_window_pool(SWEEP_HI + 2)?;
    let outcomes = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, i);
            let p = rng.random_range(0..small.len());
            let m = rng.random_range(0..=2);
            let r = rng.random_range(1..=2usize);
            let a = lemma12_check(&small[p].1, m, r)?;
            let b = lemma12_check(&large[p].1, m, r)?;
            Ok(if a && b {
                Outcome::Pass
            } else {
                Outcome::Fail(format!("item={i} module={:?} m={m} r={r} hi={a} hi+2={b}", small[p].0))
            })
        })
        .collect();
    collect("lemma12", seed, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass_and_repeat() {
        for suite in SUITES {
            let a = run_sweep(suite, 3, 12).unwrap();
            assert!(a.ok(), "{suite}: {:?}", a.failures);
            assert_eq!(a.passed + a.skipped, 12);
            assert_eq!(run_sweep(suite, 3, 12).unwrap(), a);
        }
        assert!(run_sweep("bogus", 0, 1).is_err());
    }
}
