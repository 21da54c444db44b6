//! Named modules and seeded random generators for the checks and sweeps.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Algebra;
use crate::bgg::{is_nice, rigidity_report, sheaf_module_for_twist, sheaf_rank};
use crate::error::{BggError, Result};
use crate::grmodule::{
    construct_free, construct_simple, direct_sum, end0_is_local, ext1_0, hom0, random_module, shift,
    strip_free_summands, truncate, DegreewiseModule,
};
use crate::koszul::{is_gamma_projective, lemma14_check};
use crate::qlinalg::{Rat, RatMatrix};

pub const BUILTIN_NAMES: &[&str] = &[
    "simple:d",
    "free",
    "radical:p",
    "twistmod:t",
    "exterior-quotient:r",
    "nonsheaf-pair",
    "loewy2-rigid",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Bool(bool),
    Count(usize),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Bool(b) => write!(f, "{b}"),
            Expected::Count(n) => write!(f, "{n}"),
        }
    }
}

/// A named module with the properties it is expected to have. Every entry of
/// `expected` is recomputed by [`recompute`].
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub module: DegreewiseModule,
    pub expected: BTreeMap<&'static str, Expected>,
}

fn sheaf_expectations(nice: bool, rank: usize, end: usize, exceptional: bool) -> BTreeMap<&'static str, Expected> {
    BTreeMap::from([
        ("nice", Expected::Bool(nice)),
        ("rank", Expected::Count(rank)),
        ("end_stable_dim", Expected::Count(end)),
        ("exceptional", Expected::Bool(exceptional)),
    ])
}

fn parse_param(name: &str, prefix: &str) -> Result<Option<i32>> {
    match name.strip_prefix(prefix) {
        Some(rest) => rest
            .parse::<i32>()
            .map(Some)
            .map_err(|_| BggError::Input(format!("bad parameter in corpus name {name:?}"))),
        None => Ok(None),
    }
}

/// `R / (x_r, .., x_n)`, the exterior algebra on the first `r` variables.
pub fn exterior_quotient(algebra: Algebra, r: usize) -> DegreewiseModule {
    let sub = |d: i32| -> Vec<Vec<usize>> { algebra.monomials(d).into_iter().filter(|m| m.iter().all(|x| *x < r)).collect() };
    let mut dims = BTreeMap::new();
    let mut action = BTreeMap::new();
    for d in 0..=r as i32 {
        let src = sub(d);
        dims.insert(d, src.len());
        if d == r as i32 {
            continue;
        }
        let tgt = sub(d + 1);
        for j in 0..r {
            let mut m = RatMatrix::zeros(tgt.len(), src.len());
            for (c, mono) in src.iter().enumerate() {
                if let Some((sign, prod)) = algebra.mul_var(j, mono) {
                    let row = tgt.iter().position(|t| *t == prod).expect("product stays in the subalgebra");
                    m.set(row, c, Rat::from_int(sign));
                }
            }
            action.insert((j, d), m);
        }
    }
    DegreewiseModule::from_parts(algebra, (0, r as i32), &dims, action).expect("valid shapes")
}

/// The two-step module with `M_0 = Q^{nvars}`, `M_1 = Q` and `x_j` reading the
/// `j`-th coordinate.
pub fn loewy2_rigid(nvars: usize) -> DegreewiseModule {
    let algebra = Algebra::twostep(nvars);
    let dims = BTreeMap::from([(0, nvars), (1, 1)]);
    let action = (0..nvars)
        .map(|j| {
            let mut m = RatMatrix::zeros(1, nvars);
            m.set(0, j, Rat::from_int(1));
            ((j, 0), m)
        })
        .collect();
    DegreewiseModule::from_parts(algebra, (0, 1), &dims, action).expect("valid shapes")
}

pub fn builtin(name: &str, nvars: usize) -> Result<CorpusEntry> {
    if nvars < 2 {
        return Err(BggError::Input(format!("nvars must be at least 2, got {nvars}")));
    }
    let ext = Algebra::exterior(nvars);
    let n = nvars - 1;
    let k0 = construct_simple(ext, 0);
    let (module, expected) = if let Some(d) = parse_param(name, "simple:")? {
        (shift(&k0, d), sheaf_expectations(d == 0, 1, 1, true))
    } else if name == "free" {
        (construct_free(ext, &[0], None)?, sheaf_expectations(true, 0, 0, false))
    } else if let Some(p) = parse_param(name, "radical:")? {
        if p < 1 || p > nvars as i32 {
            return Err(BggError::Input(format!("radical power must be in 1..={nvars}, got {p}")));
        }
        let free = construct_free(ext, &[0], None)?;
        let rank = crate::algebra::binomial(n as u64, (p - 1) as u64) as usize;
        (shift(&truncate(&free, p), p), sheaf_expectations(true, rank, 1, true))
    } else if let Some(t) = parse_param(name, "twistmod:")? {
        (sheaf_module_for_twist(ext, t)?, sheaf_expectations(true, 1, 1, true))
    } else if let Some(r) = parse_param(name, "exterior-quotient:")? {
        if r < 1 || r > nvars as i32 {
            return Err(BggError::Input(format!("quotient rank must be in 1..={nvars}, got {r}")));
        }
        let m = exterior_quotient(ext, r as usize);
        let expected = BTreeMap::from([("linear", Expected::Bool(true))]);
        (m, expected)
    } else if name == "nonsheaf-pair" {
        (direct_sum(&k0, &shift(&k0, 1))?, sheaf_expectations(false, 2, 2, false))
    } else if name == "loewy2-rigid" {
        let expected = BTreeMap::from([
            ("indecomposable", Expected::Bool(true)),
            ("gamma_projective", Expected::Bool(false)),
            ("ext1_self", Expected::Count(0)),
            ("end_dim", Expected::Count(1)),
        ]);
        (loewy2_rigid(nvars), expected)
    } else {
        return Err(BggError::Input(format!(
            "unknown corpus name {name:?}; known names: {}",
            BUILTIN_NAMES.join(", ")
        )));
    };
    Ok(CorpusEntry {
        name: name.to_string(),
        module,
        expected,
    })
}

/// Recomputes every expected property: `(property, expected, actual)`.
pub fn recompute(entry: &CorpusEntry) -> Result<Vec<(&'static str, Expected, Expected)>> {
    let m = &entry.module;
    let mut out = Vec::new();
    for (&prop, &want) in &entry.expected {
        let got = match prop {
            "nice" => Expected::Bool(!is_nice(m, 8, 0)?.is_not_nice()),
            "rank" => Expected::Count(sheaf_rank(m, 8, 0)?),
            "end_stable_dim" => Expected::Count(rigidity_report(m, 0)?.end_stable_dim),
            "exceptional" => {
                let r = rigidity_report(m, m.algebra().n())?;
                Expected::Bool(r.indecomposable && r.end_stable_dim == 1 && r.ext_self_dims.values().all(|v| *v == 0))
            }
            "linear" => Expected::Bool(crate::homres::is_linear(m, 6)?.is_linear()),
            "indecomposable" => Expected::Bool(end0_is_local(m)?.indecomposable()),
            "gamma_projective" => Expected::Bool(is_gamma_projective(m)?),
            "ext1_self" => Expected::Count(ext1_0(m, m)?.dim()),
            "end_dim" => Expected::Count(hom0(m, m)?.dim()),
            other => return Err(BggError::Inconsistent(format!("no recomputation for property {other}"))),
        };
        out.push((prop, want, got));
    }
    if entry.name == "loewy2-rigid" && lemma14_check(m)?.label() != "verified" {
        return Err(BggError::Inconsistent("loewy2-rigid does not verify".into()));
    }
    Ok(out)
}

/// First stripped random exterior module with the given profile that passes
/// the niceness test. Attempt `a` uses the seed `seed + a`.
pub fn random_nice(nvars: usize, profile: &BTreeMap<i32, usize>, seed: u64, attempts: usize) -> Result<Option<DegreewiseModule>> {
    let ext = Algebra::exterior(nvars);
    for a in 0..attempts as u64 {
        let s = seed.wrapping_add(a);
        let m = strip_free_summands(&random_module(ext, profile, s))?.core;
        if m.is_zero() {
            continue;
        }
        if is_nice(&m, 8, s)?.is_certified() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The sheaf-side modules used by the harness sweeps: `k`, the twist modules
/// for `t` in `[-2, 2]` and random nice modules.
pub fn nice_corpus(nvars: usize, random_hits: usize, seed: u64) -> Result<Vec<(String, DegreewiseModule)>> {
    let ext = Algebra::exterior(nvars);
    let mut out = vec![("simple:0".to_string(), construct_simple(ext, 0))];
    for t in -2..=2 {
        if t != 0 {
            out.push((format!("twistmod:{t}"), sheaf_module_for_twist(ext, t)?));
        }
    }
    let profiles: Vec<BTreeMap<i32, usize>> = if nvars <= 3 {
        vec![BTreeMap::from([(0, 3), (1, 1)]), BTreeMap::from([(-1, 1), (0, 3)])]
    } else {
        vec![BTreeMap::from([(0, 4), (1, 1)]), BTreeMap::from([(-1, 1), (0, 4)])]
    };
    let mut hits = 0;
    let mut s = seed;
    let mut tries = 0;
    while hits < random_hits && tries < 8 * random_hits.max(1) {
        let profile = &profiles[tries % profiles.len()];
        tries += 1;
        if let Some(m) = random_nice(nvars, profile, s, 16)? {
            out.push((format!("random-nice:{s}"), m));
            hits += 1;
        }
        s = s.wrapping_add(1000);
    }
    Ok(out)
}

/// Linear exterior modules generated in degree 0, used on the Koszul side.
pub fn linear_corpus(nvars: usize) -> Result<Vec<(String, DegreewiseModule)>> {
    let mut out = Vec::new();
    for name in ["simple:0", "free", "radical:1", "radical:2", "twistmod:-2"] {
        out.push((name.to_string(), builtin(name, nvars)?.module));
    }
    for r in 1..nvars {
        let name = format!("exterior-quotient:{r}");
        out.push((name.clone(), builtin(&name, nvars)?.module));
    }
    Ok(out)
}
