use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::lxi::require_exterior;
use crate::algebra::{line_bundle_euler, Algebra};
use crate::error::{BggError, Result};
use crate::grmodule::{construct_simple, shift, DegreewiseModule};
use crate::homres::InjectiveEnvelope;
use crate::stablecat::{stable_hom0_with, OmegaTower};

/// `Omega^{-t}(k(-t))`, the module with `Phi = O(t)`.
pub fn sheaf_module_for_twist(algebra: Algebra, t: i32) -> Result<DegreewiseModule> {
    TwistModules::new(algebra)?.module(t).map(|e| e.0.clone())
}

/// Cache of the modules of `O(t)` and their injective envelopes. Since Omega
/// commutes with shifts, `Omega^{-t}(k(-t)) = (Omega^{-t} k)(-t)` comes from
/// one tower of `k`.
pub struct TwistModules {
    algebra: Algebra,
    tower: Mutex<OmegaTower>,
    cache: Mutex<BTreeMap<i32, Arc<(DegreewiseModule, InjectiveEnvelope)>>>,
}

impl TwistModules {
    pub fn new(algebra: Algebra) -> Result<TwistModules> {
        let k = construct_simple(algebra, 0);
        Ok(TwistModules {
            algebra,
            tower: Mutex::new(OmegaTower::new(&k)?),
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn module(&self, t: i32) -> Result<Arc<(DegreewiseModule, InjectiveEnvelope)>> {
        if let Some(e) = self.cache.lock().expect("cache lock").get(&t) {
            return Ok(e.clone());
        }
        let base = self.tower.lock().expect("tower lock").get(-t)?.clone();
        let m = shift(&base, -t);
        let env = InjectiveEnvelope::new(&m)?;
        let e = Arc::new((m, env));
        self.cache.lock().expect("cache lock").insert(t, e.clone());
        Ok(e)
    }
}

/// `h^q(Phi(M)(d))` over a window of `(q, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub n: usize,
    pub qrange: (i32, i32),
    pub drange: (i32, i32),
    pub grid: BTreeMap<(i32, i32), usize>,
}

impl CohomologyTable {
    pub fn get(&self, q: i32, d: i32) -> usize {
        self.grid.get(&(q, d)).copied().unwrap_or(0)
    }

    /// Rows `q` descending, columns `d` ascending; zeros print as `.`.
    pub fn render(&self) -> String {
        let (qlo, qhi) = self.qrange;
        let (dlo, dhi) = self.drange;
        let width = self
            .grid
            .values()
            .map(|v| v.to_string().len())
            .chain((dlo..=dhi).map(|d| d.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for q in (qlo..=qhi).rev() {
            let _ = write!(out, "q={q:<3}|");
            for d in dlo..=dhi {
                match self.get(q, d) {
                    0 => {
                        let _ = write!(out, " {:>width$}", ".");
                    }
                    v => {
                        let _ = write!(out, " {v:>width$}");
                    }
                }
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>6}", "d");
        for d in dlo..=dhi {
            let _ = write!(out, " {d:>width$}");
        }
        out.push('\n');
        out
    }

    /// One `h q d value` line per grid cell.
    pub fn machine_lines(&self) -> Vec<String> {
        let (qlo, qhi) = self.qrange;
        let (dlo, dhi) = self.drange;
        let mut out = Vec::new();
        for q in (qlo..=qhi).rev() {
            for d in dlo..=dhi {
                out.push(format!("h {q} {d} {}", self.get(q, d)));
            }
        }
        out
    }
}

pub fn cohomology_table(m: &DegreewiseModule, drange: (i32, i32), qrange: (i32, i32)) -> Result<CohomologyTable> {
    let twists = TwistModules::new(m.algebra())?;
    cohomology_table_with(&twists, m, drange, qrange)
}

/// As [`cohomology_table`] reusing cached twist modules. The Euler identity is
/// checked for every `d` over the full range of `q` where `Phi(M)(d)` can have
/// hypercohomology, `[lo(M), hi(M) + n]`.
pub fn cohomology_table_with(
    twists: &TwistModules,
    m: &DegreewiseModule,
    drange: (i32, i32),
    qrange: (i32, i32),
) -> Result<CohomologyTable> {
    require_exterior(m)?;
    if twists.algebra() != m.algebra() {
        return Err(BggError::KindMismatch(format!("{} vs {}", twists.algebra(), m.algebra())));
    }
    if drange.0 > drange.1 || qrange.0 > qrange.1 {
        return Err(BggError::Input("empty cohomology window".into()));
    }
    let n = m.algebra().n();
    let (qall_lo, qall_hi) = match m.support() {
        Some((lo, hi)) => (lo, hi + n as i32),
        None => (0, -1),
    };
    let qlo = qrange.0.min(qall_lo);
    let qhi = qrange.1.max(qall_hi);
    let mut tower = OmegaTower::new(m)?;
    tower.fill(-qhi, -qlo)?;
    let ds: Vec<i32> = (drange.0..=drange.1).collect();
    let envs: Vec<Arc<(DegreewiseModule, InjectiveEnvelope)>> =
        ds.par_iter().map(|d| twists.module(-d)).collect::<Result<_>>()?;
    let cells: Vec<(i32, usize)> = (qlo..=qhi).flat_map(|q| (0..ds.len()).map(move |i| (q, i))).collect();
    let values: Vec<usize> = cells
        .par_iter()
        .map(|&(q, i)| {
            let target = tower.computed(-q);
            if q < qall_lo || q > qall_hi || target.is_zero() {
                return Ok(0);
            }
            let (src, env) = &*envs[i];
            Ok(stable_hom0_with(env, src, target)?.stable_dim)
        })
        .collect::<Result<_>>()?;
    let mut full = BTreeMap::new();
    for ((q, i), v) in cells.into_iter().zip(values) {
        full.insert((q, ds[i]), v);
    }
    for &d in &ds {
        let lhs: i64 = (qlo..=qhi)
            .map(|q| {
                let v = full[&(q, d)] as i64;
                if q.rem_euclid(2) == 0 { v } else { -v }
            })
            .sum();
        let rhs: i64 = m
            .dims()
            .into_iter()
            .map(|(i, dim)| {
                let c = dim as i64 * line_bundle_euler((i + d) as i64, n);
                if i.rem_euclid(2) == 0 { c } else { -c }
            })
            .sum();
        if lhs != rhs {
            return Err(BggError::Inconsistent(format!(
                "Euler characteristic mismatch at d={d}: cohomology gives {lhs}, terms give {rhs}"
            )));
        }
    }
    let grid = full
        .into_iter()
        .filter(|((q, _), v)| *v > 0 && (qrange.0..=qrange.1).contains(q))
        .collect();
    Ok(CohomologyTable { n, qrange, drange, grid })
}
