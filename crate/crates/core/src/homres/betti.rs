use std::collections::BTreeMap;
use std::fmt::Write;

use super::resolve;
use crate::error::{BggError, Result};
use crate::grmodule::DegreewiseModule;

/// Graded Betti numbers `beta_{i,j}` for `i <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub bound: usize,
    entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn from_generator_degrees(rows: &[Vec<i32>]) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, gens) in rows.iter().enumerate() {
            for g in gens {
                *entries.entry((i, *g)).or_insert(0) += 1;
            }
        }
        BettiTable {
            bound: rows.len().saturating_sub(1),
            entries,
        }
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries keyed by `(i, j)`.
    pub fn entries(&self) -> &BTreeMap<(usize, i32), usize> {
        &self.entries
    }

    /// Total rank of the `i`-th free module.
    pub fn rank(&self, i: usize) -> usize {
        self.entries.iter().filter(|((r, _), _)| *r == i).map(|(_, n)| n).sum()
    }

    /// Grid with columns `i` and rows `j - i`, as printed by Macaulay2.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.entries.is_empty() {
            out.push_str("zero\n");
            return out;
        }
        let lo = self.entries.keys().map(|(i, j)| j - *i as i32).min().unwrap_or(0);
        let hi = self.entries.keys().map(|(i, j)| j - *i as i32).max().unwrap_or(0);
        let width = self
            .entries
            .values()
            .map(|n| n.to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.bound.to_string().len());
        let _ = write!(out, "{:>6}", "");
        for i in 0..=self.bound {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        for r in lo..=hi {
            let _ = write!(out, "{:>5}:", r);
            for i in 0..=self.bound {
                let n = self.get(i, r + i as i32);
                if n == 0 {
                    let _ = write!(out, " {:>width$}", ".");
                } else {
                    let _ = write!(out, " {n:>width$}");
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn betti_table(m: &DegreewiseModule, bound: usize) -> Result<BettiTable> {
    let res = resolve(m, bound)?;
    let rows: Vec<Vec<i32>> = (0..=bound).map(|i| res.generator_degrees(i).to_vec()).collect();
    Ok(BettiTable::from_generator_degrees(&rows))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Linearity {
    LinearThroughBound,
    /// First entry `beta_{row, degree} != 0` off the diagonal, with degrees
    /// normalized so the generators sit in degree 0.
    NotLinear { row: usize, degree: i32, value: usize },
}

impl Linearity {
    pub fn is_linear(&self) -> bool {
        matches!(self, Linearity::LinearThroughBound)
    }
}

/// Generator degree of a module generated in one degree.
pub fn single_generator_degree(m: &DegreewiseModule) -> Result<Option<i32>> {
    let cover = super::projective_cover(m)?;
    let mut gens: Vec<i32> = cover.gens().to_vec();
    gens.dedup();
    match gens.len() {
        0 => Ok(None),
        1 => Ok(Some(gens[0])),
        _ => Err(BggError::NotSingleDegree(gens)),
    }
}

pub fn is_linear(m: &DegreewiseModule, bound: usize) -> Result<Linearity> {
    let Some(g) = single_generator_degree(m)? else {
        return Ok(Linearity::LinearThroughBound);
    };
    let t = betti_table(m, bound)?;
    for (&(i, j), &n) in t.entries() {
        if j - g != i as i32 {
            return Ok(Linearity::NotLinear {
                row: i,
                degree: j - g,
                value: n,
            });
        }
    }
    Ok(Linearity::LinearThroughBound)
}
