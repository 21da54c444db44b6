use std::collections::BTreeMap;
use std::fmt::Write;

use super::lxi::require_exterior;
use crate::error::{BggError, Result};
use crate::grmodule::DegreewiseModule;
use crate::qlinalg::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiTerm {
    pub position: i32,
    pub twist: i32,
    pub multiplicity: usize,
}

/// The complex with terms `O(i) (x) M_i` in position `i` and differential
/// `sum_j xi_j (x) A_j[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiComplex {
    pub nvars: usize,
    pub terms: Vec<PhiTerm>,
    /// Position `i` to the coefficient matrices `A_j[i]`, one per variable.
    pub differentials: BTreeMap<i32, Vec<RatMatrix>>,
}

impl PhiComplex {
    /// Coefficient of `xi_j xi_k` in `delta^{i+1} delta^i` vanishes for all `j <= k`.
    pub fn delta_squared_vanishes(&self) -> bool {
        for (i, a) in &self.differentials {
            let Some(b) = self.differentials.get(&(i + 1)) else { continue };
            for j in 0..self.nvars {
                if !b[j].mul(&a[j]).is_zero() {
                    return false;
                }
                for k in j + 1..self.nvars {
                    if !b[k].mul(&a[j]).add(&b[j].mul(&a[k])).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// One line per term, e.g. `0: O(0)^1`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.terms.is_empty() {
            out.push_str("zero\n");
        }
        for t in &self.terms {
            let _ = writeln!(out, "{}: O({})^{}", t.position, t.twist, t.multiplicity);
        }
        out
    }
}

pub fn phi_complex(m: &DegreewiseModule) -> Result<PhiComplex> {
    require_exterior(m)?;
    let terms: Vec<PhiTerm> = m
        .dims()
        .into_iter()
        .map(|(i, n)| PhiTerm {
            position: i,
            twist: i,
            multiplicity: n,
        })
        .collect();
    let mut differentials = BTreeMap::new();
    for i in m.degrees() {
        if m.dim(i) * m.dim(i + 1) == 0 {
            continue;
        }
        differentials.insert(i, (0..m.nvars()).map(|j| m.act(j, i).into_owned()).collect());
    }
    let phi = PhiComplex {
        nvars: m.nvars(),
        terms,
        differentials,
    };
    if !phi.delta_squared_vanishes() {
        return Err(BggError::Inconsistent("delta^2 != 0 for a validated module".into()));
    }
    Ok(phi)
}
