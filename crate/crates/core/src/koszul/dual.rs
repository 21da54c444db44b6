use std::collections::BTreeMap;

use crate::algebra::{Algebra, AlgebraKind};
use crate::error::{BggError, Result};
use crate::grmodule::{hom0, is_isomorphic_0, shift, strip_free_summands, validate, DegreewiseModule};
use crate::homres::{is_linear, resolve, single_generator_degree, Linearity};
use crate::qlinalg::RatMatrix;

/// The Koszul dual of a linear exterior module, with a round-trip check.
#[derive(Clone, Debug)]
pub struct DualityCertificate {
    /// The source shifted so that it is generated in degree 0.
    pub source: DegreewiseModule,
    /// Symmetric-kind module on the window `[0, hi]`.
    pub dual: DegreewiseModule,
    pub round_trip_ok: bool,
}

/// Reads the linear strand of a minimal resolution of `m` (generated in degree
/// 0) into a module over `target`: piece `j` has dimension `rank P_j` and the
/// `t`-th variable acts from `j` to `j+1` by the transpose of the coefficient
/// matrix of `x_t` in the differential `P_{j+1} -> P_j`.
fn linear_strand_dual(m: &DegreewiseModule, length: usize, target: Algebra, window: (i32, i32)) -> Result<DegreewiseModule> {
    let res = resolve(m, length)?;
    let mut dims = BTreeMap::new();
    for j in 0..=length {
        let gens = res.generator_degrees(j);
        if let Some(g) = gens.iter().find(|g| **g != j as i32) {
            return Err(BggError::NotLinear {
                row: j,
                degree: *g,
                value: gens.iter().filter(|h| *h == g).count(),
            });
        }
        dims.insert(j as i32, gens.len());
    }
    let mut action = BTreeMap::new();
    for j in 0..length {
        let cs = res.linear_coefficients(j)?;
        for (t, c) in cs.iter().enumerate() {
            let a: RatMatrix = c.transpose();
            if !a.is_zero() {
                action.insert((t, j as i32), a);
            }
        }
    }
    let out = DegreewiseModule::from_parts(target, window, &dims, action)?;
    validate(&out).map_err(|v| BggError::Inconsistent(format!("dual module fails its relations: {v}")))?;
    Ok(out)
}

/// Shifts a module generated in a single degree so that it is generated in 0.
fn normalize_generation(m: &DegreewiseModule) -> Result<DegreewiseModule> {
    match single_generator_degree(m)? {
        Some(g) => Ok(shift(m, g)),
        None => Ok(m.clone()),
    }
}

/// `E(M)` on the window `[0, hi]`.
pub fn koszul_dual(m: &DegreewiseModule, hi: usize) -> Result<DualityCertificate> {
    if m.kind() != AlgebraKind::Exterior {
        return Err(BggError::KindMismatch(format!("needs an exterior module, got {}", m.kind())));
    }
    let source = normalize_generation(m)?;
    if let Linearity::NotLinear { row, degree, value } = is_linear(&source, hi + 2)? {
        return Err(BggError::NotLinear { row, degree, value });
    }
    let sym = m.algebra().with_kind(AlgebraKind::Symmetric);
    let dual = linear_strand_dual(&source, hi, sym, (0, hi as i32))?;
    let round_trip_ok = match inverse_dual(&dual) {
        Ok(back) => {
            let a = strip_free_summands(&back)?.core;
            let b = strip_free_summands(&source)?.core;
            is_isomorphic_0(&a, &b)?
        }
        Err(_) => false,
    };
    Ok(DualityCertificate {
        source,
        dual,
        round_trip_ok,
    })
}

/// The same construction applied to a windowed symmetric module generated in
/// degree 0, resolved as far as the window allows.
pub fn inverse_dual(x: &DegreewiseModule) -> Result<DegreewiseModule> {
    if x.kind() != AlgebraKind::Symmetric {
        return Err(BggError::KindMismatch(format!("needs a symmetric module, got {}", x.kind())));
    }
    let x = match single_generator_degree(x)? {
        Some(0) | None => x.clone(),
        Some(g) => return Err(BggError::Input(format!("generated in degree {g}, expected 0"))),
    };
    let length = x.hi().max(0) as usize;
    let ext = x.algebra().with_kind(AlgebraKind::Exterior);
    linear_strand_dual(&x, length, ext, (0, length as i32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityHomReport {
    /// `dim Hom(M, N)_0` over the exterior algebra.
    pub lhs: usize,
    /// `dim Hom(E(N), E(M))_0` on the window `[0, hi]`.
    pub rhs: usize,
    /// `dim Hom(E(M), E(N))_0`, for comparison with the covariant reading.
    pub rhs_covariant: usize,
    /// `rhs` recomputed on the window `[0, hi + 2]`.
    pub rhs_rerun: usize,
    pub equal: bool,
}

pub fn duality_hom_check(m: &DegreewiseModule, n: &DegreewiseModule, hi: usize) -> Result<DualityHomReport> {
    let em = koszul_dual(m, hi)?;
    let en = koszul_dual(n, hi)?;
    let lhs = hom0(&em.source, &en.source)?.dim();
    let rhs = hom0(&en.dual, &em.dual)?.dim();
    let rhs_covariant = hom0(&em.dual, &en.dual)?.dim();
    let em2 = koszul_dual(m, hi + 2)?;
    let en2 = koszul_dual(n, hi + 2)?;
    let rhs_rerun = hom0(&en2.dual, &em2.dual)?.dim();
    Ok(DualityHomReport {
        lhs,
        rhs,
        rhs_covariant,
        rhs_rerun,
        equal: lhs == rhs && rhs == rhs_rerun,
    })
}

/// `X / J^2 X` for a windowed symmetric module generated in one degree `g`:
/// the pieces `X_g`, `X_{g+1}` as a two-step module.
pub fn gamma_reduce(x: &DegreewiseModule) -> Result<DegreewiseModule> {
    if x.kind() != AlgebraKind::Symmetric {
        return Err(BggError::KindMismatch(format!("needs a symmetric module, got {}", x.kind())));
    }
    let gamma = x.algebra().with_kind(AlgebraKind::TwoStep);
    let g = match single_generator_degree(x) {
        Ok(Some(g)) => g,
        Ok(None) => return Ok(DegreewiseModule::zero(gamma)),
        Err(BggError::NotSingleDegree(gens)) => {
            return Err(BggError::Input(format!("not generated in one degree: generators in {gens:?}")))
        }
        Err(e) => return Err(e),
    };
    let dims = BTreeMap::from([(g, x.dim(g)), (g + 1, x.dim(g + 1))]);
    let action = (0..x.nvars())
        .map(|j| ((j, g), x.act(j, g).into_owned()))
        .filter(|(_, a)| !a.is_zero())
        .collect();
    DegreewiseModule::from_parts(gamma, (g, g + 1), &dims, action)
}
