use std::collections::BTreeMap;

use super::dual::gamma_reduce;
use crate::algebra::AlgebraKind;
use crate::error::{BggError, Result};
use crate::grmodule::{
    construct_free, direct_sum, end0_is_local, ext1_0, hom0, is_isomorphic_0, truncate,
    DegreewiseModule, ExtensionClass,
};
use crate::homres::projective_cover;

fn require_kind(m: &DegreewiseModule, kind: AlgebraKind) -> Result<()> {
    if m.kind() != kind {
        return Err(BggError::KindMismatch(format!("needs a {kind} module, got {}", m.kind())));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitComparison {
    pub split_s: bool,
    pub split_gamma: bool,
    pub agree: bool,
}

/// Compares splitting of `0 -> N -> E -> M -> 0` over the window with
/// splitting of its reduction modulo `J^2`. Both modules must be generated in
/// one common degree `g`; the reduced class keeps the cocycle out of degree `g`.
pub fn lemma11_check(m: &DegreewiseModule, n: &DegreewiseModule, class: &ExtensionClass) -> Result<SplitComparison> {
    require_kind(m, AlgebraKind::Symmetric)?;
    require_kind(n, AlgebraKind::Symmetric)?;
    let ext_s = ext1_0(m, n)?;
    if !class.is_cocycle(m, n) {
        return Err(BggError::Input("class is not a cocycle".into()));
    }
    let split_s = ext_s.is_trivial(class);
    let gm = gamma_reduce(m)?;
    let gn = gamma_reduce(n)?;
    let split_gamma = match (gm.support(), gn.support()) {
        (Some((g, _)), Some((h, _))) if g != h => {
            return Err(BggError::Input(format!("generation degrees differ: {g} vs {h}")));
        }
        (Some((g, _)), Some(_)) => {
            let reduced: BTreeMap<(usize, i32), _> = class
                .cocycle()
                .iter()
                .filter(|((_, d), _)| *d == g)
                .map(|(k, v)| (*k, v.clone()))
                .collect();
            let reduced = ExtensionClass::from_cocycle(reduced);
            ext1_0(&gm, &gn)?.is_trivial(&reduced)
        }
        _ => true,
    };
    Ok(SplitComparison {
        split_s,
        split_gamma,
        agree: split_s == split_gamma,
    })
}

/// `Ext^1(k(-m)^r, A)_0 = 0` on the window of `A`.
pub fn lemma12_check(a: &DegreewiseModule, m: i32, r: usize) -> Result<bool> {
    require_kind(a, AlgebraKind::Symmetric)?;
    if m < 0 {
        return Err(BggError::Input(format!("degree m must be >= 0, got {m}")));
    }
    if m > a.hi() {
        return Ok(true);
    }
    let simple = DegreewiseModule::from_parts(a.algebra(), (m.min(a.lo()), a.hi()), &BTreeMap::from([(m, 1)]), BTreeMap::new())?;
    let mut c = simple.clone();
    for _ in 1..r {
        c = direct_sum(&c, &simple)?;
    }
    Ok(ext1_0(&c, a)?.dim() == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma13Verdict {
    Verified { a: usize, b: usize },
    HypothesisFails { a: usize, b: usize },
    ConclusionFails { a: usize, b: usize },
}

impl Lemma13Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Lemma13Verdict::Verified { .. } => "verified",
            Lemma13Verdict::HypothesisFails { .. } => "hypothesis-fails",
            Lemma13Verdict::ConclusionFails { .. } => "conclusion-fails",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Lemma13Verdict::ConclusionFails { .. })
    }
}

/// `a = dim Ext^1(C_{>=i}, C)_0`, `b = dim Ext^1(C_{>=i}, C_{>=i})_0`; the
/// conclusion fails only when `a = 0` and `b != 0`.
pub fn lemma13_check(c: &DegreewiseModule, i: i32) -> Result<Lemma13Verdict> {
    require_kind(c, AlgebraKind::Symmetric)?;
    if i < 1 {
        return Err(BggError::Input(format!("truncation index must be >= 1, got {i}")));
    }
    let t = truncate(c, i);
    let a = ext1_0(&t, c)?.dim();
    let b = ext1_0(&t, &t)?.dim();
    Ok(if a == 0 && b != 0 {
        Lemma13Verdict::ConclusionFails { a, b }
    } else if a != 0 {
        Lemma13Verdict::HypothesisFails { a, b }
    } else {
        Lemma13Verdict::Verified { a, b }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma14Verdict {
    Verified,
    HypothesisNotMet { reason: String },
    ConclusionFails { end_dim: usize },
}

impl Lemma14Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Lemma14Verdict::Verified => "verified",
            Lemma14Verdict::HypothesisNotMet { .. } => "hypothesis-not-met",
            Lemma14Verdict::ConclusionFails { .. } => "conclusion-fails",
        }
    }
}

/// A Gamma-module is projective iff it is isomorphic to the free module on
/// the generators of its cover.
pub fn is_gamma_projective(m: &DegreewiseModule) -> Result<bool> {
    require_kind(m, AlgebraKind::TwoStep)?;
    let cover = projective_cover(m)?;
    let free = construct_free(m.algebra(), cover.gens(), None)?;
    is_isomorphic_0(&free, m)
}

/// Indecomposable non-projective rigid Gamma-modules have `End_0` of dimension 1.
pub fn lemma14_check(m: &DegreewiseModule) -> Result<Lemma14Verdict> {
    require_kind(m, AlgebraKind::TwoStep)?;
    let not_met = |reason: &str| Ok(Lemma14Verdict::HypothesisNotMet { reason: reason.into() });
    if m.is_zero() {
        return not_met("zero module");
    }
    let e = end0_is_local(m)?;
    if !e.indecomposable() {
        return not_met("decomposable");
    }
    if e.residue_dim > 1 {
        return not_met("field caveat: residue algebra of dimension > 1");
    }
    if is_gamma_projective(m)? {
        return not_met("projective");
    }
    if ext1_0(m, m)?.dim() != 0 {
        return not_met("has self-extensions");
    }
    let end_dim = hom0(m, m)?.dim();
    Ok(if end_dim == 1 {
        Lemma14Verdict::Verified
    } else {
        Lemma14Verdict::ConclusionFails { end_dim }
    })
}
