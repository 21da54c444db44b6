//! Koszul duality between linear exterior modules and windowed symmetric
//! modules, reduction modulo `J^2`, and the splitting and rigidity checks for
//! linear modules.

mod dual;
mod lemmas;

pub use dual::{duality_hom_check, gamma_reduce, inverse_dual, koszul_dual, DualityCertificate, DualityHomReport};
pub use lemmas::{
    is_gamma_projective, lemma11_check, lemma12_check, lemma13_check, lemma14_check, Lemma13Verdict,
    Lemma14Verdict, SplitComparison,
};
