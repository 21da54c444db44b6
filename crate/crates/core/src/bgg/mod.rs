//! The BGG correspondence: `L_xi` complexes and the bundle test, the complex
//! `Phi(M)`, sheaf cohomology computed as stable Hom, and the rigidity,
//! vanishing and component checks built on them.

mod checks;
mod cohom;
mod lxi;
mod phi;

pub use checks::{
    ar_vanishing_check, component_scan, ArTranslates, rigidity_report, theorem15_check, theorem15_check_with, ArVanishingRow,
    ComponentVerdict, RigidityReport, Theorem15Verdict, CHECK_SEED, CHECK_TRIALS,
};
pub use cohom::{cohomology_table, cohomology_table_with, sheaf_module_for_twist, CohomologyTable, TwistModules};
pub use lxi::{
    homology_concentration, is_nice, lxi_homology, sample_points, sheaf_rank, Concentration, LxiHomology,
    NiceVerdict,
};
pub use phi::{phi_complex, PhiComplex, PhiTerm};

#[cfg(test)]
mod tests;
