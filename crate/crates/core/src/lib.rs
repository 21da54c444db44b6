//! Exact homological algebra over the exterior algebra, the polynomial ring
//! and the two-step algebra: graded modules, resolutions, the stable
//! category, Koszul duality and the BGG correspondence.

pub mod algebra;
pub mod bgg;
pub mod corpus;
pub mod error;
pub mod grmodule;
pub mod homres;
pub mod koszul;
pub mod modfile;
pub mod qlinalg;
pub mod stablecat;
pub mod sweep;

pub use algebra::{Algebra, AlgebraKind};
pub use error::{BggError, Result};
pub use grmodule::{DegreewiseModule, ExtensionClass, GradedMap};
pub use qlinalg::{Rat, RatMatrix, Subspace};
