//! Graded modules over `F[U]` and the exact triangle calculus.

pub mod chain;
pub mod involution;
pub mod lemma;
pub mod module;
pub mod triangle;

pub use chain::{DegreeHomology, FiniteComplex, Homology};
pub use involution::{cork_obstruction, involution_check, InvolutionAction, InvolutionError, InvolutionReport};
pub use lemma::{random_lemma_trials, random_short_exact, verify_lemma_on_cone, Family, FreeComplex, LemmaReport, LemmaStats};
pub use module::{assemble, deg, Deg, Flavor, GradedFUModule, ModuleError, Torsion};
pub use triangle::{tower_pattern, triangle_deduce, TriangleConclusion, TriangleData, TriangleError};
