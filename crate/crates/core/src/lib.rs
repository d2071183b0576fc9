//! Knot Floer complexes of (1,1)-knots, integer surgery mapping cones,
//! graded `F[U]`-modules with exact triangle calculus, and the intersection
//! lattices of blow-ups.

pub mod braid_diagram;
pub mod f2;
pub mod geom;
pub mod graded_modules;
pub mod knot_complex;
pub mod lattice;
pub mod surgery_cone;

pub use braid_diagram::{parse_knot, BraidWord, KnotSpec};
pub use graded_modules::{Deg, Flavor, GradedFUModule, Torsion};
pub use knot_complex::{build_cfk, FilteredComplex};
pub use surgery_cone::{surgery_homology, FlipMode};
