//! Knot Floer complexes of (1,1)-knots from lifted genus one diagrams.

pub mod complex;
pub mod domains;

pub use complex::{Arrow, ComplexError, FilteredComplex, KnotGenerator};
pub use domains::{all_domains, complex_from_diagram, domain, find_bigons, normalize_gradings, Bigon, Domain};

use thiserror::Error;

use crate::braid_diagram::{knot_diagram, lift, Conventions, DiagramError, KnotSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `CFK^infinity` of `K(epsilon, sigma)` with the given diagram conventions.
pub fn build_cfk_with(conv: &Conventions, spec: &KnotSpec) -> Result<FilteredComplex, PipelineError> {
    let d = knot_diagram(conv, spec)?;
    let l = lift(&d)?;
    Ok(complex_from_diagram(&l)?)
}

/// `CFK^infinity` of `K(epsilon, sigma)`.
pub fn build_cfk(spec: &KnotSpec) -> Result<FilteredComplex, PipelineError> {
    build_cfk_with(&Conventions::default(), spec)
}
