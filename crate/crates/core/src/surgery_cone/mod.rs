//! Integer surgery mapping cone on `CFK^infinity`.

pub mod cone;
pub mod flip;
pub mod quotient;

pub use cone::{
    a_offset, build_cone, build_cone_mode, build_cone_padded, build_cone_with, cone_homology, genus_bound, surgery_homology, window,
    ClassCone, ConeComplex, FlipMode,
};
pub use flip::{flip_equivalence, flip_equivalences, is_flip, reverse_roles, FlipMap};
pub use quotient::{quotient, quotient_homology, QuotientComplex, QuotientKind};

use thiserror::Error;

use crate::graded_modules::GradedFUModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("zero surgery is not supported")]
    ZeroSurgeryUnsupported,
    #[error("no filtered equivalence C/{{j<0}} -> C/{{i<0}} exists")]
    FlipNotFound,
    #[error("homology mode: {0}")]
    HomologyMode(String),
}

/// Towers removed, torsion kept.
pub fn reduced_part(m: &GradedFUModule) -> GradedFUModule {
    m.reduced_part()
}
