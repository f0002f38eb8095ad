//! Presentations of classes in H^n_p(K₁((π))), the canonical decomposition,
//! residues, the filtration U_m and pullback along valued extensions.

pub mod canonical;
pub mod class;
pub mod extension;

pub use canonical::{
    canonicalize, coexact_projection, filtration_level, graded_image, residues, CanonicalCertificate,
    CanonicalDecomposition, GradedImage, HigherTable,
};
pub use class::{Component, LaurentClass, LaurentField};
pub use extension::{extend_scalars, psi_residues, psi_split, psi_split_literal, psi_unramified, ValuedExtension};
