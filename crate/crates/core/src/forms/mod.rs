//! Differential forms over F_q(x_1, ..., x_m), logarithmic presentations, the
//! Frobenius Φ, the Artin–Schreier map ℘ and the Cartier decomposition.

pub mod artin_schreier;
pub mod form;
pub mod log;
pub mod monomial;

pub use artin_schreier::{as_reduce, ASReducedClass, Place};
pub use form::{DifferentialForm, Wedge};
pub use log::{dlog, LogTerm, LogTermSum};
pub use monomial::{
    cartier_decompose, coexact_split, exact_primitive, harmonic_part, homotopy, is_exact, monomial_decompose,
    CartierDecomposition, MonomialTerm, MonomialTermDecomposition,
};
