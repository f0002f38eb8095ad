//! Generic p-symbols and their residue chains, monomial Milnor symbols with
//! tame symbols, and p-basis utilities.

pub mod basis;
pub mod generic;
pub mod milnor;

pub use basis::{
    complete_differential_basis, omega_injectivity, p_independence_test, restriction_zero_check, DifferentialBasis,
    InjectivityReport, RestrictionReport,
};
pub use generic::{
    generic_residues, make_generic_symbol, residue_chain_certificate, residues_at, x_name, y_name, ChainStep,
    GenericResidues, GenericSymbolSpec, ResidueChainCertificate, ResidueMap, ValuationSpec,
};
pub use milnor::{tame_chain, tame_symbol, MilnorSymbol, TameStep};
