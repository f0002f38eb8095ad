//! Differential forms, p-cohomology and residues in characteristic p.
//!
//! Everything is exact: coefficients live in F_q(x_1, ..., x_m) with q = p^e,
//! and classes over Laurent fields K((π)) are finite presentations
//! `Σ ω_i/π^i + ν_i/π^i ∧ dπ/π`.
//!
//! ```
//! use charp::field::{FieldConfig, RationalFunction};
//! use charp::forms::DifferentialForm;
//!
//! let cfg = FieldConfig::prime(3, &["x"]).unwrap();
//! let x = RationalFunction::var(&cfg, 0);
//! let w = DifferentialForm::scalar(x.pow(2).unwrap()).d();
//! assert_eq!(w.to_string(), "2*x^2*dlog(x)");
//! ```

pub mod error;
pub mod field;
pub mod forms;
pub mod laurent;
pub mod symbols;

pub use error::{Error, Result};
pub use field::{FieldConfig, MultiIndex, Polynomial, RationalFunction};
pub use forms::{DifferentialForm, LogTerm, LogTermSum};
