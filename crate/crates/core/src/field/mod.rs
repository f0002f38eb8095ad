//! Arithmetic in F_q and F_q(x_1, ..., x_m).

pub mod config;
pub mod gf;
pub mod kp;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod univariate;

pub use config::FieldConfig;
pub use gf::{Elem, GaloisField};
pub use kp::{kp_expand, kp_expand_standard, KpCoordinates, MultiIndex};
pub use poly::{Monomial, Polynomial};
pub use rational::RationalFunction;
pub use univariate::UniPoly;
