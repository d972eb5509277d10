//! Rigidity of Pham–Brieskorn rings `k[x_0..x_n] / <x_0^{a_0} + ... + x_n^{a_n}>`.
//!
//! - [`arith`]: exponent tuples, weights, cotype, the classes `Γ`, `Γ⁺`, `Γ⁻`.
//! - [`classify`]: decision procedure with a proof trace.
//! - [`geometry`]: singularities and intersection numbers of the quotient surfaces.
//! - [`dualgraph`]: intersection graphs and contraction of (-1)-curves.
//! - [`symb`]: exact polynomials, derivations and non-rigidity witnesses.
//! - [`battery`]: the fixed regression battery behind `pbrigid verify-paper`.

pub mod arith;
pub mod battery;
pub mod classify;
pub mod cli;
pub mod dualgraph;
pub mod error;
pub mod geometry;
pub mod numfmt;
pub mod symb;

pub use arith::{ExponentTuple, GammaClass, WeightVector};
pub use error::{Error, Result};
