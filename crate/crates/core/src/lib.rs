//! Exact-arithmetic workbench for involutive tableaux.
//!
//! Given a tableau of linear maps (a subspace `A` of `W ⊗ V*`), this crate
//! computes its Cartan characters in a generic basis, certifies or refutes
//! involutivity by three independent routes, computes the characteristic
//! ideal and the linear span of the characteristic variety, classifies the
//! tableau (Frobenius, elementary, Cauchy-free), and iterates elementary
//! reductions into a flag with a depth invariant.
//!
//! All arithmetic is exact over arbitrary-precision rationals; every
//! randomized search is driven by seeded, splittable RNG streams, so results
//! are reproducible bit for bit, with or without the `parallel` feature.

pub mod charvar;
pub mod config;
pub mod elemred;
pub mod ideal;
pub mod error;
pub mod mat;
pub mod fixtures;
pub mod par;
pub mod poly;
pub mod rng;
pub mod scalar;
pub mod spencer;
pub mod subspace;
pub mod tableau;

pub use error::{Error, Result};
