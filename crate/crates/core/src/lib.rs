//! Exact computer algebra for quantum torus algebras.
//!
//! The deformed Laurent algebra on `n` invertible generators with relations
//! `x_i x_j = q_ij x_j x_i` is represented exactly: each `q_ij` is a root of
//! unity times a product of declared transcendental phases, and all
//! coefficients live in the field `Q(zeta_d)(u_1, ..., u_s)`. On top of the
//! twisted Laurent arithmetic the crate computes:
//!
//! - the bimodule Koszul complex and its differential, with per-Fourier-mode
//!   Hochschild homology and cohomology for scaling-twisted coefficients;
//! - the degree-reversing duality check between `HH^i` and `HH_{n-i}`;
//! - a truncated bar-complex oracle for independent cross-validation;
//! - certified global-dimension and bidimension reports (isotropic-sublattice
//!   search, the generic multiplicative-rank criterion, per-flavor
//!   conclusions);
//! - a floating-point seminorm layer for the holomorphic and smooth
//!   completions, kept strictly separate from the exact layer.
//!
//! Everything exact is pure and immutable; contexts are shared through `Arc`
//! and values can be used freely across threads.
//!
//! ```
//! use qtorus::{ThetaMatrix, ScalingAutomorphism};
//! use qtorus::koszul::{hochschild_homology, duality_check};
//!
//! // generic 2-torus: theta = tau * [[0, 1], [-1, 0]]
//! let ctx = ThetaMatrix::from_single_form(vec![vec![0, 1], vec![-1, 0]]).unwrap();
//! let id = ScalingAutomorphism::identity(&ctx);
//!
//! let table = hochschild_homology(&ctx, &id);
//! assert_eq!(table.box_counts(2), vec![1, 2, 1]); // concentrated at mode (0,0)
//! assert!(duality_check(&ctx, &id, 3).passed);
//! ```

pub mod cli;
pub mod dimensions;
pub mod koszul;
pub mod lattice;
pub mod phase_arith;
pub mod qlaurent;
pub mod sampling;
pub mod seminorms;

pub use phase_arith::{Angle, CoeffScalar, Ctx, ThetaMatrix};
pub use qlaurent::{MultiIndex, QLaurent, ScalingAutomorphism};
