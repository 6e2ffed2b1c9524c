//! Certified homological-dimension calculators: the commutative-subalgebra
//! rank formula for the algebraic global dimension, the generic
//! multiplicative-rank criterion, and per-flavor dimension reports.

pub mod isotropic;
pub mod report;

pub use isotropic::{max_commutative_rank, validate_witness, IsotropicResult};
pub use report::{
    bidimension, full_report, global_dim_algebraic, mcconnell_pettit_generic, DimEntry,
    DimValue, DimensionReport, Flavor,
};
