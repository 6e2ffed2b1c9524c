//! The bimodule Koszul complex, per-mode Hochschild (co)homology with
//! twisted coefficients, the degree-reversing duality check, and the
//! truncated bar-complex oracle.

pub mod bar;
pub mod element;
pub mod homology;
pub mod modes;
pub mod modp;

pub use bar::{bar_oracle, max_feasible_degree, Backend, FeasibilityError, OracleMode, OracleReport};
pub use element::{KoszulElement, WedgeIndex};
pub use homology::{
    binomial, duality_check, hochschild_cohomology, hochschild_homology, mode_scalars,
    normalization_angle, per_mode_matrix, scalar_koszul_matrix, tensor_down, vanishing_mode_set,
    ConventionError, Direction, DualityReport, HomologyRow, HomologyTable,
};
pub use modes::{ModeCongruence, ModeEquation, ModeSet};
