//! Exact arithmetic for the multiplicative phase group generated by the
//! deformation parameters, and for the coefficient field
//! `F = Q(zeta_d)(u_1, ..., u_s)` in which all homological linear algebra is
//! performed.
//!
//! The model: every deformation parameter is `exp(2 pi i * theta)` where
//! `theta` has an exact rational part (denominator dividing a global `d`) and
//! integer multiples of formal irrationals `tau_t` that are declared
//! Q-linearly independent together with 1. The scalar `exp(2 pi i / d)` is
//! realized as the cyclotomic generator `zeta_d`, and `exp(2 pi i tau_t)` as
//! an independent transcendental `u_t`, so every reachable phase lives in the
//! finitely presented exact field `F`.

pub mod angle;
pub mod cyclotomic;
pub mod multipoly;
pub mod scalar;
pub mod theta;

pub use angle::Angle;
pub use cyclotomic::{Cyclo, CycloField, Rat};
pub use multipoly::MPoly;
pub use scalar::{CoeffScalar, FieldCtx};
pub use theta::{rat_mat, rq, ContextError, Ctx, ThetaMatrix};
