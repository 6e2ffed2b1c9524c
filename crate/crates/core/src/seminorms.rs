//! The numeric layer for the completed flavors: the holomorphic seminorm
//! family indexed by a radius and the smooth family indexed by a derivative
//! order, continuity checks for the deformed product, and the unimodularity
//! guard for radial deformation parts.
//!
//! Everything here is double precision and illustrative; all homological
//! results come from the exact layer. The formal irrationals get numeric
//! stand-ins `tau_hat` in this module only.

use crate::phase_arith::Ctx;
use crate::qlaurent::{MultiIndex, QLaurent};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeminormError {
    #[error("holomorphic seminorm radius must be positive, got {0}")]
    BadRadius(f64),
    #[error("need {expected} numeric stand-ins for the formal irrationals, got {got}")]
    MissingTauHat { expected: usize, got: usize },
}

/// Weight convention for the smooth seminorm family: the literal weight
/// `|a|^k` annihilates constants for `k >= 1`; the shifted weight
/// `(1 + |a|)^k` behaves like a norm. Both are offered; reports label which
/// one was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SmoothWeight {
    Paper,
    Shifted,
}

/// Finite-support Fourier expansion with complex coefficients.
#[derive(Clone, Debug, Default)]
pub struct NumericElement {
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl NumericElement {
    pub fn new() -> Self {
        NumericElement { terms: BTreeMap::new() }
    }

    pub fn insert(&mut self, mode: MultiIndex, c: Complex64) {
        if c.norm() != 0.0 {
            let e = self.terms.entry(mode).or_insert(Complex64::new(0.0, 0.0));
            *e += c;
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, Complex64)>) -> Self {
        let mut out = Self::new();
        for (m, c) in terms {
            out.insert(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mode: &MultiIndex) -> Complex64 {
        self.terms.get(mode).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Evaluation of an exact element under `zeta_d -> exp(2 pi i/d)`,
    /// `u_t -> exp(2 pi i tau_hat_t)`.
    pub fn from_exact(a: &QLaurent, tau_hat: &[f64]) -> Result<Self, SeminormError> {
        let s = a.ctx().s();
        if tau_hat.len() != s {
            return Err(SeminormError::MissingTauHat { expected: s, got: tau_hat.len() });
        }
        let mut out = Self::new();
        for (m, c) in a.terms() {
            out.insert(m.clone(), c.eval_complex(tau_hat));
        }
        Ok(out)
    }
}

/// The holomorphic seminorm `|a|_rho = sum |c_a| rho^{|a|}` with
/// `|a| = sum_i |a_i|`. Monotone nondecreasing in `rho` for `rho >= 1`.
pub fn seminorm_rho(a: &NumericElement, rho: f64) -> Result<f64, SeminormError> {
    if !(rho > 0.0) {
        return Err(SeminormError::BadRadius(rho));
    }
    Ok(a.terms
        .iter()
        .map(|(m, c)| c.norm() * rho.powi(m.l1_norm() as i32))
        .sum())
}

/// The smooth seminorm `|a|_k = sum |c_a| w(a)^k` with `w` the chosen
/// weight. With the literal weight and the convention `0^0 = 1`, `|.|_0` is
/// the l1 norm and constants get seminorm 0 for `k >= 1`, exactly as the
/// defining formula reads.
pub fn seminorm_k(a: &NumericElement, k: u32, weight: SmoothWeight) -> f64 {
    a.terms
        .iter()
        .map(|(m, c)| {
            let base = match weight {
                SmoothWeight::Paper => m.l1_norm() as f64,
                SmoothWeight::Shifted => 1.0 + m.l1_norm() as f64,
            };
            let w = if k == 0 { 1.0 } else { base.powi(k as i32) };
            c.norm() * w
        })
        .sum()
}

/// The deformed product with numerically evaluated unit-modulus phases.
pub fn numeric_multiply(
    ctx: &Ctx,
    tau_hat: &[f64],
    a: &NumericElement,
    b: &NumericElement,
) -> Result<NumericElement, SeminormError> {
    if tau_hat.len() != ctx.s() {
        return Err(SeminormError::MissingTauHat { expected: ctx.s(), got: tau_hat.len() });
    }
    let mut out = NumericElement::new();
    for (alpha, ca) in &a.terms {
        for (beta, cb) in &b.terms {
            let ang = ctx.product_phase(&alpha.0, &beta.0);
            let turns = ang.eval_turns(tau_hat);
            let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * turns);
            out.insert(alpha.add(beta), ca * cb * phase);
        }
    }
    Ok(out)
}

/// Margins of the submultiplicativity estimates for one product:
/// `|ab|_rho <= |a|_sigma |b|_sigma` with `sigma = max(rho, 1)`, and the
/// smooth analogue with the shifted weight `(1 + |a|)^k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub rho: f64,
    pub sigma: f64,
    pub holomorphic_lhs: f64,
    pub holomorphic_rhs: f64,
    pub holomorphic_passed: bool,
    pub smooth_k: u32,
    pub smooth_lhs: f64,
    pub smooth_rhs: f64,
    pub smooth_passed: bool,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.holomorphic_passed && self.smooth_passed
    }
}

/// Check the continuity estimates on one pair. Violations are reported as
/// data: with unimodular phases the estimates are exact triangle-inequality
/// consequences, so a failure indicates an implementation bug.
pub fn continuity_check(
    ctx: &Ctx,
    tau_hat: &[f64],
    a: &NumericElement,
    b: &NumericElement,
    rho: f64,
    k: u32,
    tol: f64,
) -> Result<ContinuityReport, SeminormError> {
    if !(rho > 0.0) {
        return Err(SeminormError::BadRadius(rho));
    }
    let sigma = rho.max(1.0);
    let ab = numeric_multiply(ctx, tau_hat, a, b)?;
    let lhs = seminorm_rho(&ab, rho)?;
    let rhs = seminorm_rho(a, sigma)? * seminorm_rho(b, sigma)?;
    let holomorphic_passed = lhs <= rhs * (1.0 + tol) + tol;
    // Smooth side with the shifted weight: |a+b| <= |a| + |b| gives
    // (1+|a+b|)^k <= (1+|a|)^k (1+|b|)^k termwise.
    let slhs = seminorm_k(&ab, k, SmoothWeight::Shifted);
    let srhs = seminorm_k(a, k, SmoothWeight::Shifted) * seminorm_k(b, k, SmoothWeight::Shifted);
    let smooth_passed = slhs <= srhs * (1.0 + tol) + tol;
    Ok(ContinuityReport {
        rho,
        sigma,
        holomorphic_lhs: lhs,
        holomorphic_rhs: rhs,
        holomorphic_passed,
        smooth_k: k,
        smooth_lhs: slhs,
        smooth_rhs: srhs,
        smooth_passed,
    })
}

#[derive(Debug, Error)]
#[error("no nonzero completion exists: |q_{i}{j}| = {value} but every submultiplicative seminorm forces |q_ij| = 1, so the completion of the twisted Laurent algebra collapses to zero unless all radial parts are 1")]
pub struct UnimodularityRejection {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// Accept a context extension carrying radial parts `r_ij = |q_ij|` only if
/// every radial part is exactly 1; otherwise refuse to construct any
/// completion, reporting the offending entry.
pub fn unimodularity_guard(radial: &[Vec<f64>]) -> Result<(), UnimodularityRejection> {
    for (i, row) in radial.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r != 1.0 {
                return Err(UnimodularityRejection { i: i + 1, j: j + 1, value: r });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_arith::ThetaMatrix;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rho_norm_values() {
        let one = NumericElement::from_terms([(mi(&[0]), c(1.0))]);
        assert_eq!(seminorm_rho(&one, 5.0).unwrap(), 1.0);
        let a = NumericElement::from_terms([(mi(&[1]), c(1.0)), (mi(&[-1]), c(1.0))]);
        assert_eq!(seminorm_rho(&a, 2.0).unwrap(), 4.0);
        let b = NumericElement::from_terms([(mi(&[1, 1]), c(3.0))]);
        assert!((seminorm_rho(&b, 0.5).unwrap() - 0.75).abs() < 1e-15);
        assert!(seminorm_rho(&b, 0.0).is_err());
        assert!(seminorm_rho(&b, -1.0).is_err());
    }

    #[test]
    fn smooth_norm_values_paper_literal() {
        let one = NumericElement::from_terms([(mi(&[0, 0]), c(1.0))]);
        assert_eq!(seminorm_k(&one, 0, SmoothWeight::Paper), 1.0);
        // constants annihilated for k >= 1 with the literal weight
        assert_eq!(seminorm_k(&one, 2, SmoothWeight::Paper), 0.0);
        assert_eq!(seminorm_k(&one, 2, SmoothWeight::Shifted), 1.0);
        let a = NumericElement::from_terms([(mi(&[1, 0]), c(1.0)), (mi(&[0, 1]), c(1.0))]);
        assert_eq!(seminorm_k(&a, 3, SmoothWeight::Paper), 2.0);
    }

    #[test]
    fn numeric_product_matches_exact_evaluation() {
        let ctx = ThetaMatrix::from_single_form(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let tau = [0.6180339887498949];
        let xa = QLaurent::generator(&ctx, 0, 1).add(&QLaurent::generator(&ctx, 1, -2));
        let xb = QLaurent::generator(&ctx, 1, 1).add(&QLaurent::generator(&ctx, 0, 2));
        let exact = xa.multiply(&xb);
        let na = NumericElement::from_exact(&xa, &tau).unwrap();
        let nb = NumericElement::from_exact(&xb, &tau).unwrap();
        let numeric = numeric_multiply(&ctx, &tau, &na, &nb).unwrap();
        let exact_eval = NumericElement::from_exact(&exact, &tau).unwrap();
        for (m, c1) in numeric.terms() {
            let c2 = exact_eval.coeff(m);
            assert!((c1 - c2).norm() <= 1e-10 * c2.norm().max(1.0), "mode {m}");
            assert!((c1.norm() - 1.0).abs() < 1e-12, "phases stay unimodular");
        }
    }

    #[test]
    fn continuity_small_cases() {
        let ctx = ThetaMatrix::from_single_form(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let tau = [0.7548776662466927];
        let one = NumericElement::from_terms([(mi(&[0, 0]), c(1.0))]);
        let r = continuity_check(&ctx, &tau, &one, &one, 2.0, 2, 1e-12).unwrap();
        assert!(r.passed());
        // rho < 1 passes through sigma = 1
        let a = NumericElement::from_terms([(mi(&[2, -1]), c(1.5)), (mi(&[0, 1]), c(-0.5))]);
        let r = continuity_check(&ctx, &tau, &a, &a, 0.5, 3, 1e-12).unwrap();
        assert!(r.passed());
        assert_eq!(r.sigma, 1.0);
    }

    #[test]
    fn guard_rejects_nonunit_radius() {
        assert!(unimodularity_guard(&[vec![1.0, 1.0], vec![1.0, 1.0]]).is_ok());
        let err = unimodularity_guard(&[vec![1.0, 2.0], vec![0.5, 1.0]]).unwrap_err();
        assert_eq!((err.i, err.j), (1, 2));
        let msg = err.to_string();
        assert!(msg.contains("no nonzero completion"));
        // n=3 case with a single off-unit entry deep in the matrix
        let radial = vec![vec![1.0; 3], vec![1.0, 1.0, 0.5], vec![1.0; 3]];
        assert!(unimodularity_guard(&radial).is_err());
    }
}
