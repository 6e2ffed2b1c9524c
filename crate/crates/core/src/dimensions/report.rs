//! Certified homological-dimension calculators and the per-flavor report:
//! the isotropic-sublattice formula for the algebraic global dimension, the
//! generic multiplicative-rank criterion, and the Koszul/duality-sourced
//! bidimension, plus the theorem-sourced constants for the completed
//! flavors.

use super::isotropic::{max_commutative_rank, validate_witness, IsotropicResult};
use crate::koszul::{duality_check, DualityReport};
use crate::lattice;
use crate::phase_arith::Ctx;
use crate::qlaurent::ScalingAutomorphism;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Regular,
    Holomorphic,
    Smooth,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Regular => write!(f, "regular"),
            Flavor::Holomorphic => write!(f, "holomorphic"),
            Flavor::Smooth => write!(f, "smooth"),
        }
    }
}

/// A dimension value that is either certified exact or a lower bound from an
/// incomplete bounded search (regular flavor with several independent
/// irrational forms only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimValue {
    pub value: usize,
    pub complete: bool,
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complete {
            write!(f, "{}", self.value)
        } else {
            write!(f, "lower-bound {}", self.value)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimEntry {
    #[serde(flatten)]
    pub dim: DimValue,
    pub provenance: String,
}

/// Certified dimension report for one algebra flavor. Ordering invariants
/// (`w_dg <= dg <= db`, `w_db <= db`) hold in every emitted report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimensionReport {
    pub flavor: Flavor,
    pub n: usize,
    pub dg: DimEntry,
    pub w_dg: DimEntry,
    pub db: DimEntry,
    pub w_db: DimEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<IsotropicResult>,
    pub duality_verified: bool,
}

/// The generic-rank criterion: the multiplicative group generated by the
/// deformation parameters `q_ij (i < j)` has free rank equal to the maximal
/// possible `n(n-1)/2`. The free rank is the rank over Q of the matrix whose
/// rows are the irrational coefficient vectors of the angles `theta_ij`
/// (torsion from the root-of-unity part contributes nothing). When the
/// criterion holds the algebraic global dimension is 1.
pub fn mcconnell_pettit_generic(ctx: &Ctx) -> bool {
    let n = ctx.n();
    if n < 2 {
        // no off-diagonal parameters: the criterion is vacuous only for n=1
        return n == 1;
    }
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            rows.push(ctx.integer_forms().iter().map(|mt| mt[i][j]).collect::<Vec<i64>>());
        }
    }
    let rank = lattice::rank(&lattice::mat_from_i64(&rows));
    rank == n * (n - 1) / 2
}

/// The algebraic global dimension via the commutative-subalgebra rank, with
/// the witness re-validated by direct commutation of the spanned monomials.
/// Returns the value together with its certificate.
pub fn global_dim_algebraic(ctx: &Ctx, bound: i64) -> (DimValue, IsotropicResult) {
    let witness = max_commutative_rank(ctx, bound);
    assert!(
        validate_witness(ctx, &witness.basis),
        "witness basis failed direct commutation validation"
    );
    if witness.complete {
        return (DimValue { value: witness.rank, complete: true }, witness);
    }
    // Incomplete search: the generic-rank criterion can still settle it.
    if mcconnell_pettit_generic(ctx) {
        debug_assert!(witness.rank <= 1);
        return (DimValue { value: 1, complete: true }, witness);
    }
    (DimValue { value: witness.rank, complete: false }, witness)
}

/// The bidimension is the length of the Koszul resolution, `n`, for every
/// flavor; the certificate is a run of the degree-reversing duality check.
pub fn bidimension(ctx: &Ctx, _flavor: Flavor) -> (usize, DualityReport) {
    let id = ScalingAutomorphism::identity(ctx);
    let duality = duality_check(ctx, &id, 2);
    (ctx.n(), duality)
}

/// Full per-flavor dimension report.
///
/// Regular flavor: `dg = w.dg` is the commutative-subalgebra rank (the
/// algebra is noetherian, so the weak and strong global dimensions agree)
/// and `db = w.db = n`. Holomorphic and smooth flavors: all four equal `n`;
/// these are theorem-sourced constants for the nuclear completions and are
/// labeled as such rather than recomputed.
pub fn full_report(ctx: &Ctx, flavor: Flavor, bound: i64) -> DimensionReport {
    let n = ctx.n();
    let (db_value, duality) = bidimension(ctx, flavor);
    match flavor {
        Flavor::Regular => {
            let (dg, witness) = global_dim_algebraic(ctx, bound);
            let dg_prov = if !dg.complete {
                "bounded exhaustive search (incomplete): best certified witness".to_string()
            } else if witness.complete {
                match ctx.s() {
                    0 => "maximal commutative-subalgebra rank: all forms vanish on d*Z^n".to_string(),
                    1 => "maximal commutative-subalgebra rank: kernel plus Lagrangian of the single integer form".to_string(),
                    _ => "bounded search attained the rank upper bound".to_string(),
                }
            } else {
                "generic multiplicative-rank criterion forces global dimension 1".to_string()
            };
            let report = DimensionReport {
                flavor,
                n,
                dg: DimEntry { dim: dg.clone(), provenance: dg_prov.clone() },
                w_dg: DimEntry {
                    dim: dg,
                    provenance: format!("{dg_prov}; weak = strong (noetherian)"),
                },
                db: DimEntry {
                    dim: DimValue { value: db_value, complete: true },
                    provenance: "Koszul resolution length, degree-reversing duality verified".to_string(),
                },
                w_db: DimEntry {
                    dim: DimValue { value: db_value, complete: true },
                    provenance: "Koszul resolution length; weak = strong (noetherian)".to_string(),
                },
                witness: Some(witness),
                duality_verified: duality.passed,
            };
            report.assert_ordering();
            report
        }
        Flavor::Holomorphic | Flavor::Smooth => {
            let prov = "theorem-sourced constant for the nuclear Frechet completion (not recomputed here)";
            let entry = || DimEntry {
                dim: DimValue { value: n, complete: true },
                provenance: prov.to_string(),
            };
            let report = DimensionReport {
                flavor,
                n,
                dg: entry(),
                w_dg: entry(),
                db: DimEntry {
                    dim: DimValue { value: n, complete: true },
                    provenance: "Koszul resolution length, degree-reversing duality verified".to_string(),
                },
                w_db: entry(),
                witness: None,
                duality_verified: duality.passed,
            };
            report.assert_ordering();
            report
        }
    }
}

impl DimensionReport {
    /// `w.dg <= dg <= db` and `w.db <= db`, comparing recorded values.
    pub fn assert_ordering(&self) {
        assert!(self.w_dg.dim.value <= self.dg.dim.value);
        assert!(self.dg.dim.value <= self.db.dim.value);
        assert!(self.w_db.dim.value <= self.db.dim.value);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dimension report ({} flavor, n = {})\n", self.flavor, self.n));
        out.push_str(&format!("  dg   = {:<16} [{}]\n", self.dg.dim.to_string(), self.dg.provenance));
        out.push_str(&format!("  w.dg = {:<16} [{}]\n", self.w_dg.dim.to_string(), self.w_dg.provenance));
        out.push_str(&format!("  db   = {:<16} [{}]\n", self.db.dim.to_string(), self.db.provenance));
        out.push_str(&format!("  w.db = {:<16} [{}]\n", self.w_db.dim.to_string(), self.w_db.provenance));
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "  witness basis (rank {}, {}): {:?}\n",
                w.rank,
                if w.complete { "complete" } else { "incomplete search" },
                w.basis
            ));
        }
        out.push_str(&format!(
            "  duality check: {}\n",
            if self.duality_verified { "passed" } else { "FAILED" }
        ));
        out
    }
}
