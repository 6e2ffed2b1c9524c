//! Per-Fourier-mode Hochschild homology and cohomology with scaling-twisted
//! coefficients, computed through the Koszul resolution.
//!
//! Tensoring the Koszul complex down to the twisted bimodule splits it into
//! finite complexes over the coefficient field, one per total mode `g`. After
//! a fixed unit rescaling of the basis, the complex at mode `g` is the Koszul
//! complex of the scalar sequence
//!
//! `lambda_i(g) = 1 - exp(2 pi i ((theta g)_i - b_i))`.
//!
//! Over a field each `lambda_i` is zero or a unit, so the complex is exact
//! unless all of them vanish, in which case every differential at that mode
//! is zero and the homology has dimension `binom(n, p)` in degree `p`. The
//! contributing modes therefore form the solution set of integer equations
//! and congruences, which is what [`ModeSet`] stores.

use super::element::{KoszulElement, WedgeIndex};
use super::modes::{ModeCongruence, ModeEquation, ModeSet};
use crate::phase_arith::{Angle, CoeffScalar, Ctx, Rat};
use crate::qlaurent::{MultiIndex, QLaurent, ScalingAutomorphism};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// The scalars `(lambda_1(g), ..., lambda_n(g))` of the induced per-mode
/// Koszul complex: `lambda_i` is the scalar by which the (unit-normalized)
/// difference "left action of `x_i` minus twist-phased right action of `x_i`"
/// acts at total mode `g`.
pub fn mode_scalars(ctx: &Ctx, sigma: &ScalingAutomorphism, gamma: &[i64]) -> Vec<CoeffScalar> {
    let theta_g = ctx.theta_apply(gamma);
    let one = ctx.scalar_one();
    theta_g
        .iter()
        .zip(sigma.angles())
        .map(|(tg, b)| one.sub(&ctx.angle_to_scalar(&tg.sub(b))))
        .collect()
}

/// The set `{g : lambda_i(g) = 0 for all i}` as exact integer conditions.
///
/// Vanishing of `lambda_i` means the angle `(theta g)_i - b_i` is trivial:
/// its irrational parts give integer equations `(M_t g)_i = m_i[t]`, and its
/// rational part the congruence `(d C g)_i = d c_i (mod d)`.
pub fn vanishing_mode_set(ctx: &Ctx, sigma: &ScalingAutomorphism) -> ModeSet {
    let n = ctx.n();
    let d = ctx.d() as i64;
    let mut equations = Vec::new();
    let mut congruences = Vec::new();
    for (t, mt) in ctx.integer_forms().iter().enumerate() {
        for i in 0..n {
            equations.push(ModeEquation {
                coeffs: mt[i].clone(),
                rhs: sigma.angles()[i].m[t],
            });
        }
    }
    if d > 1 {
        let big_d = BigInt::from(d);
        for i in 0..n {
            let coeffs: Vec<i64> = (0..n)
                .map(|j| {
                    let v = ctx.rational_part()[i][j].clone() * Rat::from_integer(big_d.clone());
                    assert!(v.is_integer());
                    i64::try_from(v.to_integer()).expect("d*C entry fits i64")
                })
                .collect();
            let rhs_rat = sigma.angles()[i].c.clone() * Rat::from_integer(big_d.clone());
            assert!(
                rhs_rat.is_integer(),
                "twist angle denominator must divide the context denominator d"
            );
            let rhs = i64::try_from(rhs_rat.to_integer().mod_floor(&big_d)).expect("reduced rhs fits i64");
            congruences.push(ModeCongruence { coeffs, rhs, modulus: d });
        }
    }
    ModeSet::new(n, equations, congruences)
}

use num_integer::Integer;

/// Push `x (x) e` down along `X (x)_{A-A} K_p -> X (x) Lambda^p`:
/// `x (x) (a (x) e_I (x) b) -> (b * x * sigma(a)) (x) e_I`, the left action
/// of `b` and the twist-deformed right action of `a` on `X = A_sigma`.
pub fn tensor_down(
    sigma: &ScalingAutomorphism,
    x: &QLaurent,
    e: &KoszulElement,
) -> BTreeMap<WedgeIndex, QLaurent> {
    let ctx = e.ctx();
    let mut out: BTreeMap<WedgeIndex, QLaurent> = BTreeMap::new();
    for ((wedge, alpha, beta), coeff) in e.terms() {
        let xa = QLaurent::monomial(ctx, alpha.clone(), coeff.clone());
        let xb = QLaurent::monomial(ctx, beta.clone(), ctx.scalar_one());
        let value = xb.multiply(x).multiply(&sigma.apply(&xa));
        out.entry(wedge.clone())
            .and_modify(|acc| *acc = acc.add(&value))
            .or_insert(value);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Unnormalized induced differential on `A_sigma (x) Lambda^*` applied to the
/// basis tensor `x^delta (x) e_I`: the coefficient produced on
/// `x^{delta + e_i} (x) e_{I \ i}` when removing position `k`.
fn raw_coefficient(
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
    delta: &[i64],
    wedge: &WedgeIndex,
    k: usize,
) -> CoeffScalar {
    let idx = wedge.indices();
    let i = idx[k];
    let n = ctx.n();
    let e_i = MultiIndex::unit(n, i);
    // right action phase: x^delta * sigma(x_i)
    let mut right = sigma.angles()[i].clone();
    right = right.add(&ctx.product_phase(delta, &e_i.0));
    for s in 0..k {
        right = right.add(&ctx.theta(idx[s], i));
    }
    // left action phase: x_i * x^delta
    let mut left = ctx.product_phase(&e_i.0, delta);
    for s in (k + 1)..idx.len() {
        left = left.add(&ctx.theta(i, idx[s]));
    }
    let mut c = ctx.angle_to_scalar(&right).sub(&ctx.angle_to_scalar(&left));
    if k % 2 == 1 {
        c = c.neg();
    }
    c
}

/// The unit carried by removing the largest wedge index, used to normalize
/// per-mode bases so the induced matrix has the plain Koszul entries.
fn removal_unit(ctx: &Ctx, sigma: &ScalingAutomorphism, delta: &[i64], wedge: &WedgeIndex) -> Angle {
    let idx = wedge.indices();
    let k = idx.len() - 1;
    let i = idx[k];
    let e_i = MultiIndex::unit(ctx.n(), i);
    let mut ang = sigma.angles()[i].clone();
    ang = ang.add(&ctx.product_phase(delta, &e_i.0));
    for s in 0..k {
        ang = ang.add(&ctx.theta(idx[s], i));
    }
    ang
}

/// Normalization unit for the basis tensor at total mode `g` and wedge `I`,
/// defined by removing the largest index first, recursively. The per-mode
/// reduction soundness test locks this convention: in the rescaled basis the
/// induced differential is exactly the Koszul matrix of [`mode_scalars`].
pub fn normalization_angle(
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
    gamma: &[i64],
    wedge: &WedgeIndex,
) -> Angle {
    let mut acc = Angle::zero(ctx.s());
    let mut current = wedge.clone();
    while current.degree() > 0 {
        let delta: Vec<i64> = {
            let ind = current.indicator(ctx.n());
            gamma.iter().zip(&ind).map(|(g, w)| g - w).collect()
        };
        let u = removal_unit(ctx, sigma, &delta, &current);
        acc = acc.sub(&u);
        let (_, rest) = current.remove(current.degree() - 1);
        current = rest;
    }
    acc
}

/// Matrix of the induced differential `(A_sigma (x) Lambda^p)(g) ->
/// (A_sigma (x) Lambda^{p-1})(g)` in the normalized bases, rows indexed by
/// degree `p-1` wedges, columns by degree `p` wedges, both lexicographic.
pub fn per_mode_matrix(
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
    gamma: &[i64],
    p: usize,
) -> Vec<Vec<CoeffScalar>> {
    let n = ctx.n();
    assert!((1..=n).contains(&p));
    let sources = WedgeIndex::all(n, p);
    let targets = WedgeIndex::all(n, p - 1);
    let target_pos: BTreeMap<&WedgeIndex, usize> =
        targets.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut matrix = vec![vec![ctx.scalar_zero(); sources.len()]; targets.len()];
    for (col, wedge) in sources.iter().enumerate() {
        let ind = wedge.indicator(n);
        let delta: Vec<i64> = gamma.iter().zip(&ind).map(|(g, w)| g - w).collect();
        let nu_src = normalization_angle(ctx, sigma, gamma, wedge);
        for k in 0..p {
            let raw = raw_coefficient(ctx, sigma, &delta, wedge, k);
            let (_, rest) = wedge.remove(k);
            let nu_tgt = normalization_angle(ctx, sigma, gamma, &rest);
            let unit = ctx.angle_to_scalar(&nu_src.sub(&nu_tgt));
            let row = target_pos[&rest];
            matrix[row][col] = raw.mul(&unit);
        }
    }
    matrix
}

/// The plain Koszul matrix of a scalar sequence in the same basis ordering:
/// entry `(J, I)` is `(-1)^{k-1} lambda_{i_k}` when `I = J + {i_k}`.
pub fn scalar_koszul_matrix(ctx: &Ctx, lambdas: &[CoeffScalar], p: usize) -> Vec<Vec<CoeffScalar>> {
    let n = ctx.n();
    let sources = WedgeIndex::all(n, p);
    let targets = WedgeIndex::all(n, p - 1);
    let target_pos: BTreeMap<&WedgeIndex, usize> =
        targets.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut matrix = vec![vec![ctx.scalar_zero(); sources.len()]; targets.len()];
    for (col, wedge) in sources.iter().enumerate() {
        for k in 0..p {
            let (i, rest) = wedge.remove(k);
            let mut c = lambdas[i].clone();
            if k % 2 == 1 {
                c = c.neg();
            }
            matrix[target_pos[&rest]][col] = c;
        }
    }
    matrix
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Homology,
    Cohomology,
}

/// One degree of a homology table: the group at degree `p` is free of rank
/// `multiplicity` over the coefficient field at every mode of `modes`, and
/// zero at every other mode.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyRow {
    pub degree: usize,
    pub multiplicity: u64,
    pub modes: ModeSet,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyTable {
    pub direction: Direction,
    /// The coefficient twist, rendered as its scaling angles.
    pub twist: String,
    pub rows: Vec<HomologyRow>,
}

fn render_twist(sigma: &ScalingAutomorphism) -> String {
    let parts: Vec<String> = sigma.angles().iter().map(|a| a.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl HomologyTable {
    /// Dimension count within the box `|g|_inf <= radius` for each degree.
    pub fn box_counts(&self, radius: i64) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| r.multiplicity * r.modes.count_in_box(radius) as u64)
            .collect()
    }
}

/// Hochschild homology `HH_p(A, A_sigma)` for `p = 0..n`: multiplicity
/// `binom(n, p)` on the vanishing mode set, by the field dichotomy.
pub fn hochschild_homology(ctx: &Ctx, sigma: &ScalingAutomorphism) -> HomologyTable {
    let n = ctx.n();
    let modes = vanishing_mode_set(ctx, sigma);
    let rows = (0..=n)
        .map(|p| HomologyRow { degree: p, multiplicity: binomial(n, p), modes: modes.clone() })
        .collect();
    HomologyTable { direction: Direction::Homology, twist: render_twist(sigma), rows }
}

#[derive(Debug, Error)]
pub enum ConventionError {
    #[error("cohomology computed directly and via duality disagree in degree {degree}: {direct} vs {via_duality}")]
    DualityMismatch { degree: usize, direct: String, via_duality: String },
}

/// Hochschild cohomology `HH^p(A, A_sigma)`, computed directly from the
/// cochain complex per mode, and cross-checked against the duality route
/// (`HH^p = HH_{n-p}` with the composed twist, modes shifted by `(1,...,1)`).
/// A mismatch signals a convention bug and is reported as an error.
pub fn hochschild_cohomology(
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
) -> Result<HomologyTable, ConventionError> {
    let n = ctx.n();
    // Direct cochain computation: the coboundary entries at cochain mode g
    // vanish iff (theta g)_i - b_i is trivial, the same conditions as the
    // chain side with the same twist.
    let direct_modes = vanishing_mode_set(ctx, sigma);
    // Duality route: HH^p(A, A_sigma) = HH_{n-p}(A, A_{nu sigma}) with modes
    // shifted by +(1, ..., 1).
    let nu = ScalingAutomorphism::nakayama(ctx);
    let composed = nu.compose(sigma);
    let chain_modes = vanishing_mode_set(ctx, &composed);
    let ones = vec![1i64; n];
    let via_duality = chain_modes.shift(&ones);
    if !direct_modes.same_set(&via_duality) {
        return Err(ConventionError::DualityMismatch {
            degree: 0,
            direct: direct_modes.to_string(),
            via_duality: via_duality.to_string(),
        });
    }
    let rows = (0..=n)
        .map(|p| HomologyRow { degree: p, multiplicity: binomial(n, p), modes: direct_modes.clone() })
        .collect();
    Ok(HomologyTable { direction: Direction::Cohomology, twist: render_twist(sigma), rows })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityDegree {
    pub degree: usize,
    pub cohomology_multiplicity: u64,
    pub homology_multiplicity: u64,
    pub modes_match: bool,
    pub counterexample: Option<Vec<i64>>,
}

/// Result of checking `HH^i(A, A_sigma) = HH_{n-i}(A, A_{alpha sigma})`
/// degree by degree, with the mode correspondence `g -> g - (1, ..., 1)`
/// from cohomology modes to homology modes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub passed: bool,
    pub degrees: Vec<DualityDegree>,
}

/// Verify the degree-reversing duality for the given twist: for each `i`,
/// compare multiplicity and (shift-corresponded) mode set of `HH^i(A, A_s)`
/// with `HH_{n-i}(A, A_{alpha s})`, where `alpha` is the modular scaling
/// returned by [`ScalingAutomorphism::nakayama`]. Box enumeration up to
/// `scan_radius` hunts for an explicit counterexample mode; failure is data,
/// not an error.
pub fn duality_check(ctx: &Ctx, sigma: &ScalingAutomorphism, scan_radius: i64) -> DualityReport {
    let n = ctx.n();
    let alpha = ScalingAutomorphism::nakayama(ctx);
    let cochain = vanishing_mode_set(ctx, sigma);
    let chain = vanishing_mode_set(ctx, &alpha.compose(sigma));
    let ones = vec![1i64; n];
    let mut degrees = Vec::new();
    let mut passed = true;
    for i in 0..=n {
        let m_co = binomial(n, i);
        let m_ho = binomial(n, n - i);
        let shifted = chain.shift(&ones);
        let mut modes_match = m_co == m_ho && cochain.same_set(&shifted);
        // Independent explicit scan: membership must agree pointwise under
        // the correspondence.
        let mut counterexample = None;
        for g in cochain_scan_box(n, scan_radius) {
            let g_shift: Vec<i64> = g.iter().map(|x| x - 1).collect();
            if cochain.contains(&g) != chain.contains(&g_shift) {
                counterexample = Some(g.clone());
                modes_match = false;
                break;
            }
        }
        if !modes_match {
            passed = false;
        }
        degrees.push(DualityDegree {
            degree: i,
            cohomology_multiplicity: m_co,
            homology_multiplicity: m_ho,
            modes_match,
            counterexample,
        });
    }
    DualityReport { passed, degrees }
}

fn cochain_scan_box(n: usize, radius: i64) -> Vec<Vec<i64>> {
    ModeSet::full(n).enumerate_box(radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_arith::{rat_mat, ThetaMatrix};

    fn generic_2torus() -> Ctx {
        ThetaMatrix::from_single_form(vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    fn root_of_unity_2torus() -> Ctx {
        ThetaMatrix::new(3, rat_mat(&[&[(0, 1), (1, 3)], &[(-1, 3), (0, 1)]]), vec![]).unwrap()
    }

    #[test]
    fn mode_scalars_commutative_untwisted() {
        let ctx = ThetaMatrix::commutative(2);
        let id = ScalingAutomorphism::identity(&ctx);
        for g in [[0i64, 0], [3, -1]] {
            assert!(mode_scalars(&ctx, &id, &g).iter().all(|l| l.is_zero()));
        }
    }

    #[test]
    fn mode_scalars_generic_zero_mode() {
        let ctx = generic_2torus();
        let id = ScalingAutomorphism::identity(&ctx);
        assert!(mode_scalars(&ctx, &id, &[0, 0]).iter().all(|l| l.is_zero()));
        // gamma = (1,0): first scalar 0, second = 1 - u^{-1}
        let l = mode_scalars(&ctx, &id, &[1, 0]);
        assert!(l[0].is_zero());
        let u_inv = CoeffScalar::phase_monomial(ctx.field(), 0, &[-1]);
        assert_eq!(l[1], ctx.scalar_one().sub(&u_inv));
        assert!(!l[1].is_zero());
    }

    #[test]
    fn per_mode_reduction_soundness_small() {
        // The normalized induced matrix equals the Koszul matrix of the
        // per-mode scalars, entry by entry.
        let ctx = generic_2torus();
        let sigma = ScalingAutomorphism::nakayama(&ctx);
        for gamma in [[0i64, 0], [1, 0], [-2, 3]] {
            let lambdas = mode_scalars(&ctx, &sigma, &gamma);
            for p in 1..=2 {
                let reduced = per_mode_matrix(&ctx, &sigma, &gamma, p);
                let koszul = scalar_koszul_matrix(&ctx, &lambdas, p);
                assert_eq!(reduced, koszul, "mismatch at gamma={gamma:?}, p={p}");
            }
        }
    }

    #[test]
    fn per_mode_matrix_agrees_with_tensor_down() {
        // Independent route: apply the actual Koszul differential to a lifted
        // basis tensor and push down through the balanced tensor product.
        let ctx = generic_2torus();
        let sigma = ScalingAutomorphism::nakayama(&ctx);
        let gamma = [2i64, -1];
        let p = 2;
        let sources = WedgeIndex::all(2, p);
        let targets = WedgeIndex::all(2, p - 1);
        let normalized = per_mode_matrix(&ctx, &sigma, &gamma, p);
        for (col, wedge) in sources.iter().enumerate() {
            let ind = wedge.indicator(2);
            let delta: Vec<i64> = gamma.iter().zip(&ind).map(|(g, w)| g - w).collect();
            let lift = KoszulElement::basis(
                &ctx,
                MultiIndex::zero(2),
                wedge.clone(),
                MultiIndex::zero(2),
            );
            let x = QLaurent::monomial(
                &ctx,
                MultiIndex(delta.clone()),
                ctx.angle_to_scalar(&normalization_angle(&ctx, &sigma, &gamma, wedge)),
            );
            let pushed = tensor_down(&sigma, &x, &lift.differential());
            for (row, target) in targets.iter().enumerate() {
                let t_ind = target.indicator(2);
                let t_delta: Vec<i64> = gamma.iter().zip(&t_ind).map(|(g, w)| g - w).collect();
                let nu_t = ctx.angle_to_scalar(&normalization_angle(&ctx, &sigma, &gamma, target));
                let got = pushed
                    .get(target)
                    .map(|q| q.coeff(&MultiIndex(t_delta)))
                    .unwrap_or_else(|| ctx.scalar_zero());
                // pushed coefficient is in the unnormalized target basis
                let got_normalized = got.div(&nu_t);
                assert_eq!(got_normalized, normalized[row][col]);
            }
        }
    }

    #[test]
    fn homology_tables() {
        // commutative untwisted: full lattice in every degree
        let ctx = ThetaMatrix::commutative(2);
        let id = ScalingAutomorphism::identity(&ctx);
        let t = hochschild_homology(&ctx, &id);
        assert_eq!(t.box_counts(2), vec![25, 50, 25]);
        // generic: single mode (0,0), dims (1, 2, 1)
        let ctx = generic_2torus();
        let id = ScalingAutomorphism::identity(&ctx);
        let t = hochschild_homology(&ctx, &id);
        assert_eq!(t.box_counts(2), vec![1, 2, 1]);
        assert_eq!(t.rows[0].modes.particular(), Some(vec![0, 0]));
        assert!(t.rows[0].modes.kernel_lattice().is_empty());
        // root of unity d=3: congruence lattice mod 3 in each coordinate
        let ctx = root_of_unity_2torus();
        let id = ScalingAutomorphism::identity(&ctx);
        let t = hochschild_homology(&ctx, &id);
        assert_eq!(t.rows[1].modes.kernel_lattice(), vec![vec![3, 0], vec![0, 3]]);
        assert!(t.rows[1].modes.contains(&[3, -3]));
        assert!(!t.rows[1].modes.contains(&[1, 0]));
    }

    #[test]
    fn cohomology_direct_and_duality_agree() {
        for ctx in [ThetaMatrix::commutative(1), generic_2torus(), root_of_unity_2torus()] {
            let id = ScalingAutomorphism::identity(&ctx);
            let t = hochschild_cohomology(&ctx, &id).expect("duality cross-check");
            assert_eq!(t.rows.len(), ctx.n() + 1);
        }
    }

    #[test]
    fn cohomology_commutative_n1_full() {
        let ctx = ThetaMatrix::commutative(1);
        let id = ScalingAutomorphism::identity(&ctx);
        let t = hochschild_cohomology(&ctx, &id).unwrap();
        assert_eq!(t.box_counts(2), vec![5, 5]);
    }

    #[test]
    fn duality_passes_generic_and_root_of_unity() {
        for ctx in [generic_2torus(), root_of_unity_2torus()] {
            let id = ScalingAutomorphism::identity(&ctx);
            let r = duality_check(&ctx, &id, 3);
            assert!(r.passed, "{r:?}");
            let alpha = ScalingAutomorphism::nakayama(&ctx);
            let r = duality_check(&ctx, &alpha, 3);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn top_cohomology_of_inverse_modular_twist_is_nonzero() {
        // HH^n(A, A_{alpha^{-1}}) contains the mode (1, ..., 1).
        let ctx = generic_2torus();
        let alpha_inv = ScalingAutomorphism::nakayama(&ctx).inverse();
        let t = hochschild_cohomology(&ctx, &alpha_inv).unwrap();
        assert!(t.rows[2].modes.contains(&[1, 1]));
        assert!(!t.rows[2].modes.is_empty());
    }
}
