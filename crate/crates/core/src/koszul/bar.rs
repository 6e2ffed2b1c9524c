//! Brute-force cross-validation of the per-mode homology through the
//! (normalized) Hochschild bar complex, truncated to a finite piece.
//!
//! The chain space in degree `k` at total mode `g` is spanned by tuples
//! `x^{d0} (x) x^{d1} (x) ... (x) x^{dk}` with the bar legs `d1..dk` nonzero
//! and of total weight `|d1|_inf + ... + |dk|_inf <= B`; the module leg
//! `d0 = g - sum` is determined and carries no constraint of its own (it is
//! bounded by `|g|_inf + B` automatically). The triangle inequality makes
//! this span a genuine subcomplex of the bar complex: merging two bar legs
//! never increases the total weight, and merges into the module leg only
//! shrink it. So `d o d = 0` holds on the nose and truncation can only
//! *omit* chains, never create spurious boundaries; dimensions are reported
//! on the interior window `|g|_inf <= B - p` for degree `p`, where the
//! omissions are empirically harmless (the window rule is validated by the
//! acceptance suite, not proved).
//!
//! Ranks are taken over the exact coefficient field when the complex is
//! small. Larger complexes are handled by specializing the transcendentals
//! and the cyclotomic generator into a prime field and compressing with a
//! random-diagonal Gram product: both steps can only lower a rank, so the
//! reported dimensions are certified upper bounds for the truncated
//! complex's homology, exact with overwhelming probability and sampled with
//! two independent specializations.

use super::modp;
use crate::phase_arith::{Angle, CoeffScalar, Ctx, Rat};
use crate::qlaurent::ScalingAutomorphism;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FeasibilityError {
    #[error("bar oracle supports n <= 2 generators, got n = {0}")]
    TooManyGenerators(usize),
    #[error("bar oracle supports box bounds 1 <= B <= 4, got B = {0}")]
    BadBound(i64),
    #[error("bar oracle supports degrees <= 3, got {0}")]
    DegreeTooLarge(usize),
    #[error("degree {degree} needs bound >= {} (chains of {} nonzero legs must fit the weight budget)", degree + 1, degree + 1)]
    BoundTooSmallForDegree { degree: usize },
    #[error("bar complex too large: {count} chains in degree {degree} at bound {bound} (limit {limit})")]
    TooLarge { count: u64, degree: usize, bound: i64, limit: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Auto,
    Exact,
    Modular,
}

/// Per-mode result: `dims[p]` is present when the mode lies in the degree-`p`
/// reliability window.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleMode {
    pub gamma: Vec<i64>,
    pub dims: Vec<Option<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub bound: i64,
    pub max_degree: usize,
    pub backend: String,
    pub modes: Vec<OracleMode>,
}

impl OracleReport {
    pub fn dim_at(&self, gamma: &[i64], degree: usize) -> Option<u64> {
        self.modes
            .iter()
            .find(|m| m.gamma == gamma)
            .and_then(|m| m.dims.get(degree).copied().flatten())
    }
}

const CHAIN_LIMIT: u64 = 500_000;
const EXACT_COLUMN_LIMIT: usize = 1_500;
const EXACT_ROW_LIMIT: usize = 160;

/// Largest degree the oracle accepts at the given bound: capped by the
/// number of generators and by the weight budget (degree `p` needs
/// `bound >= p + 1` so that boundaries in the top degree are visible).
pub fn max_feasible_degree(n: usize, bound: i64) -> usize {
    3.min(n).min((bound - 1).max(0) as usize)
}

trait Engine {
    type E: Clone;
    fn from_angle(&self, a: &Angle) -> Self::E;
    fn add_assign(&self, a: &mut Self::E, b: &Self::E);
    fn neg(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

struct ExactEngine {
    ctx: Ctx,
}

impl Engine for ExactEngine {
    type E = CoeffScalar;
    fn from_angle(&self, a: &Angle) -> CoeffScalar {
        self.ctx.angle_to_scalar(a)
    }
    fn add_assign(&self, a: &mut CoeffScalar, b: &CoeffScalar) {
        *a = a.add(b);
    }
    fn neg(&self, a: &CoeffScalar) -> CoeffScalar {
        a.neg()
    }
    fn is_zero(&self, a: &CoeffScalar) -> bool {
        a.is_zero()
    }
}

struct ModEngine {
    p: u64,
    d: u64,
    omega: u64,
    u_vals: Vec<u64>,
}

impl ModEngine {
    fn new(d: u32, s: usize, rng: &mut ChaCha8Rng) -> Self {
        let p = modp::prime_one_mod(d as u64);
        let omega = modp::root_of_unity(p, d as u64);
        let u_vals = (0..s).map(|_| rng.random_range(2..p - 1)).collect();
        ModEngine { p, d: d as u64, omega, u_vals }
    }
}

impl Engine for ModEngine {
    type E = u64;
    fn from_angle(&self, a: &Angle) -> u64 {
        let cd = &a.c * Rat::from_integer(BigInt::from(self.d));
        assert!(cd.is_integer(), "angle denominator must divide d");
        let k = u64::try_from(cd.to_integer().mod_floor(&BigInt::from(self.d))).unwrap();
        let mut v = modp::pow_mod(self.omega, k, self.p);
        for (t, &m) in a.m.iter().enumerate() {
            let e = (m as i128).rem_euclid((self.p - 1) as i128) as u64;
            v = modp::mul_mod(v, modp::pow_mod(self.u_vals[t], e, self.p), self.p);
        }
        v
    }
    fn add_assign(&self, a: &mut u64, b: &u64) {
        *a = (*a + *b) % self.p;
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - *a % self.p) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a % self.p == 0
    }
}

fn sup(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Basis of bar legs in degree `k`: flattened nonzero legs `(d1..dk)` with
/// total weight `|d1|_inf + ... + |dk|_inf <= bound`. The module leg
/// `d0 = gamma - sum` is determined by the total mode and left free, which
/// keeps the span a subcomplex (merges only ever decrease the total weight).
/// Chain bases are the same at every mode; only the boundary phases depend
/// on `gamma`. Lexicographic order.
fn enumerate_chains(n: usize, bound: i64, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut legs: Vec<i64> = Vec::with_capacity(k * n);
    fn rec(
        n: usize,
        bound: i64,
        k: usize,
        legs: &mut Vec<i64>,
        used: i64,
        depth: usize,
        out: &mut Vec<Vec<i64>>,
    ) {
        if depth == k {
            out.push(legs.clone());
            return;
        }
        let remaining = bound - used - (k - depth - 1) as i64; // later legs cost >= 1 each
        if remaining < 1 {
            return;
        }
        let mut leg = vec![-remaining; n];
        loop {
            let w = sup(&leg);
            if w >= 1 && w <= remaining {
                legs.extend_from_slice(&leg);
                rec(n, bound, k, legs, used + w, depth + 1, out);
                legs.truncate(legs.len() - n);
            }
            let mut c = n;
            loop {
                if c == 0 {
                    return;
                }
                c -= 1;
                if leg[c] < remaining {
                    leg[c] += 1;
                    for x in leg.iter_mut().skip(c + 1) {
                        *x = -remaining;
                    }
                    break;
                }
            }
        }
    }
    rec(n, bound, k, &mut legs, 0, 0, &mut out);
    out
}

/// Image of the chain `(d0; legs)` under the bar boundary, as (target legs,
/// coefficient) pairs. On this subcomplex no term is ever truncated away;
/// only merges to the unit leg vanish (normalized complex). `sigma` twists
/// the right action: `x . a = x sigma(a)`.
fn boundary_column<E: Engine>(
    eng: &E,
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
    gamma: &[i64],
    legs: &[i64],
    k: usize,
) -> Vec<(Vec<i64>, E::E)> {
    let n = ctx.n();
    let d0: Vec<i64> = (0..n)
        .map(|c| {
            let mut s = gamma[c];
            for j in 0..k {
                s -= legs[j * n + c];
            }
            s
        })
        .collect();
    let leg = |j: usize| -> &[i64] { &legs[j * n..(j + 1) * n] };
    let mut out: Vec<(Vec<i64>, E::E)> = Vec::with_capacity(k + 1);
    let mut push = |target: Vec<i64>, coeff: E::E| {
        for (t, c) in out.iter_mut() {
            if *t == target {
                eng.add_assign(c, &coeff);
                return;
            }
        }
        out.push((target, coeff));
    };
    // j = 0: x . a_1 via the twisted right action x sigma(a_1)
    {
        let mut ang = ctx.product_phase(&d0, leg(0));
        ang = ang.add(&sigma.angle_on_mode(leg(0)));
        push(legs[n..].to_vec(), eng.from_angle(&ang));
    }
    // inner merges a_j a_{j+1}, sign (-1)^j
    for j in 1..k {
        let merged: Vec<i64> = (0..n).map(|c| leg(j - 1)[c] + leg(j)[c]).collect();
        if merged.iter().all(|&x| x == 0) {
            continue;
        }
        let ang = ctx.product_phase(leg(j - 1), leg(j));
        let mut coeff = eng.from_angle(&ang);
        if j % 2 == 1 {
            coeff = eng.neg(&coeff);
        }
        let mut target = Vec::with_capacity((k - 1) * n);
        target.extend_from_slice(&legs[..(j - 1) * n]);
        target.extend_from_slice(&merged);
        target.extend_from_slice(&legs[(j + 1) * n..]);
        push(target, coeff);
    }
    // j = k: a_k . x via the plain left action a_k x
    {
        let ang = ctx.product_phase(leg(k - 1), &d0);
        let mut coeff = eng.from_angle(&ang);
        if k % 2 == 1 {
            coeff = eng.neg(&coeff);
        }
        push(legs[..(k - 1) * n].to_vec(), coeff);
    }
    out.retain(|(_, c)| !eng.is_zero(c));
    out
}

struct ExactRank {
    ctx: Ctx,
    nrows: usize,
    pivots: Vec<Vec<CoeffScalar>>,
    leads: Vec<usize>,
}

impl ExactRank {
    fn new(ctx: &Ctx, nrows: usize) -> Self {
        ExactRank { ctx: ctx.clone(), nrows, pivots: Vec::new(), leads: Vec::new() }
    }

    fn push(&mut self, entries: &[(usize, CoeffScalar)]) {
        let mut v = vec![self.ctx.scalar_zero(); self.nrows];
        for (r, c) in entries {
            v[*r] = v[*r].add(c);
        }
        for (lead, pivot) in self.leads.iter().zip(&self.pivots) {
            if !v[*lead].is_zero() {
                let f = v[*lead].clone();
                for i in *lead..self.nrows {
                    if !pivot[i].is_zero() {
                        v[i] = v[i].sub(&f.mul(&pivot[i]));
                    }
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[lead].inv();
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
            let pos = self.leads.partition_point(|&l| l < lead);
            self.leads.insert(pos, lead);
            self.pivots.insert(pos, v);
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct GramRank {
    p: u64,
    dim: usize,
    gram: Vec<u64>,
    rng: ChaCha8Rng,
}

impl GramRank {
    fn new(p: u64, dim: usize, seed: u64) -> Self {
        GramRank { p, dim, gram: vec![0; dim * dim], rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn push(&mut self, entries: &[(usize, u64)]) {
        if entries.is_empty() {
            return;
        }
        let d: u64 = self.rng.random_range(1..self.p);
        for &(r1, v1) in entries {
            let dv1 = modp::mul_mod(d, v1, self.p);
            for &(r2, v2) in entries {
                let idx = r1 * self.dim + r2;
                self.gram[idx] = (self.gram[idx] + modp::mul_mod(dv1, v2, self.p)) % self.p;
            }
        }
    }

    fn rank(&mut self) -> usize {
        modp::dense_rank_mod(&mut self.gram, self.dim, self.dim, self.p)
    }
}

struct ModeRanks {
    dims: Vec<u64>,
    ranks: Vec<u64>, // rank d_k at index k-1
}

fn mode_ranks_exact(
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
    gamma: &[i64],
    bases: &[Vec<Vec<i64>>],
) -> ModeRanks {
    let eng = ExactEngine { ctx: ctx.clone() };
    let kmax = bases.len() - 1;
    let index: Vec<HashMap<Vec<i64>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
        .collect();
    let mut ranks = Vec::new();
    for k in 1..=kmax {
        let mut rk = ExactRank::new(ctx, bases[k - 1].len());
        for legs in &bases[k] {
            let col = boundary_column(&eng, ctx, sigma, gamma, legs, k);
            let entries: Vec<(usize, CoeffScalar)> =
                col.iter().map(|(t, c)| (index[k - 1][t], c.clone())).collect();
            rk.push(&entries);
        }
        ranks.push(rk.rank() as u64);
    }
    ModeRanks { dims: bases.iter().map(|b| b.len() as u64).collect(), ranks }
}

fn mode_ranks_modular(
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
    gamma: &[i64],
    bases: &[Vec<Vec<i64>>],
    seed: u64,
    trials: usize,
) -> ModeRanks {
    let kmax = bases.len() - 1;
    let index: Vec<HashMap<Vec<i64>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
        .collect();
    let mut ranks = vec![0u64; kmax];
    for trial in 0..trials {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15u64.wrapping_mul(trial as u64 + 1));
        let eng = ModEngine::new(ctx.d(), ctx.s(), &mut rng);
        for k in 1..=kmax {
            let mut rk = GramRank::new(eng.p, bases[k - 1].len(), rng.random());
            for legs in &bases[k] {
                let col = boundary_column(&eng, ctx, sigma, gamma, legs, k);
                let entries: Vec<(usize, u64)> =
                    col.iter().map(|(t, c)| (index[k - 1][t], *c)).collect();
                rk.push(&entries);
            }
            ranks[k - 1] = ranks[k - 1].max(rk.rank() as u64);
        }
    }
    ModeRanks { dims: bases.iter().map(|b| b.len() as u64).collect(), ranks }
}

/// Run the truncated bar oracle: per-mode homology dimension estimates for
/// degrees `0..=max_degree`, restricted to each degree's interior window
/// `|g|_inf <= bound - p`.
pub fn bar_oracle(
    ctx: &Ctx,
    sigma: &ScalingAutomorphism,
    bound: i64,
    max_degree: usize,
    backend: Backend,
    seed: u64,
) -> Result<OracleReport, FeasibilityError> {
    let n = ctx.n();
    if n > 2 {
        return Err(FeasibilityError::TooManyGenerators(n));
    }
    if !(1..=4).contains(&bound) {
        return Err(FeasibilityError::BadBound(bound));
    }
    if max_degree > 3 {
        return Err(FeasibilityError::DegreeTooLarge(max_degree));
    }
    if bound < (max_degree + 1) as i64 {
        // C_{p+1} would be empty: boundaries in the top requested degree
        // would be invisible and the estimate meaningless.
        return Err(FeasibilityError::BoundTooSmallForDegree { degree: max_degree });
    }

    let kmax = max_degree + 1;
    let bases: Vec<Vec<Vec<i64>>> = (0..=kmax).map(|k| enumerate_chains(n, bound, k)).collect();
    let total: u64 = bases.iter().map(|b| b.len() as u64).sum();
    if total > CHAIN_LIMIT {
        return Err(FeasibilityError::TooLarge {
            count: total,
            degree: kmax,
            bound,
            limit: CHAIN_LIMIT,
        });
    }
    let use_exact = match backend {
        Backend::Exact => true,
        Backend::Modular => false,
        Backend::Auto => {
            bases[kmax].len() <= EXACT_COLUMN_LIMIT
                && bases[kmax.saturating_sub(1)].len() <= EXACT_ROW_LIMIT
        }
    };

    let mut modes = Vec::new();
    for gamma in super::modes::ModeSet::full(n).enumerate_box(bound) {
        let g_norm = sup(&gamma);
        let p_here = (0..=max_degree).filter(|&p| g_norm <= bound - p as i64).max();
        let Some(p_here) = p_here else { continue };
        let r = if use_exact {
            mode_ranks_exact(ctx, sigma, &gamma, &bases[..=p_here + 1])
        } else {
            mode_ranks_modular(ctx, sigma, &gamma, &bases[..=p_here + 1], seed, 2)
        };
        let mut dims: Vec<Option<u64>> = Vec::new();
        for p in 0..=max_degree {
            if p > p_here {
                dims.push(None);
                continue;
            }
            let dim_cp = r.dims[p];
            let rank_dp = if p == 0 { 0 } else { r.ranks[p - 1] };
            let rank_dp1 = r.ranks[p];
            dims.push(Some((dim_cp - rank_dp).saturating_sub(rank_dp1)));
        }
        modes.push(OracleMode { gamma, dims });
    }
    let backend_name = if use_exact { "exact" } else { "modular" };
    Ok(OracleReport { bound, max_degree, backend: backend_name.to_string(), modes })
}
