//! The bimodule Koszul complex `K_p = A (x) Lambda^p C^n (x) A` and its
//! twisted differential. Elements are kept in the monomial basis
//! `x^a (x) e_I (x) x^b` with exact coefficients, so `d o d = 0` and the
//! augmentation identity can be checked on the nose.

use crate::phase_arith::{Angle, CoeffScalar, Ctx};
use crate::qlaurent::{MultiIndex, QLaurent};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A strictly increasing subset of generator indices (0-based internally),
/// the basis vector `e_{i_1} ... e_{i_p}` of `Lambda^p C^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeIndex(Vec<usize>);

impl WedgeIndex {
    pub fn new(indices: Vec<usize>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "wedge indices must be strictly increasing"
        );
        WedgeIndex(indices)
    }

    pub fn empty() -> Self {
        WedgeIndex(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Remove the `k`-th index, returning `(removed, rest)`.
    pub fn remove(&self, k: usize) -> (usize, WedgeIndex) {
        let mut v = self.0.clone();
        let i = v.remove(k);
        (i, WedgeIndex(v))
    }

    /// Insert an index not already present; returns the position it lands in.
    pub fn insert(&self, i: usize) -> (usize, WedgeIndex) {
        debug_assert!(!self.0.contains(&i));
        let mut v = self.0.clone();
        let pos = v.partition_point(|&x| x < i);
        v.insert(pos, i);
        (pos, WedgeIndex(v))
    }

    /// All wedges of the given degree on `n` generators, lexicographic.
    pub fn all(n: usize, p: usize) -> Vec<WedgeIndex> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<WedgeIndex>) {
            if cur.len() == p {
                out.push(WedgeIndex(cur.clone()));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(n, p, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, p, 0, &mut cur, &mut out);
        out
    }

    /// Indicator vector in `Z^n`.
    pub fn indicator(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &i in &self.0 {
            v[i] = 1;
        }
        v
    }
}

impl fmt::Display for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("e{}", i + 1)).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// A finite sum of basis tensors `c * x^a (x) e_I (x) x^b`, all wedges of one
/// homological degree, normalized (no zero coefficients).
#[derive(Clone, Debug)]
pub struct KoszulElement {
    ctx: Ctx,
    degree: usize,
    terms: BTreeMap<(WedgeIndex, MultiIndex, MultiIndex), CoeffScalar>,
}

impl PartialEq for KoszulElement {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl KoszulElement {
    pub fn zero(ctx: &Ctx, degree: usize) -> Self {
        assert!(degree <= ctx.n(), "homological degree exceeds the number of generators");
        KoszulElement { ctx: ctx.clone(), degree, terms: BTreeMap::new() }
    }

    /// The tensor `a (x) e_I (x) b`, expanded bilinearly into basis terms.
    pub fn tensor(a: &QLaurent, wedge: &WedgeIndex, b: &QLaurent) -> Self {
        let ctx = a.ctx().clone();
        assert!(Arc::ptr_eq(&ctx, b.ctx()), "sides from different contexts");
        let mut out = KoszulElement::zero(&ctx, wedge.degree());
        for (alpha, ca) in a.terms() {
            for (beta, cb) in b.terms() {
                out.insert_add((wedge.clone(), alpha.clone(), beta.clone()), ca.mul(cb));
            }
        }
        out
    }

    /// Basis tensor `x^a (x) e_I (x) x^b` with unit coefficient.
    pub fn basis(ctx: &Ctx, alpha: MultiIndex, wedge: WedgeIndex, beta: MultiIndex) -> Self {
        let mut out = KoszulElement::zero(ctx, wedge.degree());
        out.insert_add((wedge, alpha, beta), ctx.scalar_one());
        out
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(WedgeIndex, MultiIndex, MultiIndex), &CoeffScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, key: (WedgeIndex, MultiIndex, MultiIndex), coeff: CoeffScalar) {
        assert_eq!(key.0.degree(), self.degree, "mixed homological degrees");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scalar_mul(&CoeffScalar::from_i64(self.ctx.field(), -1)))
    }

    pub fn scalar_mul(&self, c: &CoeffScalar) -> Self {
        let mut out = KoszulElement::zero(&self.ctx, self.degree);
        for (k, x) in &self.terms {
            out.insert_add(k.clone(), x.mul(c));
        }
        out
    }

    /// Total Fourier mode of a basis term: `a + 1_I + b`. The differential
    /// preserves it.
    pub fn term_total_mode(ctx: &Ctx, key: &(WedgeIndex, MultiIndex, MultiIndex)) -> Vec<i64> {
        let n = ctx.n();
        let mut v = key.0.indicator(n);
        for (i, x) in v.iter_mut().enumerate() {
            *x += key.1 .0[i] + key.2 .0[i];
        }
        v
    }

    /// The Koszul differential `K_p -> K_{p-1}`:
    ///
    /// `d(a (x) e_{i_1}..e_{i_p} (x) b) = sum_k (-1)^{k-1} [`
    /// `(prod_{s<k} q_{i_s i_k}) a x_{i_k} (x) e_..^k.. (x) b`
    /// `- (prod_{s>k} q_{i_k i_s}) a (x) e_..^k.. (x) x_{i_k} b ]`.
    ///
    /// Panics in degree 0; the augmentation plays that role.
    pub fn differential(&self) -> Self {
        assert!(self.degree >= 1, "differential undefined in degree 0; use the augmentation");
        let ctx = &self.ctx;
        let n = ctx.n();
        let mut out = KoszulElement::zero(ctx, self.degree - 1);
        for ((wedge, alpha, beta), coeff) in &self.terms {
            let idx = wedge.indices();
            for k in 0..idx.len() {
                let (i, rest) = wedge.remove(k);
                let sign_neg = k % 2 == 1; // (-1)^{k-1} with 1-based k
                let e_i = MultiIndex::unit(n, i);

                // Left half: (prod_{s<k} q_{i_s i}) * a x_i (x) rest (x) b
                let mut left_phase = Angle::zero(ctx.s());
                for s in 0..k {
                    left_phase = left_phase.add(&ctx.theta(idx[s], i));
                }
                left_phase = left_phase.add(&ctx.product_phase(&alpha.0, &e_i.0));
                let mut left_coeff = coeff.mul(&ctx.angle_to_scalar(&left_phase));
                if sign_neg {
                    left_coeff = left_coeff.neg();
                }
                out.insert_add((rest.clone(), alpha.add(&e_i), beta.clone()), left_coeff);

                // Right half: -(prod_{s>k} q_{i i_s}) * a (x) rest (x) x_i b
                let mut right_phase = Angle::zero(ctx.s());
                for s in (k + 1)..idx.len() {
                    right_phase = right_phase.add(&ctx.theta(i, idx[s]));
                }
                right_phase = right_phase.add(&ctx.product_phase(&e_i.0, &beta.0));
                let mut right_coeff = coeff.mul(&ctx.angle_to_scalar(&right_phase)).neg();
                if sign_neg {
                    right_coeff = right_coeff.neg();
                }
                out.insert_add((rest, alpha.clone(), e_i.add(beta)), right_coeff);
            }
        }
        out
    }

    /// The augmentation `K_0 = A (x) A -> A`, multiplication.
    pub fn augmentation(&self) -> QLaurent {
        assert_eq!(self.degree, 0, "augmentation defined on degree 0 only");
        let ctx = &self.ctx;
        let mut out = QLaurent::zero(ctx);
        for ((_, alpha, beta), coeff) in &self.terms {
            let xa = QLaurent::monomial(ctx, alpha.clone(), coeff.clone());
            let xb = QLaurent::monomial(ctx, beta.clone(), ctx.scalar_one());
            out = out.add(&xa.multiply(&xb));
        }
        out
    }
}

impl fmt::Display for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((w, a, b), c)| format!("{} * x^{} (x) {} (x) x^{}", c, a, w, b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
