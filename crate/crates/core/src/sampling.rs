//! Seeded random generators for contexts, elements, twists and unimodular
//! transforms. Used by the verification subcommands and the test suites;
//! everything is deterministic in the seed.

use crate::koszul::{KoszulElement, WedgeIndex};
use crate::phase_arith::{rq, Angle, CoeffScalar, Ctx, Rat, ThetaMatrix};
use crate::qlaurent::{MultiIndex, QLaurent, ScalingAutomorphism};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContextKind {
    /// One irrational form, no rational part.
    Generic,
    /// Rational angles only, denominator in 2..=6.
    RootOfUnity,
    /// Both a rational part and one or two irrational forms.
    Mixed,
}

fn random_skew_int(rng: &mut impl Rng, n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.random_range(-max..=max);
            m[i][j] = v;
            m[j][i] = -v;
        }
    }
    m
}

fn random_skew_rat(rng: &mut impl Rng, n: usize, d: u32) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![rq(0, 1); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let num = rng.random_range(0..d as i64);
            m[i][j] = rq(num, d as i64);
            m[j][i] = rq(-num, d as i64);
        }
    }
    m
}

pub fn random_context(rng: &mut impl Rng, n: usize, kind: ContextKind) -> Ctx {
    match kind {
        ContextKind::Generic => {
            let m = random_skew_int(rng, n, 2);
            ThetaMatrix::new(1, vec![vec![rq(0, 1); n]; n], vec![m]).expect("valid random context")
        }
        ContextKind::RootOfUnity => {
            let d = rng.random_range(2..=6u32);
            let c = random_skew_rat(rng, n, d);
            ThetaMatrix::new(d, c, vec![]).expect("valid random context")
        }
        ContextKind::Mixed => {
            let d = rng.random_range(2..=4u32);
            let c = random_skew_rat(rng, n, d);
            let forms = (0..rng.random_range(1..=2usize))
                .map(|_| random_skew_int(rng, n, 2))
                .collect();
            ThetaMatrix::new(d, c, forms).expect("valid random context")
        }
    }
}

pub fn random_mode(rng: &mut impl Rng, n: usize, max: i64) -> MultiIndex {
    MultiIndex((0..n).map(|_| rng.random_range(-max..=max)).collect())
}

/// Sparse element with small integer coefficients times random phase units.
pub fn random_qlaurent(rng: &mut impl Rng, ctx: &Ctx, terms: usize, max_exp: i64) -> QLaurent {
    let mut out = QLaurent::zero(ctx);
    for _ in 0..terms {
        let mode = random_mode(rng, ctx.n(), max_exp);
        let k = rng.random_range(1..=3i64) * if rng.random_bool(0.5) { 1 } else { -1 };
        let unit = random_phase_scalar(rng, ctx);
        let coeff = CoeffScalar::from_i64(ctx.field(), k).mul(&unit);
        out = out.add(&QLaurent::monomial(ctx, mode, coeff));
    }
    out
}

/// A unit of the coefficient field: `zeta_d^a u^m`.
pub fn random_phase_scalar(rng: &mut impl Rng, ctx: &Ctx) -> CoeffScalar {
    let a = rng.random_range(0..ctx.d() as i64);
    let m: Vec<i64> = (0..ctx.s()).map(|_| rng.random_range(-2..=2i64)).collect();
    CoeffScalar::phase_monomial(ctx.field(), a, &m)
}

/// A general field element: a small random fraction, guaranteed nonzero
/// denominator.
pub fn random_coeff_scalar(rng: &mut impl Rng, ctx: &Ctx) -> CoeffScalar {
    let mut num = CoeffScalar::from_i64(ctx.field(), rng.random_range(-3..=3i64));
    for _ in 0..rng.random_range(0..=2usize) {
        num = num.add(&random_phase_scalar(rng, ctx));
    }
    let mut den = CoeffScalar::one(ctx.field());
    for _ in 0..rng.random_range(0..=1usize) {
        den = den.add(&random_phase_scalar(rng, ctx));
    }
    if den.is_zero() {
        den = CoeffScalar::one(ctx.field());
    }
    num.div(&den)
}

/// A scaling twist with angles from the context's phase group.
pub fn random_scaling(rng: &mut impl Rng, ctx: &Ctx) -> ScalingAutomorphism {
    let b = (0..ctx.n())
        .map(|_| {
            let c = rq(rng.random_range(0..ctx.d() as i64), ctx.d() as i64);
            let m = (0..ctx.s()).map(|_| rng.random_range(-2..=2i64)).collect();
            Angle::new(c, m)
        })
        .collect();
    ScalingAutomorphism::new(ctx, b)
}

pub fn random_wedge(rng: &mut impl Rng, n: usize, p: usize) -> WedgeIndex {
    let mut indices: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        indices.swap(i, j);
    }
    indices.truncate(p);
    indices.sort_unstable();
    WedgeIndex::new(indices)
}

pub fn random_koszul_element(
    rng: &mut impl Rng,
    ctx: &Ctx,
    degree: usize,
    terms: usize,
    max_exp: i64,
) -> KoszulElement {
    let mut out = KoszulElement::zero(ctx, degree);
    for _ in 0..terms {
        let wedge = random_wedge(rng, ctx.n(), degree);
        let a = random_mode(rng, ctx.n(), max_exp);
        let b = random_mode(rng, ctx.n(), max_exp);
        let coeff = CoeffScalar::from_i64(ctx.field(), rng.random_range(1..=3i64))
            .mul(&random_phase_scalar(rng, ctx));
        out = out.add(&KoszulElement::basis(ctx, a, wedge, b).scalar_mul(&coeff));
    }
    out
}

/// A random element of `GL_n(Z)` as a product of elementary shears, swaps
/// and sign flips.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut u = vec![vec![0i64; n]; n];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..steps {
        match rng.random_range(0..3u8) {
            0 => {
                // shear: row_i += c * row_j
                let i = rng.random_range(0..n);
                let mut j = rng.random_range(0..n);
                if n > 1 {
                    while j == i {
                        j = rng.random_range(0..n);
                    }
                    let c = rng.random_range(-2..=2i64);
                    for k in 0..n {
                        u[i][k] += c * u[j][k];
                    }
                }
            }
            1 => {
                let i = rng.random_range(0..n);
                let j = rng.random_range(0..n);
                u.swap(i, j);
            }
            _ => {
                let i = rng.random_range(0..n);
                for k in 0..n {
                    u[i][k] = -u[i][k];
                }
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice;
    use num_bigint::BigInt;
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_has_det_pm_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            for _ in 0..20 {
                let u = random_unimodular(&mut rng, n, 12);
                let m = lattice::mat_from_i64(&u);
                // determinant via column echelon: product of pivots must be 1
                let (h, _, pivots) = lattice::column_echelon(&m);
                assert_eq!(pivots.len(), n);
                let det: BigInt = pivots.iter().map(|&(r, c)| h[r][c].clone()).product();
                assert!(det.abs() == BigInt::from(1), "det {det}");
            }
        }
    }

    #[test]
    fn random_contexts_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for kind in [ContextKind::Generic, ContextKind::RootOfUnity, ContextKind::Mixed] {
            for n in 1..=4 {
                let ctx = random_context(&mut rng, n, kind);
                assert_eq!(ctx.n(), n);
            }
        }
    }
}
