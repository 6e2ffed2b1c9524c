//! The deformation data: an exact presentation of the matrix `q` through its
//! angles. Entry `theta[i][j] = C[i][j] + sum_t M_t[i][j] * tau_t` encodes
//! `q_ij = exp(2 pi i * theta[i][j])`; skew-symmetry with zero diagonal
//! encodes `q_ij = q_ji^{-1}` and `q_ii = 1`.

use super::angle::{Angle, Rat};
use super::scalar::{CoeffScalar, FieldCtx};
use num_bigint::BigInt;
use num_traits::{Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ContextError {
    #[error("number of generators must be at least 1")]
    EmptyContext,
    #[error("common denominator d must be at least 1")]
    BadDenominator,
    #[error("rational angle matrix must be {n} x {n}")]
    BadRationalShape { n: usize },
    #[error("irrational coefficient matrix {t} must be {n} x {n}")]
    BadIntegerShape { t: usize, n: usize },
    #[error("rational angle C[{i}][{j}] = {value} has denominator not dividing d = {d}")]
    DenominatorMismatch { i: usize, j: usize, value: String, d: u32 },
    #[error("rational angle matrix is not skew-symmetric at ({i},{j})")]
    NotSkewRational { i: usize, j: usize },
    #[error("rational angle matrix has nonzero diagonal at {i}")]
    NonzeroDiagonalRational { i: usize },
    #[error("irrational coefficient matrix {t} is not skew-symmetric at ({i},{j})")]
    NotSkewInteger { t: usize, i: usize, j: usize },
    #[error("irrational coefficient matrix {t} has nonzero diagonal at {i}")]
    NonzeroDiagonalInteger { t: usize, i: usize },
}

/// Deformation matrix of a quantum torus, together with the derived
/// coefficient field. This is the ambient context threaded through every
/// exact computation.
#[derive(Debug)]
pub struct ThetaMatrix {
    n: usize,
    d: u32,
    s: usize,
    /// Rational angle parts, skew with zero diagonal, denominators divide `d`.
    c: Vec<Vec<Rat>>,
    /// Integer coefficients of each formal irrational, skew with zero diagonal.
    m: Vec<Vec<Vec<i64>>>,
    field: Arc<FieldCtx>,
}

pub type Ctx = Arc<ThetaMatrix>;

impl ThetaMatrix {
    pub fn new(d: u32, c: Vec<Vec<Rat>>, m: Vec<Vec<Vec<i64>>>) -> Result<Ctx, ContextError> {
        let n = c.len();
        if n == 0 {
            return Err(ContextError::EmptyContext);
        }
        if d == 0 {
            return Err(ContextError::BadDenominator);
        }
        if c.iter().any(|row| row.len() != n) {
            return Err(ContextError::BadRationalShape { n });
        }
        let s = m.len();
        for (t, mt) in m.iter().enumerate() {
            if mt.len() != n || mt.iter().any(|row| row.len() != n) {
                return Err(ContextError::BadIntegerShape { t: t + 1, n });
            }
        }
        let big_d = BigInt::from(d);
        for i in 0..n {
            if !c[i][i].is_zero() {
                return Err(ContextError::NonzeroDiagonalRational { i });
            }
            for j in 0..n {
                if (&c[i][j] * Rat::from_integer(big_d.clone())).is_integer() == false {
                    return Err(ContextError::DenominatorMismatch {
                        i,
                        j,
                        value: format!("{}/{}", c[i][j].numer(), c[i][j].denom()),
                        d,
                    });
                }
                if &c[i][j] + &c[j][i] != Rat::zero() {
                    return Err(ContextError::NotSkewRational { i, j });
                }
            }
        }
        for (t, mt) in m.iter().enumerate() {
            for i in 0..n {
                if mt[i][i] != 0 {
                    return Err(ContextError::NonzeroDiagonalInteger { t: t + 1, i });
                }
                for j in 0..n {
                    if mt[i][j] + mt[j][i] != 0 {
                        return Err(ContextError::NotSkewInteger { t: t + 1, i, j });
                    }
                }
            }
        }
        let field = FieldCtx::new(d, s);
        Ok(Arc::new(ThetaMatrix { n, d, s, c, m, field }))
    }

    /// Commutative context: all angles trivial.
    pub fn commutative(n: usize) -> Ctx {
        let c = vec![vec![Rat::zero(); n]; n];
        ThetaMatrix::new(1, c, Vec::new()).expect("trivial context is valid")
    }

    /// Context from a single integer skew form times one formal irrational.
    pub fn from_single_form(m1: Vec<Vec<i64>>) -> Result<Ctx, ContextError> {
        let n = m1.len();
        let c = vec![vec![Rat::zero(); n]; n];
        ThetaMatrix::new(1, c, vec![m1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rational_part(&self) -> &Vec<Vec<Rat>> {
        &self.c
    }

    pub fn integer_forms(&self) -> &Vec<Vec<Vec<i64>>> {
        &self.m
    }

    /// The angle `theta[i][j]`.
    pub fn theta(&self, i: usize, j: usize) -> Angle {
        Angle::new(self.c[i][j].clone(), self.m.iter().map(|mt| mt[i][j]).collect())
    }

    /// The bilinear commutation form `B(alpha, beta) = alpha^T theta beta`,
    /// governing `x^alpha x^beta = exp(2 pi i B(alpha, beta)) x^beta x^alpha`.
    /// Accumulation happens in 128 bits so oversized inputs fail loudly
    /// instead of wrapping.
    pub fn commutation_angle(&self, alpha: &[i64], beta: &[i64]) -> Angle {
        assert_eq!(alpha.len(), self.n, "multi-index length mismatch");
        assert_eq!(beta.len(), self.n, "multi-index length mismatch");
        let mut c = Rat::zero();
        for i in 0..self.n {
            if alpha[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if beta[j] == 0 || self.c[i][j].is_zero() {
                    continue;
                }
                c += &self.c[i][j] * Rat::from_integer(BigInt::from(alpha[i]) * BigInt::from(beta[j]));
            }
        }
        let m = self
            .m
            .iter()
            .map(|mt| {
                let mut acc: i128 = 0;
                for i in 0..self.n {
                    for j in 0..self.n {
                        acc += alpha[i] as i128 * mt[i][j] as i128 * beta[j] as i128;
                    }
                }
                i64::try_from(acc).expect("commutation coefficient overflows i64")
            })
            .collect();
        Angle::new(c, m)
    }

    /// Normal-ordering phase `p(alpha, beta) = sum_{i > j} theta[i][j] alpha_i beta_j`
    /// with `x^alpha * x^beta = exp(2 pi i p(alpha, beta)) x^{alpha + beta}`.
    pub fn product_phase(&self, alpha: &[i64], beta: &[i64]) -> Angle {
        assert_eq!(alpha.len(), self.n, "multi-index length mismatch");
        assert_eq!(beta.len(), self.n, "multi-index length mismatch");
        let mut c = Rat::zero();
        let mut m = vec![0i128; self.s];
        for i in 0..self.n {
            if alpha[i] == 0 {
                continue;
            }
            for j in 0..i {
                if beta[j] == 0 {
                    continue;
                }
                let w = alpha[i] as i128 * beta[j] as i128;
                if !self.c[i][j].is_zero() {
                    c += &self.c[i][j] * Rat::from_integer(BigInt::from(w));
                }
                for (t, mt) in self.m.iter().enumerate() {
                    m[t] += mt[i][j] as i128 * w;
                }
            }
        }
        let m = m
            .into_iter()
            .map(|x| i64::try_from(x).expect("ordering phase coefficient overflows i64"))
            .collect();
        Angle::new(c, m)
    }

    /// The angle vector `(theta * gamma)_i`.
    pub fn theta_apply(&self, gamma: &[i64]) -> Vec<Angle> {
        assert_eq!(gamma.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut c = Rat::zero();
                let mut m = vec![0i128; self.s];
                for j in 0..self.n {
                    if gamma[j] == 0 {
                        continue;
                    }
                    if !self.c[i][j].is_zero() {
                        c += &self.c[i][j] * Rat::from_integer(BigInt::from(gamma[j]));
                    }
                    for (t, mt) in self.m.iter().enumerate() {
                        m[t] += mt[i][j] as i128 * gamma[j] as i128;
                    }
                }
                let m = m
                    .into_iter()
                    .map(|x| i64::try_from(x).expect("angle coefficient overflows i64"))
                    .collect();
                Angle::new(c, m)
            })
            .collect()
    }

    /// Realize `exp(2 pi i * a)` in the coefficient field as
    /// `zeta_d^{c d} * prod_t u_t^{m_t}`.
    ///
    /// Panics if `c * d` is not an integer: every angle reachable from integer
    /// monomial operations in this context satisfies the precondition, so a
    /// violation signals a context or denominator bug upstream.
    pub fn angle_to_scalar(&self, a: &Angle) -> CoeffScalar {
        assert_eq!(a.nvars(), self.s, "angle from a different context");
        let cd = &a.c * Rat::from_integer(BigInt::from(self.d));
        assert!(
            cd.is_integer(),
            "angle {} has rational part with denominator not dividing d = {}",
            a,
            self.d
        );
        let k_big = cd.to_integer().mod_floor(&BigInt::from(self.d));
        let k = i64::try_from(k_big).expect("reduced zeta exponent fits i64");
        CoeffScalar::phase_monomial(&self.field, k, &a.m)
    }

    pub fn scalar_zero(&self) -> CoeffScalar {
        CoeffScalar::zero(&self.field)
    }

    pub fn scalar_one(&self) -> CoeffScalar {
        CoeffScalar::one(&self.field)
    }

    /// The conjugated context with deformation angles `U^T theta U` for a
    /// unimodular `U`: the presentation after the basis change
    /// `x^g -> x^{U g}` of the mode lattice. Skewness is preserved and the
    /// common denominator is unchanged.
    pub fn conjugate(&self, u: &[Vec<i64>]) -> Result<Ctx, ContextError> {
        let n = self.n;
        assert_eq!(u.len(), n);
        assert!(u.iter().all(|row| row.len() == n));
        let mut c = vec![vec![Rat::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = Rat::zero();
                for i in 0..n {
                    if u[i][a] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        if u[j][b] == 0 || self.c[i][j].is_zero() {
                            continue;
                        }
                        acc += &self.c[i][j] * Rat::from_integer(BigInt::from(u[i][a]) * BigInt::from(u[j][b]));
                    }
                }
                c[a][b] = acc;
            }
        }
        let m = self
            .m
            .iter()
            .map(|mt| {
                let mut out = vec![vec![0i64; n]; n];
                for a in 0..n {
                    for b in 0..n {
                        let mut acc: i128 = 0;
                        for i in 0..n {
                            for j in 0..n {
                                acc += u[i][a] as i128 * mt[i][j] as i128 * u[j][b] as i128;
                            }
                        }
                        out[a][b] = i64::try_from(acc).expect("conjugated form entry overflows i64");
                    }
                }
                out
            })
            .collect();
        ThetaMatrix::new(self.d, c, m)
    }
}

use num_integer::Integer;

/// Convenience: exact rational from a pair.
pub fn rq(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Skew matrix of rationals from integer pairs `(num, den)`.
pub fn rat_mat(entries: &[&[(i64, i64)]]) -> Vec<Vec<Rat>> {
    entries
        .iter()
        .map(|row| row.iter().map(|&(n, d)| rq(n, d)).collect())
        .collect()
}
