//! The exact coefficient field `F = Q(zeta_d)(u_1, ..., u_s)`: reduced
//! fractions of multivariate polynomials over the cyclotomic field. All
//! homological linear algebra happens here. Zero-testing is exact: a scalar
//! is zero iff its numerator is the zero polynomial.

use super::cyclotomic::{Cyclo, CycloField, Rat};
use super::multipoly::MPoly;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// Shared field description: the cyclotomic order and transcendental count.
#[derive(Debug)]
pub struct FieldCtx {
    pub cyclo: CycloField,
    pub nvars: usize,
}

impl FieldCtx {
    pub fn new(d: u32, s: usize) -> Arc<Self> {
        Arc::new(FieldCtx { cyclo: CycloField::new(d), nvars: s })
    }
}

/// An element of `F`, stored as `num / den` with `gcd(num, den) = 1` and a
/// lexicographically monic denominator. Equality is structural.
#[derive(Clone, Debug)]
pub struct CoeffScalar {
    field: Arc<FieldCtx>,
    num: MPoly,
    den: MPoly,
}

impl PartialEq for CoeffScalar {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for CoeffScalar {}

impl CoeffScalar {
    pub fn zero(field: &Arc<FieldCtx>) -> Self {
        CoeffScalar {
            field: field.clone(),
            num: MPoly::zero(field.nvars),
            den: MPoly::one(&field.cyclo, field.nvars),
        }
    }

    pub fn one(field: &Arc<FieldCtx>) -> Self {
        CoeffScalar {
            field: field.clone(),
            num: MPoly::one(&field.cyclo, field.nvars),
            den: MPoly::one(&field.cyclo, field.nvars),
        }
    }

    pub fn from_cyclo(field: &Arc<FieldCtx>, c: Cyclo) -> Self {
        CoeffScalar {
            field: field.clone(),
            num: MPoly::constant(field.nvars, c),
            den: MPoly::one(&field.cyclo, field.nvars),
        }
    }

    pub fn from_i64(field: &Arc<FieldCtx>, v: i64) -> Self {
        Self::from_cyclo(field, field.cyclo.from_i64(v))
    }

    pub fn from_rat(field: &Arc<FieldCtx>, r: Rat) -> Self {
        Self::from_cyclo(field, field.cyclo.from_rat(r))
    }

    /// The unit `zeta_d^k * u_1^{m_1} ... u_s^{m_s}`.
    pub fn phase_monomial(field: &Arc<FieldCtx>, zeta_exp: i64, m: &[i64]) -> Self {
        assert_eq!(m.len(), field.nvars, "transcendental exponent length mismatch");
        let f = &field.cyclo;
        let c = f.zeta_pow(zeta_exp);
        let pos: Vec<u32> = m.iter().map(|&x| if x > 0 { x as u32 } else { 0 }).collect();
        let neg: Vec<u32> = m.iter().map(|&x| if x < 0 { (-x) as u32 } else { 0 }).collect();
        CoeffScalar {
            field: field.clone(),
            num: MPoly::monomial(field.nvars, pos, c),
            den: MPoly::monomial(field.nvars, neg, f.one()),
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn reduced(field: Arc<FieldCtx>, num: MPoly, den: MPoly) -> Self {
        let f = &field.cyclo;
        assert!(!den.is_zero(), "zero denominator in coefficient field");
        if num.is_zero() {
            return Self::zero(&field);
        }
        // When either side is a single term, the gcd is just the shared
        // monomial content; this covers all phase arithmetic without the
        // recursive gcd.
        let (num, den) = if den.num_terms() == 1 || num.num_terms() == 1 {
            let den_expo = den.exponent_floor().unwrap();
            let num_expo = num.exponent_floor().unwrap();
            let common: Vec<u32> = den_expo.iter().zip(&num_expo).map(|(a, b)| *a.min(b)).collect();
            (num.shift_down(&common), den.shift_down(&common))
        } else {
            let g = num.gcd(f, &den);
            let num = num.exact_div(f, &g).expect("gcd divides numerator");
            let den = den.exact_div(f, &g).expect("gcd divides denominator");
            (num, den)
        };
        // Make the denominator monic so the representation is canonical.
        let (_, lead) = den.leading().expect("nonzero denominator");
        if lead.is_one() {
            CoeffScalar { field, num, den }
        } else {
            let inv = f.inv(lead);
            let num = num.mul_cyclo(f, &inv);
            let den = den.mul_cyclo(f, &inv);
            CoeffScalar { field, num, den }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field.cyclo;
        // Fast path: common denominator 1.
        if self.den == other.den {
            return Self::reduced(self.field.clone(), self.num.add(f, &other.num), self.den.clone());
        }
        let num = self.num.mul(f, &other.den).add(f, &other.num.mul(f, &self.den));
        let den = self.den.mul(f, &other.den);
        Self::reduced(self.field.clone(), num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CoeffScalar {
            field: self.field.clone(),
            num: self.num.neg(&self.field.cyclo),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field.cyclo;
        let num = self.num.mul(f, &other.num);
        let den = self.den.mul(f, &other.den);
        Self::reduced(self.field.clone(), num, den)
    }

    /// Multiplicative inverse. Panics on zero, like integer division by zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in coefficient field");
        Self::reduced(self.field.clone(), self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    /// Evaluate under `zeta_d -> exp(2 pi i / d)`, `u_t -> exp(2 pi i tau_t)`.
    pub fn eval_complex(&self, tau_hat: &[f64]) -> Complex64 {
        assert_eq!(tau_hat.len(), self.field.nvars, "need one numeric stand-in per transcendental");
        let us: Vec<Complex64> = tau_hat
            .iter()
            .map(|&t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t))
            .collect();
        let f = &self.field.cyclo;
        let n = self.num.eval_complex(f, &us);
        let d = self.den.eval_complex(f, &us);
        n / d
    }
}

impl fmt::Display for CoeffScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den.num_terms() == 1
            && self.den.leading().map_or(false, |(e, c)| e.iter().all(|&x| x == 0) && c.is_one());
        if den_is_one {
            write!(f, "{}", self.num)
        } else if self.den.num_terms() == 1 {
            write!(f, "{}/{}", maybe_paren(&self.num.to_string()), maybe_paren(&self.den.to_string()))
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

fn maybe_paren(s: &str) -> String {
    if s.contains('+') || s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_monomial_negative_exponents() {
        let field = FieldCtx::new(1, 1);
        let a = CoeffScalar::phase_monomial(&field, 0, &[3]);
        let b = CoeffScalar::phase_monomial(&field, 0, &[-3]);
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn inverse_roundtrip() {
        let field = FieldCtx::new(3, 1);
        let u = CoeffScalar::phase_monomial(&field, 0, &[1]);
        let one = CoeffScalar::one(&field);
        let a = one.sub(&u); // 1 - u, nonzero
        assert!(!a.is_zero());
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn zero_test_is_exact() {
        let field = FieldCtx::new(4, 0);
        let z = CoeffScalar::phase_monomial(&field, 2, &[]); // zeta_4^2 = -1
        let sum = z.add(&CoeffScalar::one(&field));
        assert!(sum.is_zero());
    }

    #[test]
    fn canonical_equality_after_mixed_routes() {
        let field = FieldCtx::new(1, 1);
        let u = CoeffScalar::phase_monomial(&field, 0, &[1]);
        let one = CoeffScalar::one(&field);
        // (1 - u^2)/(1 + u) == 1 - u
        let lhs = one.sub(&u.mul(&u)).div(&one.add(&u));
        let rhs = one.sub(&u);
        assert_eq!(lhs, rhs);
    }
}
