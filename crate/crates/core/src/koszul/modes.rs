//! Exact carriers for the sets of Fourier modes contributing to a homology
//! group: integer affine equations plus congruences modulo the context
//! denominator. Membership is decided by direct evaluation; emptiness,
//! canonical comparison and box counting go through exact lattice algorithms.

use crate::lattice;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

/// `sum_j coeffs[j] * g_j = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeEquation {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

/// `sum_j coeffs[j] * g_j = rhs (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeCongruence {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub modulus: i64,
}

/// A set of modes `g` in `Z^n` cut out by equations and congruences. The set
/// is exactly the stated conditions; nothing is hidden, so membership of any
/// `g` is decidable by evaluating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeSet {
    pub n: usize,
    pub equations: Vec<ModeEquation>,
    pub congruences: Vec<ModeCongruence>,
}

impl ModeSet {
    /// The full lattice `Z^n`.
    pub fn full(n: usize) -> Self {
        ModeSet { n, equations: Vec::new(), congruences: Vec::new() }
    }

    pub fn new(n: usize, equations: Vec<ModeEquation>, congruences: Vec<ModeCongruence>) -> Self {
        for e in &equations {
            assert_eq!(e.coeffs.len(), n);
        }
        for c in &congruences {
            assert_eq!(c.coeffs.len(), n);
            assert!(c.modulus >= 1);
        }
        ModeSet { n, equations, congruences }
    }

    pub fn contains(&self, gamma: &[i64]) -> bool {
        assert_eq!(gamma.len(), self.n);
        for e in &self.equations {
            let v: i128 = e.coeffs.iter().zip(gamma).map(|(c, g)| *c as i128 * *g as i128).sum();
            if v != e.rhs as i128 {
                return false;
            }
        }
        for c in &self.congruences {
            let v: i128 = c.coeffs.iter().zip(gamma).map(|(c, g)| *c as i128 * *g as i128).sum();
            if (v - c.rhs as i128).rem_euclid(c.modulus as i128) != 0 {
                return false;
            }
        }
        true
    }

    /// Translate the set by `v`: `{g + v : g in self}`.
    pub fn shift(&self, v: &[i64]) -> Self {
        assert_eq!(v.len(), self.n);
        let dot = |coeffs: &[i64]| -> i128 {
            coeffs.iter().zip(v).map(|(c, x)| *c as i128 * *x as i128).sum()
        };
        let equations = self
            .equations
            .iter()
            .map(|e| ModeEquation {
                coeffs: e.coeffs.clone(),
                rhs: i64::try_from(e.rhs as i128 + dot(&e.coeffs)).expect("shifted rhs overflows i64"),
            })
            .collect();
        let congruences = self
            .congruences
            .iter()
            .map(|c| ModeCongruence {
                coeffs: c.coeffs.clone(),
                rhs: (c.rhs as i128 + dot(&c.coeffs)).rem_euclid(c.modulus as i128) as i64,
                modulus: c.modulus,
            })
            .collect();
        ModeSet { n: self.n, equations, congruences }
    }

    fn eq_matrix(&self) -> lattice::IntMat {
        self.equations
            .iter()
            .map(|e| e.coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    fn cong_matrix(&self) -> (lattice::IntMat, Vec<BigInt>, BigInt) {
        // All congruences in a context share the modulus d; tolerate mixed
        // moduli by scaling to the lcm.
        let modulus = self
            .congruences
            .iter()
            .map(|c| c.modulus)
            .fold(1i64, num_integer::lcm);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for c in &self.congruences {
            let scale = modulus / c.modulus;
            rows.push(c.coeffs.iter().map(|&x| BigInt::from(x * scale)).collect());
            rhs.push(BigInt::from(c.rhs * scale));
        }
        (rows, rhs, BigInt::from(modulus))
    }

    /// Some mode in the set, if the set is nonempty.
    pub fn particular(&self) -> Option<Vec<i64>> {
        let eqs = self.eq_matrix();
        let rhs_eq: Vec<BigInt> = self.equations.iter().map(|e| BigInt::from(e.rhs)).collect();
        let (cong, rhs_cong, modulus) = self.cong_matrix();
        let sol = lattice::constrained_solve(&eqs, &rhs_eq, &cong, &rhs_cong, &modulus, self.n)?;
        let out: Vec<i64> = sol
            .iter()
            .map(|x| i64::try_from(x.clone()).expect("particular mode fits i64"))
            .collect();
        debug_assert!(self.contains(&out));
        Some(out)
    }

    pub fn is_empty(&self) -> bool {
        self.particular().is_none()
    }

    /// Canonical basis (HNF) of the homogeneous solution lattice
    /// `{g : eq(g) = 0, cong(g) = 0 mod d}`. The full set, when nonempty, is
    /// `particular() + this lattice`.
    pub fn kernel_lattice(&self) -> Vec<Vec<i64>> {
        let eqs = self.eq_matrix();
        let (cong, _, modulus) = self.cong_matrix();
        let basis = lattice::constrained_kernel(&eqs, &cong, &modulus, self.n);
        basis
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| i64::try_from(x).expect("lattice basis entry fits i64"))
                    .collect()
            })
            .collect()
    }

    /// Set equality as subsets of `Z^n` (not representation equality):
    /// equal homogeneous lattices and mutually contained base points.
    pub fn same_set(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        match (self.particular(), other.particular()) {
            (None, None) => true,
            (Some(p), Some(q)) => {
                self.contains(&q) && other.contains(&p) && self.kernel_lattice() == other.kernel_lattice()
            }
            _ => false,
        }
    }

    /// Modes of the set within the centered box `|g|_inf <= radius`.
    pub fn enumerate_box(&self, radius: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![-radius; self.n];
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut k = self.n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < radius {
                    cur[k] += 1;
                    for x in cur.iter_mut().skip(k + 1) {
                        *x = -radius;
                    }
                    break;
                }
            }
        }
    }

    pub fn count_in_box(&self, radius: i64) -> usize {
        self.enumerate_box(radius).len()
    }
}

impl fmt::Display for ModeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.equations.is_empty() && self.congruences.is_empty() {
            return write!(f, "all of Z^{}", self.n);
        }
        let mut parts = Vec::new();
        for e in &self.equations {
            parts.push(format!("{} = {}", form_str(&e.coeffs), e.rhs));
        }
        for c in &self.congruences {
            parts.push(format!("{} = {} (mod {})", form_str(&c.coeffs), c.rhs, c.modulus));
        }
        write!(f, "{{ g in Z^{} : {} }}", self.n, parts.join(", "))
    }
}

fn form_str(coeffs: &[i64]) -> String {
    let mut parts = Vec::new();
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let var = format!("g{}", j + 1);
        parts.push(match c {
            1 => var,
            -1 => format!("-{var}"),
            _ => format!("{c}*{var}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_lattice_membership_and_count() {
        // g = 0 mod 3 in both coordinates
        let s = ModeSet::new(
            2,
            vec![],
            vec![
                ModeCongruence { coeffs: vec![1, 0], rhs: 0, modulus: 3 },
                ModeCongruence { coeffs: vec![0, 1], rhs: 0, modulus: 3 },
            ],
        );
        assert!(s.contains(&[3, -3]));
        assert!(!s.contains(&[1, 0]));
        // 7x7 box: coordinates in {-3, 0, 3}
        assert_eq!(s.count_in_box(3), 9);
        assert_eq!(s.kernel_lattice(), vec![vec![3, 0], vec![0, 3]]);
    }

    #[test]
    fn equations_single_point() {
        let s = ModeSet::new(
            2,
            vec![
                ModeEquation { coeffs: vec![0, 1], rhs: 0 },
                ModeEquation { coeffs: vec![-1, 0], rhs: 0 },
            ],
            vec![],
        );
        assert_eq!(s.particular(), Some(vec![0, 0]));
        assert!(s.kernel_lattice().is_empty());
        assert_eq!(s.count_in_box(2), 1);
    }

    #[test]
    fn shift_and_same_set() {
        let s = ModeSet::new(2, vec![ModeEquation { coeffs: vec![1, 1], rhs: 0 }], vec![]);
        let t = s.shift(&[1, 1]);
        assert!(t.contains(&[1, 1]));
        assert!(!t.same_set(&s));
        let back = t.shift(&[-1, -1]);
        assert!(back.same_set(&s));
    }

    #[test]
    fn empty_set_detected() {
        // 2 g1 = 1 has no integer solutions
        let s = ModeSet::new(1, vec![ModeEquation { coeffs: vec![2], rhs: 1 }], vec![]);
        assert!(s.is_empty());
        let t = ModeSet::new(1, vec![], vec![ModeCongruence { coeffs: vec![3], rhs: 1, modulus: 3 }]);
        assert!(t.is_empty());
    }
}
