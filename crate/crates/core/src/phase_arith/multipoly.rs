//! Sparse multivariate polynomials in the transcendental generators
//! `u_1, ..., u_s` with coefficients in `Q(zeta_d)`, plus a recursive
//! primitive-PRS gcd. These are the raw material for the coefficient field:
//! scalars are reduced fractions of these polynomials.

use super::cyclotomic::{Cyclo, CycloField};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector, length = number of transcendentals `s`.
pub type Expo = Vec<u32>;

/// Sparse polynomial, keys ordered lexicographically by `BTreeMap`.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    terms: BTreeMap<Expo, Cyclo>,
    nvars: usize,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { terms: BTreeMap::new(), nvars }
    }

    pub fn constant(nvars: usize, c: Cyclo) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { terms, nvars }
    }

    pub fn one(f: &CycloField, nvars: usize) -> Self {
        Self::constant(nvars, f.one())
    }

    pub fn monomial(nvars: usize, expo: Expo, c: Cyclo) -> Self {
        assert_eq!(expo.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(expo, c);
        }
        MPoly { terms, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Cyclo)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self, f: &CycloField) -> Option<Cyclo> {
        if self.terms.is_empty() {
            return Some(f.zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    fn insert_add(&mut self, f: &CycloField, expo: Expo, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&expo) {
            Some(existing) => {
                let sum = f.add(existing, &c);
                if sum.is_zero() {
                    self.terms.remove(&expo);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(expo, c);
            }
        }
    }

    pub fn add(&self, f: &CycloField, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(f, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, f: &CycloField, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(f, e.clone(), f.neg(c));
        }
        out
    }

    pub fn neg(&self, f: &CycloField) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect(),
            nvars: self.nvars,
        }
    }

    pub fn mul(&self, f: &CycloField, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Expo = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_add(f, expo, f.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_cyclo(&self, f: &CycloField, c: &Cyclo) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), f.mul(x, c))).collect(),
            nvars: self.nvars,
        }
    }

    /// Leading term in the map's lexicographic order.
    pub fn leading(&self) -> Option<(&Expo, &Cyclo)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn exponent_floor(&self) -> Option<Expo> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Divide out the monomial `u^expo`; every term must be divisible.
    pub fn shift_down(&self, expo: &[u32]) -> Self {
        if expo.iter().all(|&e| e == 0) {
            return self.clone();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let shifted: Expo = e.iter().zip(expo).map(|(a, b)| a.checked_sub(*b).expect("monomial divides")).collect();
                    (shifted, c.clone())
                })
                .collect(),
            nvars: self.nvars,
        }
    }

    /// Exact division: `Some(q)` with `self = q * div`, or `None`.
    pub fn exact_div(&self, f: &CycloField, div: &Self) -> Option<Self> {
        assert_eq!(self.nvars, div.nvars);
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        let (de, dc) = {
            let (e, c) = div.leading().unwrap();
            (e.clone(), c.clone())
        };
        let dc_inv = f.inv(&dc);
        while let Some((re, rc)) = rem.leading() {
            let mut qe = Vec::with_capacity(self.nvars);
            for (x, y) in re.iter().zip(&de) {
                if x < y {
                    return None;
                }
                qe.push(x - y);
            }
            let qc = f.mul(rc, &dc_inv);
            let qterm = MPoly::monomial(self.nvars, qe, qc);
            rem = rem.sub(f, &qterm.mul(f, div));
            quot = quot.add(f, &qterm);
        }
        Some(quot)
    }

    /// Normalize so the lexicographically leading coefficient is 1.
    pub fn monic(&self, f: &CycloField) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    let inv = f.inv(c);
                    self.mul_cyclo(f, &inv)
                }
            }
        }
    }

    /// Total degree in variable `v`.
    fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// View as a univariate polynomial in `u_v`: coefficient of `u_v^k`.
    fn univar_coeffs(&self, f: &CycloField, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].insert_add(f, e2, c.clone());
        }
        out
    }

    fn from_univar(f: &CycloField, v: usize, coeffs: &[MPoly], nvars: usize) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                out.insert_add(f, e2, x.clone());
            }
        }
        out
    }

    /// Gcd, normalized monic in the leading coefficient. `gcd(0, g) = monic g`.
    pub fn gcd(&self, f: &CycloField, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        // Monomial fast path: the gcd with a single term is the shared
        // monomial content, no remainder sequence needed.
        if self.num_terms() == 1 || other.num_terms() == 1 {
            if self.is_zero() {
                return other.monic(f);
            }
            if other.is_zero() {
                return self.monic(f);
            }
            let ea = self.exponent_floor().unwrap();
            let eb = other.exponent_floor().unwrap();
            let expo: Expo = ea.iter().zip(&eb).map(|(a, b)| *a.min(b)).collect();
            return MPoly::monomial(self.nvars, expo, f.one());
        }
        gcd_rec(f, self, other, self.nvars)
    }

    /// Evaluate at complex points for the numeric layer; `us[v]` is the value
    /// of `u_{v+1}`.
    pub fn eval_complex(&self, f: &CycloField, us: &[num_complex::Complex64]) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = f.eval_complex(c);
            for (v, &k) in e.iter().enumerate() {
                term *= us[v].powi(k as i32);
            }
            acc += term;
        }
        acc
    }
}

/// Gcd treating the polynomials as univariate in variable `var - 1` over the
/// polynomial ring in the remaining variables, with the subresultant
/// remainder sequence to keep intermediate coefficients from swelling.
fn gcd_rec(f: &CycloField, a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    if a.is_zero() {
        return b.monic(f);
    }
    if b.is_zero() {
        return a.monic(f);
    }
    if var == 0 {
        // Both are nonzero constants.
        return MPoly::one(f, a.nvars);
    }
    let v = var - 1;
    if a.degree_in(v) == 0 && b.degree_in(v) == 0 {
        return gcd_rec(f, a, b, v);
    }
    let ac = a.univar_coeffs(f, v);
    let bc = b.univar_coeffs(f, v);
    let cont_a = content(f, &ac, v);
    let cont_b = content(f, &bc, v);
    let prim_a: Vec<MPoly> = ac.iter().map(|c| divide_out(f, c, &cont_a)).collect();
    let prim_b: Vec<MPoly> = bc.iter().map(|c| divide_out(f, c, &cont_b)).collect();
    let cont_gcd = gcd_rec(f, &cont_a, &cont_b, v);

    let (mut r0, mut r1) = if prim_a.len() >= prim_b.len() {
        (prim_a, prim_b)
    } else {
        (prim_b, prim_a)
    };
    // Subresultant PRS (Cohen, alg. 3.3.1): divisors g * h^delta are exact.
    let mut g = MPoly::one(f, a.nvars);
    let mut h = MPoly::one(f, a.nvars);
    loop {
        if r1.iter().all(|c| c.is_zero()) {
            break;
        }
        let delta = r0.len() - r1.len(); // deg r0 - deg r1 >= 0
        let rem = pseudo_rem(f, &r0, &r1, delta as u32);
        let divisor = g.mul(f, &pow(f, &h, delta as u32));
        let reduced: Vec<MPoly> = rem.iter().map(|c| divide_out(f, c, &divisor)).collect();
        r0 = r1;
        r1 = reduced;
        trim_univar(&mut r1);
        g = r0.last().expect("nonzero").clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => {
                let num = pow(f, &g, delta as u32);
                let den = pow(f, &h, (delta - 1) as u32);
                num.exact_div(f, &den).expect("subresultant division is exact")
            }
        };
    }
    let last = MPoly::from_univar(f, v, &r0, a.nvars);
    // One final content extraction makes the result primitive in u_v.
    let last_coeffs = last.univar_coeffs(f, v);
    let last_cont = content(f, &last_coeffs, v);
    let prim_gcd = divide_out(f, &last, &last_cont);
    prim_gcd.mul(f, &cont_gcd).monic(f)
}

fn pow(f: &CycloField, base: &MPoly, k: u32) -> MPoly {
    let mut acc = MPoly::one(f, base.nvars);
    for _ in 0..k {
        acc = acc.mul(f, base);
    }
    acc
}

fn divide_out(f: &CycloField, a: &MPoly, d: &MPoly) -> MPoly {
    if a.is_zero() {
        return a.clone();
    }
    a.exact_div(f, d).expect("divisor divides exactly")
}

/// Gcd of the coefficient list (the content of a univariate view).
fn content(f: &CycloField, coeffs: &[MPoly], _var: usize) -> MPoly {
    let mut acc = MPoly::zero(coeffs[0].nvars);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { c.monic(f) } else { acc.gcd(f, c) };
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    if acc.is_zero() {
        MPoly::one(f, coeffs[0].nvars)
    } else {
        acc
    }
}

/// Textbook pseudo-remainder of univariate views:
/// `lc(b)^(delta + 1) * a mod b` with `delta = deg a - deg b`.
fn pseudo_rem(f: &CycloField, a: &[MPoly], b: &[MPoly], delta: u32) -> Vec<MPoly> {
    let mut r: Vec<MPoly> = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut steps = 0u32;
    loop {
        trim_univar(&mut r);
        if r.is_empty() || r.len() - 1 < db {
            break;
        }
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r = lb * r - lr * u^(dr-db) * b
        for c in r.iter_mut() {
            *c = c.mul(f, &lb);
        }
        for k in 0..=db {
            let t = b[k].mul(f, &lr);
            r[k + dr - db] = r[k + dr - db].sub(f, &t);
        }
        steps += 1;
    }
    // Pad with lc(b) factors so the result is exactly lc(b)^(delta+1) a mod b,
    // which the subresultant divisions rely on.
    for _ in steps..=delta {
        for c in r.iter_mut() {
            *c = c.mul(f, &lb);
        }
    }
    r
}

fn trim_univar(v: &mut Vec<MPoly>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| if k == 1 { format!("u{}", v + 1) } else { format!("u{}^{}", v + 1, k) })
                    .collect();
                let cs = c.to_string();
                let coeff = if cs.contains('+') || cs.contains(' ') { format!("({cs})") } else { cs };
                if mono.is_empty() {
                    coeff
                } else if coeff == "1" {
                    mono.join("*")
                } else {
                    format!("{}*{}", coeff, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> CycloField {
        CycloField::new(1)
    }

    fn upow(f: &CycloField, v: usize, k: u32, nvars: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[v] = k;
        MPoly::monomial(nvars, e, f.one())
    }

    #[test]
    fn gcd_univariate() {
        let f = setup();
        // (u^2 - 1) and (u - 1): gcd = u - 1
        let u = upow(&f, 0, 1, 1);
        let one = MPoly::one(&f, 1);
        let u2 = upow(&f, 0, 2, 1);
        let a = u2.sub(&f, &one);
        let b = u.sub(&f, &one);
        let g = a.gcd(&f, &b);
        assert_eq!(g, b.monic(&f));
    }

    #[test]
    fn gcd_monomials() {
        let f = setup();
        let a = upow(&f, 0, 3, 2);
        let b = upow(&f, 0, 1, 2).mul(&f, &upow(&f, 1, 2, 2));
        let g = a.gcd(&f, &b);
        assert_eq!(g, upow(&f, 0, 1, 2));
    }

    #[test]
    fn gcd_bivariate_common_factor() {
        let f = setup();
        // a = (u1 + u2) * u1, b = (u1 + u2) * u2
        let u1 = upow(&f, 0, 1, 2);
        let u2 = upow(&f, 1, 1, 2);
        let s = u1.add(&f, &u2);
        let a = s.mul(&f, &u1);
        let b = s.mul(&f, &u2);
        let g = a.gcd(&f, &b);
        assert_eq!(g, s.monic(&f));
    }

    #[test]
    fn exact_div_roundtrip() {
        let f = CycloField::new(3);
        let z = f.zeta_pow(1);
        let u1 = upow(&f, 0, 1, 1);
        let a = u1.add(&f, &MPoly::constant(1, z));
        let b = u1.sub(&f, &MPoly::one(&f, 1));
        let prod = a.mul(&f, &b);
        assert_eq!(prod.exact_div(&f, &a).unwrap(), b);
        assert_eq!(prod.exact_div(&f, &b).unwrap(), a);
        assert!(a.exact_div(&f, &b).is_none());
    }
}
