//! The cyclotomic field `Q(zeta_d)` realized as `Q[x] / Phi_d(x)`.
//!
//! `Phi_d` is computed by the classical recursion: divide `x^d - 1` by
//! `Phi_e` for every proper divisor `e` of `d`. Using the cyclotomic
//! polynomial (rather than `x^d - 1`) is what makes this a field, which the
//! per-mode homology argument depends on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

pub type Rat = BigRational;

fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct QPoly(Vec<Rat>);

impl QPoly {
    fn normalize(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![Rat::zero(); n + 1];
        c[0] = -rat(1);
        c[n] = rat(1);
        QPoly(c)
    }

    #[allow(dead_code)]
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return QPoly(Vec::new());
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).normalize()
    }

    /// Exact division; panics if the division is not exact.
    fn exact_div(&self, div: &Self) -> Self {
        let mut rem = self.0.clone();
        assert!(!div.0.is_empty(), "division by zero polynomial");
        let dd = div.deg();
        let lead = div.0[dd].clone();
        if rem.len() < div.0.len() {
            assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
            return QPoly(Vec::new());
        }
        let qd = rem.len() - div.0.len();
        let mut quot = vec![Rat::zero(); qd + 1];
        for k in (0..=qd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, b) in div.0.iter().enumerate() {
                    let t = &c * b;
                    rem[k + i] -= t;
                }
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        QPoly(quot).normalize()
    }
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

fn cyclotomic_poly(d: u32) -> QPoly {
    if d == 1 {
        return QPoly(vec![-rat(1), rat(1)]);
    }
    let mut result = QPoly::x_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e == d {
            continue;
        }
        result = result.exact_div(&cyclotomic_poly(e));
    }
    result
}

/// Euler totient, the degree of `Phi_d`.
pub fn euler_phi(d: u32) -> usize {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        result = result / n * (n - 1);
    }
    result as usize
}

/// Shared context for arithmetic in `Q(zeta_d)`.
#[derive(Debug)]
pub struct CycloField {
    d: u32,
    deg: usize,
    /// Monic `Phi_d`, ascending, length `deg + 1`.
    phi: Vec<Rat>,
    /// `x^k mod Phi_d` for `k = deg .. 2*deg - 2`, each of length `deg`.
    power_table: Vec<Vec<Rat>>,
}

impl CycloField {
    pub fn new(d: u32) -> Self {
        assert!(d >= 1, "cyclotomic order must be positive");
        let phi_poly = cyclotomic_poly(d);
        let deg = phi_poly.deg();
        let mut phi = phi_poly.0;
        phi.resize(deg + 1, Rat::zero());
        // Power table by the recurrence x^{k+1} = x * x^k reduced.
        let mut power_table: Vec<Vec<Rat>> = Vec::new();
        if deg >= 1 {
            // x^deg = -(phi[0] + phi[1] x + ... + phi[deg-1] x^{deg-1})
            let base: Vec<Rat> = (0..deg).map(|i| -&phi[i]).collect();
            power_table.push(base);
            for _ in (deg + 1)..(2 * deg - 1).max(deg + 1) {
                let prev = power_table.last().unwrap().clone();
                let mut next = vec![Rat::zero(); deg];
                let carry = prev[deg - 1].clone();
                for i in (1..deg).rev() {
                    next[i] = prev[i - 1].clone();
                }
                if !carry.is_zero() {
                    let top = power_table[0].clone();
                    for i in 0..deg {
                        next[i] += &carry * &top[i];
                    }
                }
                power_table.push(next);
            }
        }
        CycloField { d, deg, phi, power_table }
    }

    pub fn order(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo { coeffs: vec![Rat::zero(); self.deg] }
    }

    pub fn one(&self) -> Cyclo {
        self.from_rat(rat(1))
    }

    pub fn from_rat(&self, r: Rat) -> Cyclo {
        let mut coeffs = vec![Rat::zero(); self.deg];
        coeffs[0] = r;
        Cyclo { coeffs }
    }

    pub fn from_i64(&self, v: i64) -> Cyclo {
        self.from_rat(rat(v))
    }

    /// `zeta_d^k`, with `k` taken modulo `d`.
    pub fn zeta_pow(&self, k: i64) -> Cyclo {
        let e = k.rem_euclid(self.d as i64) as usize;
        if e < self.deg {
            let mut coeffs = vec![Rat::zero(); self.deg];
            coeffs[e] = rat(1);
            return Cyclo { coeffs };
        }
        // e <= d - 1 <= 2*deg - 2 always holds (phi(d) > d/2 fails only for... )
        // not guaranteed, so reduce by repeated multiplication when needed.
        if e - self.deg < self.power_table.len() {
            return Cyclo { coeffs: self.power_table[e - self.deg].clone() };
        }
        let mut acc = self.one();
        let x = Cyclo {
            coeffs: {
                let mut c = vec![Rat::zero(); self.deg];
                if self.deg > 1 {
                    c[1] = rat(1);
                } else {
                    // deg == 1: x = the root itself, reduce via table
                    c[0] = -&self.phi[0] / &self.phi[1];
                }
                c
            },
        };
        for _ in 0..e {
            acc = self.mul(&acc, &x);
        }
        acc
    }

    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &Cyclo) -> Cyclo {
        Cyclo { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let deg = self.deg;
        if deg == 0 {
            return Cyclo { coeffs: Vec::new() };
        }
        let mut prod = vec![Rat::zero(); 2 * deg - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let mut out = prod[..deg].to_vec();
        for k in deg..(2 * deg - 1) {
            if prod[k].is_zero() {
                continue;
            }
            let red = &self.power_table[k - deg];
            for i in 0..deg {
                out[i] += &prod[k] * &red[i];
            }
        }
        Cyclo { coeffs: out }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    ///
    /// Panics on zero. Succeeds for every nonzero element because `Phi_d` is
    /// irreducible over Q.
    pub fn inv(&self, a: &Cyclo) -> Cyclo {
        assert!(!a.is_zero(), "inverse of zero in cyclotomic field");
        // Extended Euclid on (phi, a): find u with a*u = gcd = const mod phi.
        let mut r0: Vec<Rat> = self.phi.clone();
        let mut r1: Vec<Rat> = a.coeffs.clone();
        trim(&mut r1);
        let mut t0: Vec<Rat> = Vec::new(); // coefficient of `a` along r0
        let mut t1: Vec<Rat> = vec![rat(1)];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let t_next = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t_next;
        }
        assert!(
            !r1.is_empty(),
            "element shares a factor with the modulus; cyclotomic modulus must be irreducible"
        );
        let c = r1[0].clone();
        let inv_c = Rat::one() / c;
        let mut coeffs: Vec<Rat> = t1.iter().map(|x| x * &inv_c).collect();
        coeffs.resize(self.deg, Rat::zero());
        // t1 may have degree >= deg only if a was unreduced; our elements are reduced.
        Cyclo { coeffs }
    }

    pub fn div(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        self.mul(a, &self.inv(b))
    }

    /// Evaluate at `zeta_d = exp(2*pi*i/d)` in double precision.
    pub fn eval_complex(&self, a: &Cyclo) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.d as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in a.coeffs.iter().rev() {
            acc = acc * root + Complex64::new(rat_to_f64(c), 0.0);
        }
        acc
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    bigint_to_f64(n) / bigint_to_f64(d)
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // Good enough for the numeric layer: magnitudes stay tiny.
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    let mut out = out;
    trim(&mut out);
    out
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let qd = rem.len() - b.len();
    let mut quot = vec![Rat::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = &rem[k + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (i, y) in b.iter().enumerate() {
                let t = &c * y;
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// An element of `Q(zeta_d)`, reduced modulo `Phi_d`.
///
/// Coefficients have fixed length `CycloField::degree()`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cyclo {
    coeffs: Vec<Rat>,
}

impl Cyclo {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().map_or(false, |c| c.is_one()) && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.denom().is_one() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            };
            let part = match i {
                0 => cs,
                1 if c.is_one() => "z".to_string(),
                1 => format!("{cs}*z"),
                _ if c.is_one() => format!("z^{i}"),
                _ => format!("{cs}*z^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}
