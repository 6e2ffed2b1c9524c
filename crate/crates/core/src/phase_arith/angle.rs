//! Elements of the additive phase group, in units of full turns: a rational
//! part plus integer multiples of the declared formal irrationals
//! `tau_1, ..., tau_s`. An angle is trivial exactly when it represents an
//! integer number of turns, i.e. `exp(2 pi i * angle) = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Angle {
    /// Rational part, in full turns. Compared modulo 1; kept exact, not canonicalized.
    pub c: Rat,
    /// Integer coefficients of the formal irrationals, in full turns.
    pub m: Vec<i64>,
}

impl Angle {
    pub fn zero(s: usize) -> Self {
        Angle { c: Rat::zero(), m: vec![0; s] }
    }

    pub fn from_rat(c: Rat, s: usize) -> Self {
        Angle { c, m: vec![0; s] }
    }

    pub fn new(c: Rat, m: Vec<i64>) -> Self {
        Angle { c, m }
    }

    pub fn nvars(&self) -> usize {
        self.m.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m.len(), other.m.len(), "angle components from different contexts");
        Angle {
            c: &self.c + &other.c,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Angle { c: -&self.c, m: self.m.iter().map(|&x| -x).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Angle {
            c: &self.c * Rat::from_integer(BigInt::from(k)),
            m: self
                .m
                .iter()
                .map(|x| {
                    i64::try_from(*x as i128 * k as i128).expect("scaled angle coefficient overflows i64")
                })
                .collect(),
        }
    }

    /// True iff `exp(2 pi i * self) = 1`: no irrational part and a whole
    /// number of turns. The formal irrationals are declared Q-linearly
    /// independent together with 1, so any nonzero `m` is nontrivial.
    pub fn is_trivial(&self) -> bool {
        self.m.iter().all(|&x| x == 0) && self.c.is_integer()
    }

    /// Group equality: equal irrational parts, rational parts differing by an integer.
    pub fn group_eq(&self, other: &Self) -> bool {
        self.sub(other).is_trivial()
    }

    /// Numeric value in turns, given stand-ins for the irrationals.
    pub fn eval_turns(&self, tau_hat: &[f64]) -> f64 {
        assert_eq!(tau_hat.len(), self.m.len());
        let mut acc = rat_to_f64(&self.c);
        for (k, t) in self.m.iter().zip(tau_hat) {
            acc += *k as f64 * t;
        }
        acc
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.c.is_zero() {
            parts.push(if self.c.denom().is_one() || self.c.numer().is_zero() {
                self.c.numer().to_string()
            } else {
                format!("{}/{}", self.c.numer(), self.c.denom())
            });
        }
        for (i, &k) in self.m.iter().enumerate() {
            if k != 0 {
                parts.push(match k {
                    1 => format!("t{}", i + 1),
                    -1 => format!("-t{}", i + 1),
                    _ => format!("{}*t{}", k, i + 1),
                });
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn rq(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn full_turn_is_trivial() {
        // 1/3 + 2/3 = 1 full turn
        let a = Angle::new(rq(1, 3), vec![0]);
        let b = Angle::new(rq(2, 3), vec![0]);
        let sum = a.add(&b);
        assert!(sum.is_trivial());
        assert!(sum.group_eq(&Angle::zero(1)));
    }

    #[test]
    fn inverse_pair_cancels() {
        let a = Angle::new(rq(0, 1), vec![1]);
        let b = Angle::new(rq(0, 1), vec![-1]);
        assert!(a.add(&b).is_trivial());
    }

    #[test]
    fn componentwise_addition() {
        let a = Angle::new(rq(1, 4), vec![2]);
        let b = Angle::new(rq(1, 4), vec![3]);
        assert_eq!(a.add(&b), Angle::new(rq(1, 2), vec![5]));
    }

    #[test]
    fn triviality_cases() {
        assert!(Angle::new(rq(2, 1), vec![0]).is_trivial());
        assert!(!Angle::new(rq(1, 2), vec![0]).is_trivial());
        // tau_2 is irrational by declaration
        assert!(!Angle::new(rq(0, 1), vec![0, 1]).is_trivial());
    }
}
