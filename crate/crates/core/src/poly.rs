//! Sparse bivariate polynomials in `(x0, r)` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constants::rational_to_f64;

/// Map from exponent pair `(i, j)` of `x0^i r^j` to a nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x0() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn r() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// `x0^2 + r^2`.
    pub fn d() -> Self {
        let mut p = Self::monomial(BigRational::one(), 2, 0);
        p.add_term(0, 2, BigRational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// True when every term has `r`-exponent of the given parity (0 even, 1 odd).
    pub fn has_r_parity(&self, parity: u32) -> bool {
        self.terms.keys().all(|(_, j)| j % 2 == parity)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies by `x0^a r^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    pub fn d_x0(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *i > 0 {
                out.add_term(i - 1, *j, c * int(*i as i64));
            }
        }
        out
    }

    pub fn d_r(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *j > 0 {
                out.add_term(*i, j - 1, c * int(*j as i64));
            }
        }
        out
    }

    /// Exact division by `r`; `None` if some term has no `r` factor.
    pub fn div_r(&self) -> Option<Self> {
        if self.terms.keys().any(|(_, j)| *j == 0) {
            return None;
        }
        Some(Self {
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| ((*i, j - 1), c.clone()))
                .collect(),
        })
    }

    /// Exact division by `x0^2 + r^2`; `None` if not divisible.
    ///
    /// `d` is monic in `x0`, so reducing every term of `x0`-degree at least 2
    /// with `x0^2 = d - r^2` leaves a unique remainder of `x0`-degree at most 1.
    pub fn div_d(&self) -> Option<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero();
        loop {
            let top = rem
                .terms
                .iter()
                .filter(|((i, _), _)| *i >= 2)
                .max_by_key(|((i, _), _)| *i)
                .map(|(k, c)| (*k, c.clone()));
            let Some(((i, j), c)) = top else { break };
            quot.add_term(i - 2, j, c.clone());
            rem.add_term(i, j, -c.clone());
            rem.add_term(i - 2, j + 2, -c);
        }
        rem.is_zero().then_some(quot)
    }

    pub fn eval_f64(&self, x0: f64, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|((i, j), c)| rational_to_f64(c) * x0.powi(*i as i32) * r.powi(*j as i32))
            .sum()
    }

    pub fn eval_exact(&self, x0: &BigRational, r: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, ((i, j), c)| {
            acc + c * num_traits::pow(x0.clone(), *i as usize) * num_traits::pow(r.clone(), *j as usize)
        })
    }

    /// `P(x0 / d, r / d) * d^deg` as a polynomial, where `deg >= degree()`.
    pub fn invert_homogenize(&self, deg: u32) -> Self {
        let d = Self::d();
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            let t = Self::monomial(c.clone(), *i, *j).mul(&d.pow(deg - i - j));
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if *i > 0 {
                write!(f, "*x0^{i}")?;
            }
            if *j > 0 {
                write!(f, "*r^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives() {
        assert!(Poly::constant(int(5)).d_x0().is_zero());
        let r2 = Poly::monomial(int(1), 0, 2);
        assert_eq!(r2.d_r(), Poly::monomial(int(2), 0, 1));
    }

    #[test]
    fn divide_by_d() {
        let d = Poly::d();
        let p = Poly::from_terms([((3, 1), int(2)), ((0, 0), int(-7)), ((1, 4), int(3))]);
        assert_eq!(p.mul(&d).div_d(), Some(p.clone()));
        assert_eq!(p.mul(&d).mul(&d).div_d().and_then(|q| q.div_d()), Some(p));
        assert_eq!(Poly::x0().div_d(), None);
        assert_eq!(Poly::monomial(int(1), 0, 2).div_d(), None);
        assert_eq!(Poly::zero().div_d(), Some(Poly::zero()));
    }

    #[test]
    fn divide_by_r() {
        let p = Poly::from_terms([((1, 1), int(2)), ((0, 3), int(1))]);
        assert_eq!(p.div_r(), Some(Poly::from_terms([((1, 0), int(2)), ((0, 2), int(1))])));
        assert_eq!(Poly::one().div_r(), None);
    }

    #[test]
    fn evaluation_and_inversion() {
        let p = Poly::from_terms([((2, 0), int(1)), ((0, 2), int(-1))]);
        assert_eq!(p.eval_exact(&int(2), &int(1)), int(3));
        // P(x0/d, r/d) d^2 for P = x0^2 - r^2 is x0^2 - r^2 again
        assert_eq!(p.invert_homogenize(2), p);
        assert_eq!(Poly::x0().invert_homogenize(1), Poly::x0());
        assert_eq!(Poly::one().invert_homogenize(1), Poly::d());
    }
}
