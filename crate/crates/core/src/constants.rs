//! Dimension constants and exact half-integer Gamma values.
//!
//! Every constant used here has the shape `q * pi^(h/2)` with `q` rational,
//! so they are carried exactly as [`PiRational`] and only rounded to `f64`
//! on request.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{FueterError, Result};

/// `q * pi^(half_pow / 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiRational {
    q: BigRational,
    half_pow: i32,
}

impl PiRational {
    pub fn new(q: BigRational, half_pow: i32) -> Self {
        let half_pow = if q.is_zero() { 0 } else { half_pow };
        Self { q, half_pow }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(q, 0)
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `pi^(h/2)`.
    pub fn pi_power(half_pow: i32) -> Self {
        Self::new(BigRational::one(), half_pow)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.q
    }

    pub fn half_pow(&self) -> i32 {
        self.half_pow
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// True when the value is a rational number (no pi factor).
    pub fn is_rational(&self) -> bool {
        self.half_pow == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.q.to_f64().unwrap_or(f64::NAN) * PI.powf(self.half_pow as f64 / 2.0)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(FueterError::Domain("reciprocal of zero constant".into()));
        }
        Ok(Self::new(self.q.recip(), -self.half_pow))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Mul for &PiRational {
    type Output = PiRational;
    fn mul(self, rhs: Self) -> PiRational {
        PiRational::new(&self.q * &rhs.q, self.half_pow + rhs.half_pow)
    }
}

impl Mul for PiRational {
    type Output = PiRational;
    fn mul(self, rhs: Self) -> PiRational {
        &self * &rhs
    }
}

impl Div for &PiRational {
    type Output = PiRational;
    fn div(self, rhs: Self) -> PiRational {
        self * &rhs.recip().expect("division by zero constant")
    }
}

impl Div for PiRational {
    type Output = PiRational;
    fn div(self, rhs: Self) -> PiRational {
        &self / &rhs
    }
}

impl Neg for PiRational {
    type Output = PiRational;
    fn neg(self) -> PiRational {
        PiRational::new(-self.q, self.half_pow)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.half_pow {
            0 => write!(f, "{}", self.q),
            2 => write!(f, "{}*pi", self.q),
            h if h % 2 == 0 => write!(f, "{}*pi^{}", self.q, h / 2),
            h => write!(f, "{}*pi^({}/2)", self.q, h),
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// `Gamma(m / 2)` for integer `m`, exactly. Poles at `m <= 0` even.
pub fn gamma_half(m: i64) -> Result<PiRational> {
    if m > 0 && m % 2 == 0 {
        return Ok(PiRational::from_integer(factorial((m / 2 - 1) as u64)));
    }
    if m > 0 {
        // Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
        let k = ((m - 1) / 2) as u64;
        let q = ratio(factorial(2 * k), BigInt::from(4).pow(k as u32) * factorial(k));
        return Ok(PiRational::new(q, 1));
    }
    if m % 2 == 0 {
        return Err(FueterError::Domain(format!("Gamma pole at {}", m / 2)));
    }
    // Gamma(1/2 - j) = (-4)^j j! / (2j)! sqrt(pi)
    let j = ((1 - m) / 2) as u64;
    let q = ratio(BigInt::from(-4).pow(j as u32) * factorial(j), factorial(2 * j));
    Ok(PiRational::new(q, 1))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > crate::clifford::MAX_DIM {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "dimension must lie in 1..=20",
        });
    }
    Ok(())
}

/// Surface area of the unit sphere in R^{n+1}: `2 pi^{(n+1)/2} / Gamma((n+1)/2)`.
/// Defined for `n = 0` as well (two points).
pub fn omega(n: usize) -> PiRational {
    let g = gamma_half(n as i64 + 1).expect("positive Gamma argument");
    &(&PiRational::from_integer(2) * &PiRational::pi_power(n as i32 + 1)) / &g
}

/// `2^{n-1} Gamma((n+1)/2)^2`.
pub fn lambda(n: usize) -> PiRational {
    let g = gamma_half(n as i64 + 1).expect("positive Gamma argument");
    let two = PiRational::from_rational(ratio(BigInt::from(2).pow(n as u32), BigInt::from(2)));
    &two * &g.pow(2)
}

/// `(-1)^{n-1} lambda_n / (n-1)!`.
pub fn lambda_prime(n: usize) -> PiRational {
    let l = &lambda(n) / &PiRational::from_integer(factorial(n as u64 - 1));
    if n.is_multiple_of(2) {
        -l
    } else {
        l
    }
}

/// `Gamma((n+1)/2) / (sqrt(pi) Gamma(n/2))`.
pub fn c_const(n: usize) -> PiRational {
    let num = gamma_half(n as i64 + 1).expect("positive Gamma argument");
    let den = &PiRational::pi_power(1) * &gamma_half(n as i64).expect("positive Gamma argument");
    &num / &den
}

/// Floating-point view of the constants attached to a dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DimensionConstants {
    pub n: usize,
    pub omega_n: f64,
    pub lambda_n: f64,
    pub lambda_prime_n: f64,
    pub c_n: f64,
}

impl DimensionConstants {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            omega_n: omega(n).to_f64(),
            lambda_n: lambda(n).to_f64(),
            lambda_prime_n: lambda_prime(n).to_f64(),
            c_n: c_const(n).to_f64(),
        })
    }
}

/// `gamma_{k,alpha} = i^k pi^{(n+1)/2 - alpha} Gamma((k+alpha)/2) / Gamma((k+n+1-alpha)/2)`,
/// returned as the power of `i` (mod 4) and the exact real factor.
pub fn gamma_k_alpha_exact(n: usize, k: i64, alpha: i64) -> Result<(u8, PiRational)> {
    check_n(n)?;
    let num = gamma_half(k + alpha)?;
    let den = gamma_half(k + n as i64 + 1 - alpha)?;
    let pi = PiRational::pi_power(n as i32 + 1 - 2 * alpha as i32);
    Ok((k.rem_euclid(4) as u8, &(&pi * &num) / &den))
}

pub fn gamma_k_alpha(n: usize, k: i64, alpha: i64) -> Result<Complex64> {
    let (ip, v) = gamma_k_alpha_exact(n, k, alpha)?;
    let phase = match ip {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    Ok(phase * v.to_f64())
}

/// Generalized binomial coefficient `binom(-lambda, k)` for `lambda = (n+1)/2`,
/// as a float.
pub fn binom_neg_half(n: usize, k: usize) -> f64 {
    let lam = (n as f64 + 1.0) / 2.0;
    let mut b = 1.0;
    for j in 1..=k {
        b *= (-lam - j as f64 + 1.0) / j as f64;
    }
    b
}

/// Sign helper `(-1)^e`.
pub fn neg_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(if q.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}
