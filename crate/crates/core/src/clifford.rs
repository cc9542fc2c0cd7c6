//! Arithmetic in the real Clifford algebra R_{0,n}.
//!
//! Generators satisfy `e_i^2 = -1` and `e_i e_j = -e_j e_i` for `i != j`.
//! A basis blade `e_S` is addressed by a bitmask whose bit `j - 1` marks the
//! presence of `e_j`; the empty mask is the scalar unit. Coefficients are
//! generic over [`Scalar`] so the same code runs on exact rationals (for
//! algebraic identities) and on `f64` (for quadrature paths).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{FueterError, Result};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 20;

/// Coefficient field for multivectors.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Square root when it exists in the field (always for `f64` on
    /// non-negative input, only for perfect squares for rationals).
    fn try_sqrt(&self) -> Option<Self>;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        (&num * &num == *self.numer() && &den * &den == *self.denom())
            .then(|| BigRational::new(num, den))
    }
}

/// Product of two basis blades: `e_A e_B = sign * e_{A xor B}`.
///
/// The sign counts the transpositions needed to bring the product into
/// ascending order, plus one factor of -1 per generator present in both.
pub fn blade_mul(a: u32, b: u32) -> (i8, u32) {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    swaps += (a & b).count_ones();
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, a ^ b)
}

/// [`blade_mul`] with validation of both masks against dimension `n`.
pub fn blade_product(n: usize, a: u32, b: u32) -> Result<(i8, u32)> {
    check_mask(n, a)?;
    check_mask(n, b)?;
    Ok(blade_mul(a, b))
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "Clifford dimension must lie in 1..=20",
        });
    }
    Ok(())
}

fn check_mask(n: usize, mask: u32) -> Result<()> {
    if n < 32 && mask >> n != 0 {
        return Err(FueterError::InvalidMask { mask, n });
    }
    Ok(())
}

fn grade_of(mask: u32) -> u32 {
    mask.count_ones()
}

/// An element of R_{0,n}, stored sparsely as blade mask -> coefficient.
#[derive(Clone, Debug)]
pub struct Multivector<T> {
    n: usize,
    coeffs: BTreeMap<u32, T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn scalar(n: usize, value: T) -> Result<Self> {
        Self::blade(n, 0, value)
    }

    /// The generator `e_j`, `1 <= j <= n`.
    pub fn basis(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(FueterError::InvalidDimension {
                n,
                reason: "generator index out of range",
            });
        }
        Self::blade(n, 1 << (j - 1), T::one())
    }

    pub fn blade(n: usize, mask: u32, value: T) -> Result<Self> {
        let mut mv = Self::zero(n)?;
        check_mask(n, mask)?;
        mv.coeffs.insert(mask, value);
        Ok(mv)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u32, T)>) -> Result<Self> {
        let mut mv = Self::zero(n)?;
        for (mask, value) in terms {
            check_mask(n, mask)?;
            mv.add_term(mask, value);
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mask: u32) -> T {
        self.coeffs.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c))
    }

    pub fn scalar_part(&self) -> T {
        self.coeff(0)
    }

    /// Projection `[a]_k` onto the k-vectors.
    pub fn grade(&self, k: u32) -> Self {
        Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| grade_of(**m) == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Zero::is_zero)
    }

    fn add_term(&mut self, mask: u32, value: T) {
        let slot = self.coeffs.entry(mask).or_insert_with(T::zero);
        *slot = slot.clone() + value;
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(FueterError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-T::one()))
    }

    /// Clifford product, bilinear extension of [`blade_mul`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self {
            n: self.n,
            coeffs: BTreeMap::new(),
        };
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let (sign, mask) = blade_mul(ma, mb);
                let prod = ca.clone() * cb.clone();
                out.add_term(mask, if sign < 0 { -prod } else { prod });
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (*m, c.clone() * s.clone()))
                .collect(),
        }
    }

    fn map_signs(&self, sign: impl Fn(u32) -> bool) -> Self {
        Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (*m, if sign(grade_of(*m)) { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// `e_S -> (-1)^{|S|} e_S`.
    pub fn main_involution(&self) -> Self {
        self.map_signs(|k| k % 2 == 1)
    }

    /// `e_S -> (-1)^{|S|(|S|-1)/2} e_S`.
    pub fn reversion(&self) -> Self {
        self.map_signs(|k| (k * k.saturating_sub(1) / 2) % 2 == 1)
    }

    /// Reversion of the main involution.
    pub fn conjugation(&self) -> Self {
        self.main_involution().reversion()
    }

    /// `sum_S a_S^2`, which equals `[a conj(a)]_0`.
    pub fn norm_squared(&self) -> T {
        self.coeffs
            .values()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().to_f64().sqrt()
    }
}

impl<T: Scalar> PartialEq for Multivector<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let masks = self.coeffs.keys().chain(other.coeffs.keys());
        masks.into_iter().all(|m| self.coeff(*m) == other.coeff(*m))
    }
}

impl<T: Scalar> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: Self) -> Multivector<T> {
        self.checked_add(rhs).expect("multivector dimension mismatch")
    }
}

impl<T: Scalar> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: Self) -> Multivector<T> {
        self.checked_sub(rhs).expect("multivector dimension mismatch")
    }
}

impl<T: Scalar> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: Self) -> Multivector<T> {
        self.checked_mul(rhs).expect("multivector dimension mismatch")
    }
}

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if mask != 0 {
                write!(f, "*e")?;
                for j in 0..32 {
                    if mask & (1 << j) != 0 {
                        write!(f, "{}", j + 1)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A point `x = x0 + x_1 e_1 + ... + x_n e_n` of R^{n+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector<T> {
    pub x0: T,
    pub vec: Vec<T>,
}

impl<T: Scalar> Paravector<T> {
    pub fn new(x0: T, vec: Vec<T>) -> Result<Self> {
        check_dim(vec.len())?;
        Ok(Self { x0, vec })
    }

    pub fn real(n: usize, x0: T) -> Result<Self> {
        Self::new(x0, vec![T::zero(); n])
    }

    /// `x0 + r e_1`, the canonical representative of an axial orbit.
    pub fn axial(n: usize, x0: T, r: T) -> Result<Self> {
        let mut p = Self::real(n, x0)?;
        p.vec[0] = r;
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn to_multivector(&self) -> Multivector<T> {
        let n = self.dim();
        let terms = std::iter::once((0u32, self.x0.clone()))
            .chain(self.vec.iter().enumerate().map(|(j, c)| (1u32 << j, c.clone())));
        Multivector::from_terms(n, terms).expect("paravector dimension already validated")
    }

    /// Fails if `mv` has components of grade two or higher.
    pub fn from_multivector(mv: &Multivector<T>) -> Result<Self> {
        if mv.terms().any(|(m, _)| grade_of(m) > 1) {
            return Err(FueterError::Representation(
                "multivector has grade >= 2 components".into(),
            ));
        }
        let vec = (0..mv.dim()).map(|j| mv.coeff(1 << j)).collect();
        Self::new(mv.scalar_part(), vec)
    }

    pub fn conj(&self) -> Self {
        Self {
            x0: self.x0.clone(),
            vec: self.vec.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// `|x_vec|^2`.
    pub fn vec_norm_squared(&self) -> T {
        self.vec
            .iter()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn norm_squared(&self) -> T {
        self.x0.clone() * self.x0.clone() + self.vec_norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().to_f64().sqrt()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            x0: self.x0.clone() * s.clone(),
            vec: self.vec.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(FueterError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            x0: self.x0.clone() + other.x0.clone(),
            vec: self
                .vec
                .iter()
                .zip(&other.vec)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-T::one()))
    }

    /// `x^{-1} = conj(x) / |x|^2`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_squared();
        if n2.is_zero() {
            return Err(FueterError::Domain("inverse of the zero paravector".into()));
        }
        Ok(self.conj().scale(&(T::one() / n2)))
    }

    /// Integer power `x^l`.
    ///
    /// Powers of a paravector stay in span{1, x_vec}; the pair `(a, b)` with
    /// `x^l = a + b x_vec` is multiplied using `x_vec^2 = -|x_vec|^2`, so the
    /// result is exact for rational input.
    pub fn pow(&self, l: i64) -> Result<Self> {
        let s = self.vec_norm_squared();
        let base = if l < 0 {
            let n2 = self.norm_squared();
            if n2.is_zero() {
                return Err(FueterError::Domain(
                    "negative power of the zero paravector".into(),
                ));
            }
            (self.x0.clone() / n2.clone(), -T::one() / n2)
        } else {
            (self.x0.clone(), T::one())
        };
        let mul = |p: &(T, T), q: &(T, T)| {
            (
                p.0.clone() * q.0.clone() - p.1.clone() * q.1.clone() * s.clone(),
                p.0.clone() * q.1.clone() + p.1.clone() * q.0.clone(),
            )
        };
        let mut acc = (T::one(), T::zero());
        let mut sq = base;
        let mut e = l.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(&acc, &sq);
            }
            sq = mul(&sq, &sq);
            e >>= 1;
        }
        Ok(Self {
            x0: acc.0,
            vec: self.vec.iter().map(|c| c.clone() * acc.1.clone()).collect(),
        })
    }
}

impl Paravector<f64> {
    pub fn to_vec(&self) -> Vec<f64> {
        std::iter::once(self.x0).chain(self.vec.iter().copied()).collect()
    }

    /// Parses components `[x0, x1, ..., xn]`.
    pub fn from_components(components: &[f64]) -> Result<Self> {
        match components.split_first() {
            Some((x0, rest)) => Self::new(*x0, rest.to_vec()),
            None => Err(FueterError::Parse("empty point".into())),
        }
    }

    /// `(x0, |x_vec|)` together with the unit direction of `x_vec` (e_1 when
    /// the vector part vanishes).
    pub fn axial_coordinates(&self) -> (f64, f64, Vec<f64>) {
        let r = self.vec_norm_squared().sqrt();
        let omega = if r > 0.0 {
            self.vec.iter().map(|c| c / r).collect()
        } else {
            let mut e1 = vec![0.0; self.dim()];
            e1[0] = 1.0;
            e1
        };
        (self.x0, r, omega)
    }

    /// Builds `a + omega b`.
    pub fn from_axial(a: f64, b: f64, omega: &[f64]) -> Self {
        Self {
            x0: a,
            vec: omega.iter().map(|w| w * b).collect(),
        }
    }
}

/// Convenience: an exact rational from a fraction of machine integers.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The multiplicative identity of any scalar field.
pub fn one<T: Scalar>() -> T {
    T::one()
}
