//! Exact calculus on axial functions `A(x0, r) + omega B(x0, r)`.
//!
//! An [`AxialRational`] is `(P + s Q) / d^k` with `d = x0^2 + r^2`,
//! `s = sqrt(d)` and `P`, `Q` rational polynomials. Since `s` is not a
//! rational function, `(P, Q, k)` is unique once common factors of `d` are
//! cancelled, which makes structural equality the same as functional
//! equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford::{Paravector, Scalar};
use crate::error::{FueterError, Result};
use crate::poly::Poly;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxialRational {
    p: Poly,
    q: Poly,
    k: u32,
}

impl AxialRational {
    /// `(p + s q) / d^k`, normalized.
    pub fn new(p: Poly, q: Poly, k: u32) -> Self {
        let mut out = Self { p, q, k };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.p.is_zero() && self.q.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 {
            match (self.p.div_d(), self.q.div_d()) {
                (Some(p), Some(q)) => {
                    self.p = p;
                    self.q = q;
                    self.k -= 1;
                }
                _ => break,
            }
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::zero(), 0)
    }

    /// `s^{-m}` for `m >= 0`.
    pub fn inv_s_pow(m: u32) -> Self {
        if m.is_multiple_of(2) {
            Self::new(Poly::one(), Poly::zero(), m / 2)
        } else {
            Self::new(Poly::zero(), Poly::one(), m.div_ceil(2))
        }
    }

    pub fn rational_part(&self) -> &Poly {
        &self.p
    }

    pub fn sqrt_part(&self) -> &Poly {
        &self.q
    }

    pub fn d_power(&self) -> u32 {
        self.k
    }

    /// The single-denominator view `N / d^{m/2}`, available when one of the
    /// two numerator parts vanishes.
    pub fn half_power_form(&self) -> Option<(Poly, u32)> {
        if self.q.is_zero() {
            Some((self.p.clone(), 2 * self.k))
        } else if self.p.is_zero() && self.k > 0 {
            Some((self.q.clone(), 2 * self.k - 1))
        } else {
            None
        }
    }

    /// True when the value is a polynomial.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.q.is_zero() && self.k == 0).then_some(&self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn has_r_parity(&self, parity: u32) -> bool {
        self.p.has_r_parity(parity) && self.q.has_r_parity(parity)
    }

    fn lift(&self, k: u32) -> (Poly, Poly) {
        let f = Poly::d().pow(k - self.k);
        (self.p.mul(&f), self.q.mul(&f))
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.k.max(other.k);
        let (p1, q1) = self.lift(k);
        let (p2, q2) = other.lift(k);
        Self::new(p1.add(&p2), q1.add(&q2), k)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.p.scale(c), self.q.scale(c), self.k)
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        Self::new(self.p.mul(f), self.q.mul(f), self.k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = Poly::d();
        let p = self.p.mul(&other.p).add(&d.mul(&self.q.mul(&other.q)));
        let q = self.p.mul(&other.q).add(&self.q.mul(&other.p));
        Self::new(p, q, self.k + other.k)
    }

    fn deriv(&self, var: Poly, dp: impl Fn(&Poly) -> Poly) -> Self {
        let d = Poly::d();
        let two_k = int(2 * self.k as i64);
        let p = d.mul(&dp(&self.p)).sub(&var.mul(&self.p).scale(&two_k));
        let q = d
            .mul(&dp(&self.q))
            .add(&var.mul(&self.q))
            .sub(&var.mul(&self.q).scale(&two_k));
        Self::new(p, q, self.k + 1)
    }

    pub fn d_x0(&self) -> Self {
        self.deriv(Poly::x0(), Poly::d_x0)
    }

    pub fn d_r(&self) -> Self {
        self.deriv(Poly::r(), Poly::d_r)
    }

    /// Exact division by `r`, valid for functions odd in `r`.
    pub fn div_r(&self) -> Result<Self> {
        match (self.p.div_r(), self.q.div_r()) {
            (Some(p), Some(q)) => Ok(Self::new(p, q, self.k)),
            _ => Err(FueterError::Representation(
                "division by r of a function not odd in r".into(),
            )),
        }
    }

    /// Largest total degree among numerator terms (0 for zero).
    fn numerator_degree(&self) -> u32 {
        self.p.degree().max(self.q.degree()).unwrap_or(0)
    }

    /// `g(x0, r) = f(x0 / d, r / d)`, the scalar part of the substitution
    /// `x -> x^{-1}` (which also sends `s -> s / d` and `d -> 1 / d`).
    pub fn invert(&self) -> Self {
        let deg = self.numerator_degree();
        let p_hat = self.p.invert_homogenize(deg).mul(&Poly::d());
        let q_hat = self.q.invert_homogenize(deg);
        // f(1/x) = (p_hat + s q_hat) d^k / d^{deg + 1}
        if self.k > deg {
            let extra = Poly::d().pow(self.k - deg - 1);
            Self::new(p_hat.mul(&extra), q_hat.mul(&extra), 0)
        } else {
            Self::new(p_hat, q_hat, deg + 1 - self.k)
        }
    }

    pub fn eval_f64(&self, x0: f64, r: f64) -> f64 {
        let d = x0 * x0 + r * r;
        let mut v = self.p.eval_f64(x0, r);
        if !self.q.is_zero() {
            v += d.sqrt() * self.q.eval_f64(x0, r);
        }
        v / d.powi(self.k as i32)
    }

    /// Exact value, given `r^2` instead of `r` for functions even in `r`.
    /// Fails when the value would involve an irrational `s`.
    fn eval_exact_even(&self, x0: &BigRational, r2: &BigRational) -> Result<BigRational> {
        let sub = |poly: &Poly| -> BigRational {
            poly.terms().fold(BigRational::zero(), |acc, ((i, j), c)| {
                acc + c
                    * num_traits::pow(x0.clone(), *i as usize)
                    * num_traits::pow(r2.clone(), (*j / 2) as usize)
            })
        };
        let d = x0 * x0 + r2;
        let mut v = sub(&self.p);
        if !self.q.is_zero() {
            let s = d.try_sqrt().ok_or_else(|| {
                FueterError::Domain("exact evaluation needs a rational |x|".into())
            })?;
            v += s * sub(&self.q);
        }
        if self.k > 0 && d.is_zero() {
            return Err(FueterError::Domain("evaluation at the origin".into()));
        }
        Ok(v / num_traits::pow(d, self.k as usize))
    }
}

impl fmt::Display for AxialRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.p)?;
        if !self.q.is_zero() {
            write!(f, " + s*[{}]", self.q)?;
        }
        if self.k > 0 {
            write!(f, " / d^{}", self.k)?;
        }
        Ok(())
    }
}

/// `A + omega B` with `A` even and `B` odd in `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxialPair {
    a: AxialRational,
    b: AxialRational,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

impl AxialPair {
    pub fn new(a: AxialRational, b: AxialRational) -> Result<Self> {
        if !a.has_r_parity(0) {
            return Err(FueterError::Representation("A must be even in r".into()));
        }
        if !b.has_r_parity(1) {
            return Err(FueterError::Representation("B must be odd in r".into()));
        }
        Ok(Self { a, b })
    }

    fn unchecked(a: AxialRational, b: AxialRational) -> Self {
        debug_assert!(a.has_r_parity(0) && b.has_r_parity(1));
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::unchecked(AxialRational::zero(), AxialRational::zero())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::unchecked(AxialRational::constant(c), AxialRational::zero())
    }

    /// The identity function `x = x0 + omega r`.
    pub fn identity() -> Self {
        Self::unchecked(
            AxialRational::from_poly(Poly::x0()),
            AxialRational::from_poly(Poly::r()),
        )
    }

    /// `x^l` for any integer `l`, from the binomial expansion of
    /// `(x0 + i r)^l` (and `conj(x)^k / d^k` for `l = -k`).
    pub fn power(l: i64) -> Self {
        let m = l.unsigned_abs() as u32;
        let mut re = Poly::zero();
        let mut im = Poly::zero();
        for j in 0..=m {
            let c = BigRational::from_integer(binomial(m, j));
            let sign = if (j / 2) % 2 == 0 { c } else { -c };
            if j % 2 == 0 {
                re.add_term(m - j, j, sign);
            } else {
                im.add_term(m - j, j, sign);
            }
        }
        if l >= 0 {
            Self::unchecked(AxialRational::from_poly(re), AxialRational::from_poly(im))
        } else {
            Self::unchecked(
                AxialRational::new(re, Poly::zero(), m),
                AxialRational::new(im.neg(), Poly::zero(), m),
            )
        }
    }

    pub fn a(&self) -> &AxialRational {
        &self.a
    }

    pub fn b(&self) -> &AxialRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::unchecked(self.a.add(&other.a), self.b.add(&other.b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::unchecked(self.a.sub(&other.a), self.b.sub(&other.b))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::unchecked(self.a.scale(c), self.b.scale(c))
    }

    /// Multiplies by a function even in `r`.
    pub fn scale_by(&self, f: &AxialRational) -> Result<Self> {
        if !f.has_r_parity(0) {
            return Err(FueterError::Representation(
                "scalar factor must be even in r".into(),
            ));
        }
        Ok(Self::unchecked(self.a.mul(f), self.b.mul(f)))
    }

    /// Clifford product of two axial functions sharing the same `omega`:
    /// `(a1 + omega b1)(a2 + omega b2) = a1 a2 - b1 b2 + omega (a1 b2 + b1 a2)`.
    pub fn mul(&self, other: &Self) -> Self {
        Self::unchecked(
            self.a.mul(&other.a).sub(&self.b.mul(&other.b)),
            self.a.mul(&other.b).add(&self.b.mul(&other.a)),
        )
    }

    pub fn d_x0(&self) -> Self {
        Self::unchecked(self.a.d_x0(), self.b.d_x0())
    }

    /// `x -> x^{-1}` substitution: `omega` flips sign so `B` changes sign.
    pub fn invert(&self) -> Self {
        Self::unchecked(self.a.invert(), self.b.invert().neg())
    }

    pub fn eval_f64(&self, x0: f64, r: f64) -> (f64, f64) {
        (self.a.eval_f64(x0, r), self.b.eval_f64(x0, r))
    }

    /// Value at a paravector; at `r = 0` the vector part vanishes by parity.
    pub fn eval_paravector(&self, x: &Paravector<f64>) -> Paravector<f64> {
        let (x0, r, omega) = x.axial_coordinates();
        let (a, b) = self.eval_f64(x0, r);
        Paravector::from_axial(a, if r > 0.0 { b } else { 0.0 }, &omega)
    }

    /// Exact value at a rational paravector. `B omega = (B / r) x_vec` keeps
    /// everything rational; a nonzero `s`-part requires `|x|` rational.
    pub fn eval_exact(&self, x: &Paravector<BigRational>) -> Result<Paravector<BigRational>> {
        let r2 = x.vec_norm_squared();
        let a = self.a.eval_exact_even(&x.x0, &r2)?;
        let b_over_r = self.b.div_r()?.eval_exact_even(&x.x0, &r2)?;
        Paravector::new(a, x.vec.iter().map(|c| c * &b_over_r).collect())
    }
}

impl fmt::Display for AxialPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A = {}; B = {}", self.a, self.b)
    }
}

fn n_minus_one(n: usize) -> BigRational {
    int(n as i64 - 1)
}

/// `D f = (d0 A - dr B - (n-1) B / r) + omega (d0 B + dr A)`.
pub fn dirac_axial(f: &AxialPair, n: usize) -> AxialPair {
    let b_over_r = f.b.div_r().expect("B is odd in r");
    AxialPair::unchecked(
        f.a.d_x0().sub(&f.b.d_r()).sub(&b_over_r.scale(&n_minus_one(n))),
        f.b.d_x0().add(&f.a.d_r()),
    )
}

/// `Dbar f = (d0 A + dr B + (n-1) B / r) + omega (d0 B - dr A)`.
pub fn dirac_conj_axial(f: &AxialPair, n: usize) -> AxialPair {
    let b_over_r = f.b.div_r().expect("B is odd in r");
    AxialPair::unchecked(
        f.a.d_x0().add(&f.b.d_r()).add(&b_over_r.scale(&n_minus_one(n))),
        f.b.d_x0().sub(&f.a.d_r()),
    )
}

/// Laplacian of `R^{n+1}` in axial coordinates.
pub fn laplacian_axial(f: &AxialPair, n: usize) -> AxialPair {
    let nm1 = n_minus_one(n);
    let ar = f.a.d_r();
    let a = f
        .a
        .d_x0()
        .d_x0()
        .add(&ar.d_r())
        .add(&ar.div_r().expect("dA/dr is odd in r").scale(&nm1));
    // dr^2 B + (n-1)/r dr B - (n-1) B / r^2 = dr (dr B + (n-1) B / r)
    let inner = f.b.d_r().add(&f.b.div_r().expect("B is odd in r").scale(&nm1));
    let b = f.b.d_x0().d_x0().add(&inner.d_r());
    AxialPair::unchecked(a, b)
}

/// Symbolic Kelvin inversion without the transcendental factor:
/// `(-1)^{n-1} conj(x) |x|^{-(n+1)} f(x^{-1})`, which is
/// `(-1)^{n-1} omega_n E(x) f(x^{-1})`.
pub fn kelvin_axial(f: &AxialPair, n: usize) -> AxialPair {
    let factor = AxialPair::identity().conj();
    let weight = AxialRational::inv_s_pow(n as u32 + 1);
    let out = factor
        .mul(&f.invert())
        .scale_by(&weight)
        .expect("weight is even in r");
    if n.is_multiple_of(2) {
        out.scale(&int(-1))
    } else {
        out
    }
}

impl AxialPair {
    /// `A - omega B`.
    pub fn conj(&self) -> Self {
        Self::unchecked(self.a.clone(), self.b.neg())
    }
}

/// `beta(z^l)` for odd `n` via `(-1)^{(n-1)/2} Delta^{(n-1)/2}` applied to the
/// exact axial form of `x^l`.
pub fn beta_pointwise_odd(l: i64, n: usize) -> Result<AxialPair> {
    if n.is_multiple_of(2) || n == 0 {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "pointwise Fueter map needs odd n",
        });
    }
    let half = (n - 1) / 2;
    let mut f = AxialPair::power(l);
    for _ in 0..half {
        f = laplacian_axial(&f, n);
    }
    Ok(if half % 2 == 1 { f.scale(&int(-1)) } else { f })
}
