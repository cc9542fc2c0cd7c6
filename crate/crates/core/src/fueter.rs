//! Closed-form Fueter images: the Cauchy kernel, the monogenic monomials
//! `P^(-k)` and `P^(m)`, Kelvin inversion and `beta` on Laurent series.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::axial::{dirac_axial, kelvin_axial, AxialPair, AxialRational};
use crate::clifford::{Multivector, Paravector, Scalar};
use crate::constants::{factorial, lambda, omega, PiRational};
use crate::error::{FueterError, Result};
use crate::intrinsic::LaurentSeries;
use crate::poly::Poly;

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > crate::clifford::MAX_DIM {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "dimension must lie in 1..=20",
        });
    }
    Ok(())
}

/// `scale * pair`, where `scale` may carry powers of pi.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledPair {
    pub scale: PiRational,
    pub pair: AxialPair,
}

impl ScaledPair {
    pub fn eval(&self, x: &Paravector<f64>) -> Result<Paravector<f64>> {
        if x.norm_squared() == 0.0 && !self.is_polynomial() {
            return Err(FueterError::Domain("evaluation at the origin".into()));
        }
        Ok(self.pair.eval_paravector(x).scale(&self.scale.to_f64()))
    }

    fn is_polynomial(&self) -> bool {
        self.pair.a().as_poly().is_some() && self.pair.b().as_poly().is_some()
    }

    /// The pair with the scale folded in, when the scale is rational.
    pub fn exact_pair(&self) -> Result<AxialPair> {
        if !self.scale.is_rational() {
            return Err(FueterError::Representation(format!(
                "scale {} is not rational",
                self.scale
            )));
        }
        Ok(self.pair.scale(self.scale.rational_part()))
    }

    /// Exact Vekua check: the Dirac operator annihilates the pair.
    pub fn is_monogenic(&self, n: usize) -> bool {
        dirac_axial(&self.pair, n).is_zero()
    }
}

/// `E(x) = conj(x) / (omega_n |x|^{n+1})`.
pub fn cauchy_kernel(n: usize) -> Result<ScaledPair> {
    check_n(n)?;
    let pair = AxialPair::identity()
        .conj()
        .scale_by(&AxialRational::inv_s_pow(n as u32 + 1))?;
    Ok(ScaledPair {
        scale: omega(n).recip()?,
        pair,
    })
}

pub fn cauchy_kernel_eval(n: usize, x: &Paravector<f64>) -> Result<Paravector<f64>> {
    if x.dim() != n {
        return Err(FueterError::DimensionMismatch {
            left: n,
            right: x.dim(),
        });
    }
    cauchy_kernel(n)?.eval(x)
}

/// `d0^k E`.
pub fn d0k_cauchy(n: usize, k: u32) -> Result<ScaledPair> {
    let mut e = cauchy_kernel(n)?;
    for _ in 0..k {
        e.pair = e.pair.d_x0();
    }
    Ok(e)
}

/// `P^(index)` in dimension `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonogenicMonomial {
    pub index: i64,
    pub n: usize,
    pub value: ScaledPair,
}

impl MonogenicMonomial {
    /// Homogeneity degree: `index` for `P^(m)`, `-(n + k - 1)` for `P^(-k)`.
    pub fn degree(&self) -> i64 {
        if self.index >= 0 {
            self.index
        } else {
            self.index - (self.n as i64 - 1)
        }
    }

    pub fn eval(&self, x: &Paravector<f64>) -> Result<Paravector<f64>> {
        self.value.eval(x)
    }

    pub fn is_monogenic(&self) -> bool {
        self.value.is_monogenic(self.n)
    }

    /// Restriction to the positive real axis, `c * x0^e`, read off the exact
    /// representation.
    pub fn axis_restriction(&self) -> Result<(PiRational, i64)> {
        let a = self.value.pair.a();
        // at r = 0 and x0 > 0, s = x0 and d = x0^2
        let mut on_axis = Poly::zero();
        for ((i, j), c) in a.rational_part().terms() {
            if *j == 0 {
                on_axis.add_term(*i, 0, c.clone());
            }
        }
        for ((i, j), c) in a.sqrt_part().terms() {
            if *j == 0 {
                on_axis.add_term(i + 1, 0, c.clone());
            }
        }
        let mut terms = on_axis.terms();
        let Some(((i, _), c)) = terms.next() else {
            return Ok((PiRational::from_integer(0), 0));
        };
        if terms.next().is_some() {
            return Err(FueterError::Representation(
                "axis restriction is not a monomial".into(),
            ));
        }
        let coeff = &self.value.scale * &PiRational::from_rational(c.clone());
        Ok((coeff, *i as i64 - 2 * a.d_power() as i64))
    }
}

impl fmt::Display for MonogenicMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^({}) [n = {}] = ({}) * {{{}}}", self.index, self.n, self.value.scale, self.value.pair)
    }
}

/// `P^(-k) = (-1)^{k-1} omega_n lambda_n / (k-1)! * d0^{k-1} E`.
pub fn p_minus(k: u32, n: usize) -> Result<MonogenicMonomial> {
    if k == 0 {
        return Err(FueterError::Domain("P_minus needs k >= 1".into()));
    }
    check_n(n)?;
    let mut pair = AxialPair::identity()
        .conj()
        .scale_by(&AxialRational::inv_s_pow(n as u32 + 1))?;
    for _ in 1..k {
        pair = pair.d_x0();
    }
    let sign: i64 = if (k - 1).is_multiple_of(2) { 1 } else { -1 };
    let scale = &lambda(n) / &PiRational::from_integer(factorial(k as u64 - 1) * sign);
    Ok(MonogenicMonomial {
        index: -(k as i64),
        n,
        value: ScaledPair { scale, pair },
    })
}

/// Pointwise Kelvin inversion `(-1)^{n-1} omega_n E(x) f(x^{-1})` with the
/// Clifford product in that order.
pub fn kelvin<T, F>(n: usize, f: F, x: &Paravector<T>) -> Result<Multivector<T>>
where
    T: Scalar,
    F: Fn(&Paravector<T>) -> Result<Multivector<T>>,
{
    if x.dim() != n {
        return Err(FueterError::DimensionMismatch {
            left: n,
            right: x.dim(),
        });
    }
    let norm2 = x.norm_squared();
    if norm2.is_zero() {
        return Err(FueterError::Domain("Kelvin inversion at the origin".into()));
    }
    let mut denom = T::one();
    for _ in 0..n.div_ceil(2) {
        denom = denom * norm2.clone();
    }
    if (n + 1) % 2 == 1 {
        let s = norm2
            .try_sqrt()
            .ok_or_else(|| FueterError::Domain("|x| is not representable".into()))?;
        denom = denom * s;
    }
    let sign = if n.is_multiple_of(2) { -T::one() } else { T::one() };
    let e = x.conj().to_multivector().scale(&(sign / denom));
    let fx = f(&x.inverse()?)?;
    e.checked_mul(&fx)
}

/// `P^(m) = I(P^(-(m+1)))` by symbolic inversion.
pub fn p_plus(m: u32, n: usize) -> Result<MonogenicMonomial> {
    let minus = p_minus(m + 1, n)?;
    let pair = kelvin_axial(&minus.value.pair, n);
    if pair.a().as_poly().is_none() || pair.b().as_poly().is_none() {
        return Err(FueterError::Representation(format!(
            "Kelvin image of P^(-{}) did not reduce to a polynomial",
            m + 1
        )));
    }
    Ok(MonogenicMonomial {
        index: m as i64,
        n,
        value: ScaledPair {
            scale: minus.value.scale,
            pair,
        },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum BetaImage {
    Zero,
    Monomial(MonogenicMonomial),
}

impl BetaImage {
    pub fn eval(&self, x: &Paravector<f64>) -> Result<Paravector<f64>> {
        match self {
            BetaImage::Zero => Paravector::real(x.dim(), 0.0),
            BetaImage::Monomial(m) => m.eval(x),
        }
    }

    /// Exact pair (rational scale only); zero for the kernel.
    pub fn exact_pair(&self) -> Result<AxialPair> {
        match self {
            BetaImage::Zero => Ok(AxialPair::zero()),
            BetaImage::Monomial(m) => m.value.exact_pair(),
        }
    }
}

/// `beta(z^l)`: `P^(l)` for `l < 0`, zero for `0 <= l <= n-2`,
/// `P^(l+1-n)` for `l >= n-1`.
pub fn beta_monomial(l: i64, n: usize) -> Result<BetaImage> {
    check_n(n)?;
    let n_i = n as i64;
    if l < 0 {
        Ok(BetaImage::Monomial(p_minus((-l) as u32, n)?))
    } else if l <= n_i - 2 {
        Ok(BetaImage::Zero)
    } else {
        Ok(BetaImage::Monomial(p_plus((l + 1 - n_i) as u32, n)?))
    }
}

/// Gegenbauer values `C_0^lam(t) .. C_{m}^lam(t)` by the three-term recurrence.
fn gegenbauer_all(m: usize, lam: f64, t: f64) -> Vec<f64> {
    let mut c = Vec::with_capacity(m + 1);
    c.push(1.0);
    if m >= 1 {
        c.push(2.0 * lam * t);
    }
    for j in 2..=m {
        let jf = j as f64;
        let v = (2.0 * t * (jf + lam - 1.0) * c[j - 1] - (jf + 2.0 * lam - 2.0) * c[j - 2]) / jf;
        c.push(v);
    }
    c
}

/// Floating-point evaluator for `P^(-k)` and `P^(m)` built on the
/// Gegenbauer closed forms; reusable across many `k` at one point.
#[derive(Clone, Debug)]
pub struct MonomialEvaluator {
    n: usize,
    lambda_n: f64,
    x0: f64,
    r: f64,
    rho: f64,
    omega: Vec<f64>,
    gegen: Vec<f64>,
}

impl MonomialEvaluator {
    /// Prepares Gegenbauer values up to degree `max_degree`.
    pub fn new(n: usize, x: &Paravector<f64>, max_degree: usize) -> Result<Self> {
        check_n(n)?;
        if x.dim() != n {
            return Err(FueterError::DimensionMismatch {
                left: n,
                right: x.dim(),
            });
        }
        let (x0, r, omega) = x.axial_coordinates();
        let rho = x0.hypot(r);
        let t = if rho > 0.0 { x0 / rho } else { 1.0 };
        let lam = (n as f64 + 1.0) / 2.0;
        Ok(Self {
            n,
            lambda_n: lambda(n).to_f64(),
            x0,
            r,
            rho,
            omega,
            gegen: gegenbauer_all(max_degree, lam, t),
        })
    }

    fn c(&self, m: i64) -> f64 {
        if m < 0 {
            0.0
        } else {
            self.gegen[m as usize]
        }
    }

    fn ensure(&self, m: i64) -> Result<()> {
        if m >= self.gegen.len() as i64 {
            return Err(FueterError::Domain(format!(
                "Gegenbauer table too short for degree {m}"
            )));
        }
        Ok(())
    }

    /// `(A, B)` of `P^(-k)`.
    pub fn minus_axial(&self, k: u32) -> Result<(f64, f64)> {
        let k = k as i64;
        self.ensure(k - 1)?;
        if self.rho == 0.0 {
            return Err(FueterError::Domain("P^(-k) is singular at the origin".into()));
        }
        let n = self.n as i32;
        let lead = self.rho.powi(-(n + k as i32)) * self.c(k - 1);
        let tail = self.rho.powi(-(n + k as i32 - 1)) * self.c(k - 2);
        Ok((
            self.lambda_n * (self.x0 * lead - tail),
            -self.lambda_n * self.r * lead,
        ))
    }

    /// `(A, B)` of `P^(m)`.
    pub fn plus_axial(&self, m: u32) -> Result<(f64, f64)> {
        let k = m as i64 + 1;
        self.ensure(k - 1)?;
        let sign = if self.n.is_multiple_of(2) { -1.0 } else { 1.0 };
        if self.rho == 0.0 {
            return Ok((if m == 0 { sign * self.lambda_n } else { 0.0 }, 0.0));
        }
        let lead = self.rho.powi(k as i32 - 1) * self.c(k - 1);
        let tail = self.rho.powi(k as i32 - 2) * self.c(k - 2);
        Ok((
            sign * self.lambda_n * (lead - self.x0 * tail),
            sign * self.lambda_n * self.r * tail,
        ))
    }

    /// `(A, B)` of `beta(z^l)`.
    pub fn beta_axial(&self, l: i64) -> Result<(f64, f64)> {
        let n = self.n as i64;
        if l < 0 {
            self.minus_axial((-l) as u32)
        } else if l <= n - 2 {
            Ok((0.0, 0.0))
        } else {
            self.plus_axial((l + 1 - n) as u32)
        }
    }

    pub fn to_paravector(&self, ab: (f64, f64)) -> Paravector<f64> {
        Paravector::from_axial(ab.0, if self.r > 0.0 { ab.1 } else { 0.0 }, &self.omega)
    }
}

/// `P^(-k)(x)` in floating point.
pub fn p_minus_eval(n: usize, k: u32, x: &Paravector<f64>) -> Result<Paravector<f64>> {
    let ev = MonomialEvaluator::new(n, x, k as usize)?;
    Ok(ev.to_paravector(ev.minus_axial(k)?))
}

/// `P^(m)(x)` in floating point.
pub fn p_plus_eval(n: usize, m: u32, x: &Paravector<f64>) -> Result<Paravector<f64>> {
    let ev = MonomialEvaluator::new(n, x, m as usize + 1)?;
    Ok(ev.to_paravector(ev.plus_axial(m)?))
}

/// `beta(z^l)(x)` in floating point.
pub fn beta_monomial_eval(l: i64, n: usize, x: &Paravector<f64>) -> Result<Paravector<f64>> {
    let ev = MonomialEvaluator::new(n, x, l.unsigned_abs() as usize + 1)?;
    Ok(ev.to_paravector(ev.beta_axial(l)?))
}

/// `beta(f)(x) = sum_l c_l beta(z^l)(x - a)`, summed in ascending `|l|`.
pub fn beta_series(f: &LaurentSeries, n: usize, x: &Paravector<f64>) -> Result<Paravector<f64>> {
    let mut xa = x.clone();
    xa.x0 -= f.center();
    f.check_radius(xa.norm())?;
    let max_deg = f
        .coeffs()
        .keys()
        .map(|l| l.unsigned_abs() as usize + 1)
        .max()
        .unwrap_or(1);
    let ev = MonomialEvaluator::new(n, &xa, max_deg)?;
    let mut order: Vec<(&i64, &f64)> = f.coeffs().iter().collect();
    order.sort_by_key(|(l, _)| (l.unsigned_abs(), **l));
    let (mut a, mut b) = (0.0, 0.0);
    for (l, c) in order {
        let (ta, tb) = ev.beta_axial(*l)?;
        a += c * ta;
        b += c * tb;
        if !(a.is_finite() && b.is_finite()) {
            return Err(FueterError::Region(format!("series diverges at term z^{l}")));
        }
    }
    Ok(ev.to_paravector((a, b)))
}

/// Truncated bivariate Taylor jet in `(h, k)` of total order `order`.
#[derive(Clone, Debug)]
struct Jet {
    order: usize,
    c: Vec<Vec<f64>>,
}

impl Jet {
    fn zero(order: usize) -> Self {
        Self {
            order,
            c: (0..=order).map(|a| vec![0.0; order + 1 - a]).collect(),
        }
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        if a + b <= self.order {
            self.c[a][b]
        } else {
            0.0
        }
    }

    fn d_h(&self) -> Self {
        let mut out = Self::zero(self.order.saturating_sub(1));
        for a in 0..=out.order {
            for b in 0..=out.order - a {
                out.c[a][b] = (a + 1) as f64 * self.get(a + 1, b);
            }
        }
        out
    }

    fn d_k(&self) -> Self {
        let mut out = Self::zero(self.order.saturating_sub(1));
        for a in 0..=out.order {
            for b in 0..=out.order - a {
                out.c[a][b] = (b + 1) as f64 * self.get(a, b + 1);
            }
        }
        out
    }

    /// Multiplies by `1 / (r + k)` expanded around `k = 0`.
    fn div_r(&self, r: f64) -> Self {
        let mut out = Self::zero(self.order);
        for a in 0..=self.order {
            for b in 0..=self.order - a {
                let mut acc = 0.0;
                for j in 0..=b {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * self.c[a][b - j] / r.powi(j as i32 + 1);
                }
                out.c[a][b] = acc;
            }
        }
        out
    }

    fn add_scaled(&self, other: &Self, s: f64) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for a in 0..=order {
            for b in 0..=order - a {
                out.c[a][b] = self.c[a][b] + s * other.c[a][b];
            }
        }
        out
    }
}

/// `beta(g)` at the axial point `(x0, r)`, `r > 0`, for odd `n`, from the
/// complex derivatives `g^(j)(x0 + i r)`, `j = 0..=n-1`.
///
/// Uses the same operator as [`crate::axial::beta_pointwise_odd`] on a local
/// Taylor jet of the induced pair.
pub fn beta_from_jet(n: usize, derivs: &[Complex64], r: f64) -> Result<(f64, f64)> {
    if n.is_multiple_of(2) || n == 0 {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "local Fueter map needs odd n",
        });
    }
    if derivs.len() < n {
        return Err(FueterError::Domain(format!(
            "need {n} derivatives, got {}",
            derivs.len()
        )));
    }
    if r <= 0.0 {
        return Err(FueterError::Domain("local jet needs r > 0".into()));
    }
    let order = n - 1;
    let mut a = Jet::zero(order);
    let mut b = Jet::zero(order);
    let fact = |m: usize| (1..=m).fold(1.0, |acc, j| acc * j as f64);
    let i_pow = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    for p in 0..=order {
        for q in 0..=order - p {
            let v = derivs[p + q] * i_pow[q % 4] / (fact(p) * fact(q));
            a.c[p][q] = v.re;
            b.c[p][q] = v.im;
        }
    }
    let nm1 = n as f64 - 1.0;
    for _ in 0..(n - 1) / 2 {
        let ak = a.d_k();
        let a_next = a.d_h().d_h().add_scaled(&ak.d_k(), 1.0).add_scaled(&ak.div_r(r), nm1);
        let inner = b.d_k().add_scaled(&b.div_r(r), nm1);
        let b_next = b.d_h().d_h().add_scaled(&inner.d_k(), 1.0);
        a = a_next;
        b = b_next;
    }
    let sign = if ((n - 1) / 2) % 2 == 1 { -1.0 } else { 1.0 };
    Ok((sign * a.get(0, 0), sign * b.get(0, 0)))
}

/// Exact rational for the axis coefficient predicted for `P^(-k)`:
/// `lambda_n (n+k-2)! / ((k-1)! (n-1)!)`.
pub fn axis_coefficient_minus(n: usize, k: u32) -> PiRational {
    let q = BigRational::new(
        factorial(n as u64 + k as u64 - 2),
        factorial(k as u64 - 1) * factorial(n as u64 - 1),
    );
    &lambda(n) * &PiRational::from_rational(q)
}

/// `(-1)^{n-1} lambda_n (m+n-1)! / (m! (n-1)!)`, the axis coefficient of `P^(m)`.
pub fn axis_coefficient_plus(n: usize, m: u32) -> PiRational {
    let sign = if n.is_multiple_of(2) { -BigInt::one() } else { BigInt::one() };
    let q = BigRational::new(
        factorial(m as u64 + n as u64 - 1) * sign,
        factorial(m as u64) * factorial(n as u64 - 1),
    );
    &lambda(n) * &PiRational::from_rational(q)
}
