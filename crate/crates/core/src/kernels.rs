//! The sphere kernels `K+` and `K-`, the intrinsic kernels `P~+`, `P~-`
//! given by power series, and their Fueter images.

use num_complex::Complex64;

use crate::clifford::Paravector;
use crate::constants::{binom_neg_half, c_const, lambda_prime, omega};
use crate::error::{FueterError, Result};
use crate::fueter::MonomialEvaluator;
use crate::quadrature::{gauss_legendre, symmetric_rule, GaussRule};

/// Number of Gauss–Jacobi nodes for the reduced sphere integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    node_count: usize,
}

impl QuadratureSpec {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count < 4 {
            return Err(FueterError::Config(format!(
                "quadrature needs at least 4 nodes, got {node_count}"
            )));
        }
        Ok(Self { node_count })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { node_count: 64 }
    }
}

/// Stopping rule for the kernel power series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesTruncation {
    pub max_terms: usize,
    pub tol: f64,
    /// Half-width of the rejected annulus around `|z| = 1`.
    pub delta: f64,
}

impl SeriesTruncation {
    pub fn new(max_terms: usize, tol: f64, delta: f64) -> Result<Self> {
        if max_terms == 0 || !(tol > 0.0) || !(delta > 0.0 && delta < 1.0) {
            return Err(FueterError::Config(format!(
                "invalid truncation: max_terms = {max_terms}, tol = {tol}, delta = {delta}"
            )));
        }
        Ok(Self {
            max_terms,
            tol,
            delta,
        })
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(d.max_terms, tol, d.delta)
    }
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self {
            max_terms: 10_000,
            tol: 1e-12,
            delta: 1e-3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Plus,
    Minus,
}

impl std::str::FromStr for Which {
    type Err = FueterError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Which::Plus),
            "minus" | "-" => Ok(Which::Minus),
            _ => Err(FueterError::Parse(format!("expected plus or minus, got {s:?}"))),
        }
    }
}

/// `int_{-1}^{1} (1 - rho^2)^alpha d rho = sqrt(pi) Gamma(alpha+1) / Gamma(alpha+3/2)`.
pub fn jacobi_weight_integral(alpha: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(FueterError::Domain(format!("alpha must exceed -1, got {alpha}")));
    }
    Ok(std::f64::consts::PI.sqrt() * libm::tgamma(alpha + 1.0) / libm::tgamma(alpha + 1.5))
}

fn check_kernel_n(n: usize, x: &Paravector<f64>) -> Result<()> {
    if n < 2 {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "sphere kernels need n >= 2",
        });
    }
    if x.dim() != n {
        return Err(FueterError::DimensionMismatch {
            left: n,
            right: x.dim(),
        });
    }
    Ok(())
}

/// Reduced integral `(omega_{n-2}/omega_n) int g(rho) w(rho) / q(rho)^{(n+1)/2} d rho`
/// for the scalar and vector numerators.
fn reduced(
    n: usize,
    x: &Paravector<f64>,
    q: QuadratureSpec,
    numer: impl Fn(f64, f64, f64) -> (f64, f64),
) -> Result<Paravector<f64>> {
    check_kernel_n(n, x)?;
    let (x0, r, v) = x.axial_coordinates();
    if x0.hypot(r - 1.0) < 1e-9 {
        return Err(FueterError::Region(
            "point lies on the unit sphere of the vector space".into(),
        ));
    }
    let alpha = (n as f64 - 3.0) / 2.0;
    let rule = symmetric_rule(q.node_count(), alpha)?;
    let lam = (n as f64 + 1.0) / 2.0;
    let (mut s, mut w) = (0.0, 0.0);
    for (rho, wt) in rule.nodes.iter().zip(&rule.weights) {
        let den = (x0 * x0 + 1.0 + r * r - 2.0 * r * rho).powf(lam);
        let (a, b) = numer(x0, r, *rho);
        s += wt * a / den;
        w += wt * b / den;
    }
    let c = (&omega(n - 2) / &omega(n)).to_f64();
    Ok(Paravector::from_axial(c * s, c * w, &v))
}

/// `K+(x) = int_{S^{n-1}} E(x - w) dS(w)`.
pub fn k_plus(n: usize, x: &Paravector<f64>, q: QuadratureSpec) -> Result<Paravector<f64>> {
    reduced(n, x, q, |x0, r, rho| (x0, -(r - rho)))
}

/// `K-(x) = int_{S^{n-1}} E(x - w) w dS(w)`.
pub fn k_minus(n: usize, x: &Paravector<f64>, q: QuadratureSpec) -> Result<Paravector<f64>> {
    reduced(n, x, q, |x0, r, rho| (r * rho - 1.0, x0 * rho))
}

pub fn k_kernel(which: Which, n: usize, x: &Paravector<f64>, q: QuadratureSpec) -> Result<Paravector<f64>> {
    match which {
        Which::Plus => k_plus(n, x, q),
        Which::Minus => k_minus(n, x, q),
    }
}

/// `r -> 0` limits `C_n x0 / (x0^2+1)^{(n+1)/2}` and `-C_n / (x0^2+1)^{(n+1)/2}`.
pub fn k_axis_limit(which: Which, n: usize, x0: f64) -> f64 {
    let base = c_const(n).to_f64() / (x0 * x0 + 1.0).powf((n as f64 + 1.0) / 2.0);
    match which {
        Which::Plus => x0 * base,
        Which::Minus => -base,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Inner,
    Outer,
}

pub fn regime(modulus: f64, t: &SeriesTruncation) -> Result<Regime> {
    if modulus <= 1.0 - t.delta {
        Ok(Regime::Inner)
    } else if modulus >= 1.0 + t.delta {
        Ok(Regime::Outer)
    } else {
        Err(FueterError::Region(format!(
            "|z| = {modulus} lies within {} of the unit circle",
            t.delta
        )))
    }
}

/// `prod_{j=1}^{m} (base + j)`.
fn rising(base: f64, m: usize) -> f64 {
    (1..=m).fold(1.0, |acc, j| acc * (base + j as f64))
}

/// Term `k` of a kernel series, without the overall constant: `(coefficient, exponent)`.
fn series_term(which: Which, reg: Regime, n: usize, k: usize) -> (f64, i64) {
    let b = binom_neg_half(n, k);
    let kk = 2.0 * k as f64;
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let ni = n as i64;
    let ki = k as i64;
    match (which, reg) {
        (Which::Plus, Regime::Outer) => (sign * b / rising(kk, n - 1), -(2 * ki + 1)),
        (Which::Plus, Regime::Inner) => (b / rising(kk + 1.0, n - 1), 2 * ki + ni),
        (Which::Minus, Regime::Outer) => (-sign * b / rising(kk + 1.0, n - 1), -(2 * ki + 2)),
        (Which::Minus, Regime::Inner) => (-b / rising(kk, n - 1), 2 * ki + ni - 1),
    }
}

/// Running sum with the three-small-terms stopping rule.
struct Summation {
    small_run: usize,
    tol: f64,
}

impl Summation {
    fn new(tol: f64) -> Self {
        Self { small_run: 0, tol }
    }

    /// Returns true once three consecutive terms were negligible.
    fn done(&mut self, term: f64, total: f64) -> bool {
        if term <= self.tol * total {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= 3
    }
}

fn falling(e: i64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (e - i as i64) as f64)
}

/// `d^j/dz^j P~(z)` for `j = 0..=max_deriv` by termwise differentiation.
fn tilde_series(
    which: Which,
    n: usize,
    z: Complex64,
    max_deriv: usize,
    t: &SeriesTruncation,
) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "kernel series need n >= 1",
        });
    }
    let reg = regime(z.norm(), t)?;
    let cn = c_const(n).to_f64();
    let mut sums = vec![Complex64::new(0.0, 0.0); max_deriv + 1];
    let mut stop = Summation::new(t.tol);
    for k in 0..t.max_terms {
        let (coef, e) = series_term(which, reg, n, k);
        let mut size = 0.0f64;
        for (j, acc) in sums.iter_mut().enumerate() {
            let c = coef * falling(e, j);
            if c == 0.0 {
                continue;
            }
            let term = cn * c * z.powi((e - j as i64) as i32);
            size = size.max(term.norm());
            *acc += term;
        }
        let total = sums.iter().map(|s| s.norm()).fold(0.0, f64::max);
        if stop.done(size, total) {
            return Ok(sums);
        }
    }
    Err(FueterError::NotConverged {
        max_terms: t.max_terms,
    })
}

pub fn p_tilde(which: Which, n: usize, z: Complex64, t: &SeriesTruncation) -> Result<Complex64> {
    Ok(tilde_series(which, n, z, 0, t)?[0])
}

pub fn p_tilde_plus(n: usize, z: Complex64, t: &SeriesTruncation) -> Result<Complex64> {
    p_tilde(Which::Plus, n, z, t)
}

pub fn p_tilde_minus(n: usize, z: Complex64, t: &SeriesTruncation) -> Result<Complex64> {
    p_tilde(Which::Minus, n, z, t)
}

/// `P+ = P~+ / lambda'_n`.
pub fn p_plus_fn(n: usize, z: Complex64, t: &SeriesTruncation) -> Result<Complex64> {
    Ok(p_tilde_plus(n, z, t)? / lambda_prime(n).to_f64())
}

/// `P- = P~- / lambda'_n`.
pub fn p_minus_fn(n: usize, z: Complex64, t: &SeriesTruncation) -> Result<Complex64> {
    Ok(p_tilde_minus(n, z, t)? / lambda_prime(n).to_f64())
}

/// `d^{n-1}/dz^{n-1} P~(z)`: `C_n z / (1+z^2)^{(n+1)/2}` or `-C_n / (1+z^2)^{(n+1)/2}`
/// on the principal branch.
pub fn p_tilde_top_derivative(which: Which, n: usize, z: Complex64) -> Complex64 {
    let lam = (n as f64 + 1.0) / 2.0;
    let base = c_const(n).to_f64() * (-(lam) * (1.0 + z * z).ln()).exp();
    match which {
        Which::Plus => z * base,
        Which::Minus => -base,
    }
}

const BRIDGE_WIDTH: f64 = 0.05;
const BRIDGE_NODES: usize = 96;

fn bridge_rule() -> &'static GaussRule {
    static RULE: std::sync::OnceLock<GaussRule> = std::sync::OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(BRIDGE_NODES).expect("Legendre rule"))
}

/// Inner-branch values of `d^j P~ / dz^j`, `j <= n - 1`, for `|z|` near 1,
/// from `P~^(j)(z) = int_0^z (z-t)^m / m! F(t) dt`, `m = n - 2 - j`, where
/// `F` is the top derivative and every lower derivative vanishes at 0.
fn tilde_bridge(which: Which, n: usize, z: Complex64, max_deriv: usize) -> Result<Vec<Complex64>> {
    let i = Complex64::new(0.0, 1.0);
    if (z - i).norm() < BRIDGE_WIDTH || (z + i).norm() < BRIDGE_WIDTH {
        return Err(FueterError::Region(format!("kernel argument {z} too close to +-i")));
    }
    let rule = bridge_rule();
    let top = n - 1;
    let mut out = Vec::with_capacity(max_deriv + 1);
    for j in 0..=max_deriv {
        if j > top {
            return Err(FueterError::Domain(format!(
                "bridge derivatives limited to order {top}"
            )));
        }
        if j == top {
            out.push(p_tilde_top_derivative(which, n, z));
            continue;
        }
        let m = (top - 1 - j) as i32;
        let mfact: f64 = (1..=m).map(|v| v as f64).product();
        // t = z tau, tau in [0, 1] mapped from [-1, 1]
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let tau = 0.5 * (x + 1.0);
            acc += 0.5 * w * (1.0 - tau).powi(m) * p_tilde_top_derivative(which, n, z * tau);
        }
        out.push(z.powi(m + 1) / mfact * acc);
    }
    Ok(out)
}

/// Derivatives `d^j P(z) / dz^j`, `j = 0..=max_deriv`, of `P = P~ / lambda'_n`,
/// for use inside contour integrals. Near `|z| = 1` the inner branch is
/// continued by quadrature instead of being rejected.
pub fn p_fn_derivatives(
    which: Which,
    n: usize,
    z: Complex64,
    max_deriv: usize,
    t: &SeriesTruncation,
) -> Result<Vec<Complex64>> {
    let m = z.norm();
    let vals = if (m - 1.0).abs() < BRIDGE_WIDTH {
        tilde_bridge(which, n, z, max_deriv)?
    } else {
        let wide = SeriesTruncation {
            delta: BRIDGE_WIDTH,
            ..*t
        };
        tilde_series(which, n, z, max_deriv, &wide)?
    };
    let lp = lambda_prime(n).to_f64();
    Ok(vals.into_iter().map(|v| v / lp).collect())
}

/// `beta(P+)(x)` or `beta(P-)(x)` by termwise application of the monomial
/// closed forms to the kernel series.
pub fn beta_p(which: Which, n: usize, x: &Paravector<f64>, t: &SeriesTruncation) -> Result<Paravector<f64>> {
    if x.dim() != n {
        return Err(FueterError::DimensionMismatch {
            left: n,
            right: x.dim(),
        });
    }
    let reg = regime(x.norm(), t)?;
    let ev = MonomialEvaluator::new(n, x, 2 * t.max_terms + n + 2)?;
    let scale = c_const(n).to_f64();
    let (mut a, mut b) = (0.0, 0.0);
    let mut stop = Summation::new(t.tol);
    for k in 0..t.max_terms {
        let (coef, e) = series_term(which, reg, n, k);
        let (ta, tb) = ev.beta_axial(e)?;
        let (ta, tb) = (scale * coef * ta, scale * coef * tb);
        a += ta;
        b += tb;
        if stop.done(ta.hypot(tb), a.hypot(b)) {
            let lp = lambda_prime(n).to_f64();
            return Ok(ev.to_paravector((a / lp, b / lp)));
        }
    }
    Err(FueterError::NotConverged {
        max_terms: t.max_terms,
    })
}

pub fn beta_p_plus(n: usize, x: &Paravector<f64>, t: &SeriesTruncation) -> Result<Paravector<f64>> {
    beta_p(Which::Plus, n, x, t)
}

pub fn beta_p_minus(n: usize, x: &Paravector<f64>, t: &SeriesTruncation) -> Result<Paravector<f64>> {
    beta_p(Which::Minus, n, x, t)
}
