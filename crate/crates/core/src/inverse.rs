//! Reconstruction of a holomorphic intrinsic function from an axially
//! monogenic one by contour integration against the intrinsic kernels.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::Paravector;
use crate::error::{FueterError, Result};
use crate::fueter::{beta_from_jet, beta_series};
use crate::intrinsic::{ComplexPoint, LaurentSeries};
use crate::kernels::{p_fn_derivatives, SeriesTruncation, Which};

/// Positively oriented circle in the `(y0, r)` half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourSpec {
    center: (f64, f64),
    radius: f64,
    samples: usize,
}

impl ContourSpec {
    pub fn new(center: (f64, f64), radius: f64, samples: usize) -> Result<Self> {
        let (u0, r0) = center;
        if !(u0.is_finite() && r0.is_finite() && radius.is_finite()) {
            return Err(FueterError::Config("contour parameters must be finite".into()));
        }
        if !(radius > 0.0 && r0 - radius > 0.0) {
            return Err(FueterError::Config(format!(
                "contour must lie in r > 0: center r0 = {r0}, radius = {radius}"
            )));
        }
        if samples < 16 {
            return Err(FueterError::Config(format!(
                "contour needs at least 16 samples, got {samples}"
            )));
        }
        Ok(Self {
            center,
            radius,
            samples,
        })
    }

    pub fn center(&self) -> (f64, f64) {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// True when `(x0, r)` lies strictly inside the circle.
    pub fn contains(&self, x0: f64, r: f64) -> bool {
        (x0 - self.center.0).hypot(r - self.center.1) < self.radius
    }
}

/// Source of `(A(y0, r), B(y0, r))` on the contour.
pub trait AxialSampler {
    fn sample(&self, y0: f64, r: f64) -> Result<(f64, f64)>;
}

impl<F: Fn(f64, f64) -> (f64, f64)> AxialSampler for F {
    fn sample(&self, y0: f64, r: f64) -> Result<(f64, f64)> {
        Ok(self(y0, r))
    }
}

/// The axial function `beta(f0)` as a sampler.
pub struct BetaSampler<'a> {
    pub series: &'a LaurentSeries,
    pub n: usize,
}

impl AxialSampler for BetaSampler<'_> {
    fn sample(&self, y0: f64, r: f64) -> Result<(f64, f64)> {
        let v = beta_series(self.series, self.n, &Paravector::axial(self.n, y0, r)?)?;
        Ok((v.x0, v.vec[0]))
    }
}

#[derive(Clone, Copy, Debug)]
struct Node {
    y0: f64,
    r: f64,
    dy0: f64,
    dr: f64,
    a: f64,
    b: f64,
}

/// Sampler values cached on the trapezoid nodes of a contour.
#[derive(Clone, Debug)]
pub struct SampledContour {
    spec: ContourSpec,
    nodes: Vec<Node>,
}

impl SampledContour {
    pub fn new(f: &dyn AxialSampler, spec: ContourSpec) -> Result<Self> {
        let (u0, r0) = spec.center;
        let big_r = spec.radius;
        let step = 2.0 * PI / spec.samples as f64;
        let mut nodes = Vec::with_capacity(spec.samples);
        for j in 0..spec.samples {
            let th = step * j as f64;
            let (s, c) = th.sin_cos();
            let (y0, r) = (u0 + big_r * c, r0 + big_r * s);
            let (a, b) = f.sample(y0, r)?;
            if !(a.is_finite() && b.is_finite()) {
                return Err(FueterError::Domain(format!(
                    "sampler is not finite at ({y0}, {r})"
                )));
            }
            nodes.push(Node {
                y0,
                r,
                dy0: -big_r * s * step,
                dr: big_r * c * step,
                a,
                b,
            });
        }
        Ok(Self { spec, nodes })
    }

    pub fn spec(&self) -> &ContourSpec {
        &self.spec
    }

    /// `d^j f0 / dz^j (z)` for `j = 0..=max_deriv`:
    /// `f0(z) = oint P-(w) r^{n-2} (dy0 A - dr B) - oint P+(w) r^{n-2} (dy0 B + dr A)`,
    /// `w = (z - y0) / r`.
    pub fn derivatives(
        &self,
        n: usize,
        z: ComplexPoint,
        max_deriv: usize,
        t: &SeriesTruncation,
    ) -> Result<Vec<Complex64>> {
        if n == 0 {
            return Err(FueterError::InvalidDimension {
                n,
                reason: "inverse needs n >= 1",
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); max_deriv + 1];
        for node in &self.nodes {
            if node.a == 0.0 && node.b == 0.0 {
                continue;
            }
            let w = (z - node.y0) / node.r;
            let pm = p_fn_derivatives(Which::Minus, n, w, max_deriv, t)?;
            let pp = p_fn_derivatives(Which::Plus, n, w, max_deriv, t)?;
            let rn = node.r.powi(n as i32 - 2);
            let minus_form = rn * (node.dy0 * node.a - node.dr * node.b);
            let plus_form = rn * (node.dy0 * node.b + node.dr * node.a);
            let mut inv_r = 1.0;
            for (acc, (m, p)) in out.iter_mut().zip(pm.iter().zip(&pp)) {
                *acc += (m * minus_form - p * plus_form) * inv_r;
                inv_r /= node.r;
            }
        }
        Ok(out)
    }

    pub fn eval(&self, n: usize, z: ComplexPoint, t: &SeriesTruncation) -> Result<Complex64> {
        Ok(self.derivatives(n, z, 0, t)?[0])
    }
}

/// `f0(z)` reconstructed from the axial function sampled on the contour.
pub fn inverse_fueter(
    f: &dyn AxialSampler,
    c: ContourSpec,
    n: usize,
    z: ComplexPoint,
    t: &SeriesTruncation,
) -> Result<Complex64> {
    SampledContour::new(f, c)?.eval(n, z, t)
}

/// Derivatives of the reconstruction up to `max_deriv`.
pub fn inverse_fueter_derivatives(
    f: &dyn AxialSampler,
    c: ContourSpec,
    n: usize,
    z: ComplexPoint,
    max_deriv: usize,
    t: &SeriesTruncation,
) -> Result<Vec<Complex64>> {
    SampledContour::new(f, c)?.derivatives(n, z, max_deriv, t)
}

/// Tolerance on imaginary parts of coefficients accepted as intrinsic.
pub const INTRINSIC_TOL: f64 = 1e-8;

/// Complex coefficients `a_l = (2 pi i)^{-1} oint g(z) (z - a)^{-l-1} dz`
/// on `|z - a| = rho` by the trapezoid rule.
fn complex_coefficients(
    g: &dyn Fn(ComplexPoint) -> Result<Complex64>,
    center: f64,
    rho: f64,
    l_range: (i64, i64),
    samples: usize,
) -> Result<Vec<(i64, Complex64)>> {
    let (lmin, lmax) = l_range;
    if lmin > lmax || !(rho > 0.0) || samples < 2 {
        return Err(FueterError::Config(format!(
            "invalid expansion: l in [{lmin}, {lmax}], rho = {rho}, samples = {samples}"
        )));
    }
    let values: Vec<(f64, Complex64)> = (0..samples)
        .map(|j| {
            let th = 2.0 * PI * j as f64 / samples as f64;
            g(center + Complex64::from_polar(rho, th)).map(|v| (th, v))
        })
        .collect::<Result<_>>()?;
    Ok((lmin..=lmax)
        .map(|l| {
            let sum: Complex64 = values
                .iter()
                .map(|(th, v)| v * Complex64::from_polar(1.0, -(l as f64) * th))
                .sum();
            (l, sum / samples as f64 / rho.powi(l as i32))
        })
        .collect())
}

fn check_intrinsic(coeffs: &[(i64, Complex64)]) -> Result<f64> {
    let worst = coeffs.iter().map(|(_, c)| c.im.abs()).fold(0.0, f64::max);
    if worst >= INTRINSIC_TOL {
        return Err(FueterError::NonIntrinsic {
            residue: worst,
            tol: INTRINSIC_TOL,
        });
    }
    Ok(worst)
}

/// Real Laurent coefficients of `g` on `|z - center| = rho` with `samples`
/// trapezoid nodes; imaginary parts must be negligible and are dropped.
pub fn laurent_expand_with(
    g: &dyn Fn(ComplexPoint) -> Result<Complex64>,
    center: f64,
    rho: f64,
    l_range: (i64, i64),
    samples: usize,
) -> Result<LaurentSeries> {
    let coeffs = complex_coefficients(g, center, rho, l_range, samples)?;
    check_intrinsic(&coeffs)?;
    LaurentSeries::new(
        center,
        coeffs.into_iter().map(|(l, c)| (l, c.re)).collect(),
        0.0,
        f64::INFINITY,
    )
}

pub fn laurent_expand(
    g: &dyn Fn(ComplexPoint) -> Result<Complex64>,
    center: f64,
    rho: f64,
    l_range: (i64, i64),
) -> Result<LaurentSeries> {
    laurent_expand_with(g, center, rho, l_range, 512)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PointReport {
    pub point: Vec<f64>,
    /// `(A, B)` of `beta(f0)`.
    pub expected: (f64, f64),
    /// `(A, B)` of `beta(g0)`.
    pub reconstructed: (f64, f64),
    /// `<reconstructed, expected> / |expected|^2`, absent when `beta(f0)` vanishes.
    pub constant: Option<f64>,
    /// `|reconstructed - expected| / |expected|` (absolute when `beta(f0)` vanishes).
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RoundtripReport {
    pub n: usize,
    pub points: Vec<PointReport>,
    pub fitted_constant: Option<f64>,
    /// Standard deviation over mean of the per-point constants.
    pub spread: Option<f64>,
    pub max_deviation: f64,
    /// Largest `|reconstructed - c expected| / |expected|` after fitting `c`.
    pub max_fitted_deviation: f64,
    /// Largest imaginary part seen when re-expanding `g0` on a real-centred circle.
    pub intrinsic_residue: f64,
}

/// Runs `f0 -> beta(f0) -> g0 -> beta(g0)` and compares with `beta(f0)` at
/// the test points, which must lie inside the contour. Only odd `n` is
/// supported since `beta(g0)` is evaluated locally from derivatives of `g0`.
pub fn roundtrip_check(
    f0: &LaurentSeries,
    n: usize,
    c: ContourSpec,
    test_points: &[Paravector<f64>],
    t: &SeriesTruncation,
) -> Result<RoundtripReport> {
    if n.is_multiple_of(2) || n == 0 {
        return Err(FueterError::InvalidDimension {
            n,
            reason: "roundtrip evaluates beta locally and needs odd n",
        });
    }
    let contour = SampledContour::new(&BetaSampler { series: f0, n }, c)?;
    let mut points = Vec::with_capacity(test_points.len());
    for x in test_points {
        if x.dim() != n {
            return Err(FueterError::DimensionMismatch {
                left: n,
                right: x.dim(),
            });
        }
        let (x0, r, _) = x.axial_coordinates();
        if !c.contains(x0, r) {
            return Err(FueterError::Region(format!(
                "test point ({x0}, {r}) is outside the contour"
            )));
        }
        let value = beta_series(f0, n, x)?;
        let expected = (value.x0, axial_b(&value, x));
        let derivs = contour.derivatives(n, Complex64::new(x0, r), n - 1, t)?;
        let reconstructed = beta_from_jet(n, &derivs, r)?;
        let norm2 = expected.0 * expected.0 + expected.1 * expected.1;
        let diff = (reconstructed.0 - expected.0).hypot(reconstructed.1 - expected.1);
        let (constant, deviation) = if norm2 > 0.0 {
            (
                Some((reconstructed.0 * expected.0 + reconstructed.1 * expected.1) / norm2),
                diff / norm2.sqrt(),
            )
        } else {
            (None, diff)
        };
        points.push(PointReport {
            point: x.to_vec(),
            expected,
            reconstructed,
            constant,
            deviation,
        });
    }
    let consts: Vec<f64> = points.iter().filter_map(|p| p.constant).collect();
    let (fitted_constant, spread) = if consts.is_empty() {
        (None, None)
    } else {
        let m = consts.iter().sum::<f64>() / consts.len() as f64;
        let var = consts.iter().map(|c| (c - m).powi(2)).sum::<f64>() / consts.len() as f64;
        (Some(m), Some(var.sqrt() / m.abs()))
    };
    let max_deviation = points.iter().map(|p| p.deviation).fold(0.0, f64::max);
    let max_fitted_deviation = points
        .iter()
        .map(|p| {
            let k = fitted_constant.unwrap_or(1.0);
            let e = (k * p.expected.0, k * p.expected.1);
            let diff = (p.reconstructed.0 - e.0).hypot(p.reconstructed.1 - e.1);
            let scale = e.0.hypot(e.1);
            if scale > 0.0 {
                diff / scale
            } else {
                diff
            }
        })
        .fold(0.0, f64::max);

    let (u0, r0) = c.center();
    let rho = r0 + c.radius() + 1.0;
    let g = |z: ComplexPoint| contour.eval(n, z, t);
    let intrinsic_residue = check_intrinsic(&complex_coefficients(&g, u0, rho, (-8, 8), 256)?)?;
    Ok(RoundtripReport {
        n,
        points,
        fitted_constant,
        spread,
        max_deviation,
        max_fitted_deviation,
        intrinsic_residue,
    })
}

/// Signed `B` of an axial value relative to the direction of `x`.
fn axial_b(v: &Paravector<f64>, x: &Paravector<f64>) -> f64 {
    let (_, _, omega) = x.axial_coordinates();
    v.vec.iter().zip(&omega).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> SeriesTruncation {
        SeriesTruncation::default()
    }

    #[test]
    fn contour_validation() {
        assert!(ContourSpec::new((0.0, 2.0), 0.5, 256).is_ok());
        assert!(ContourSpec::new((0.0, 0.4), 0.5, 256).is_err());
        assert!(ContourSpec::new((0.0, 2.0), 0.5, 8).is_err());
        assert!(ContourSpec::new((0.0, 2.0), -1.0, 64).is_err());
    }

    #[test]
    fn zero_sampler_gives_zero() {
        let c = ContourSpec::new((0.0, 2.0), 0.5, 64).unwrap();
        let zero = |_: f64, _: f64| (0.0, 0.0);
        let v = inverse_fueter(&zero, c, 3, Complex64::new(0.1, 2.1), &t()).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn laurent_examples() {
        let sq = |z: Complex64| Ok(z * z);
        let s = laurent_expand(&sq, 0.0, 1.0, (-3, 4)).unwrap();
        for l in -3..=4 {
            let expect = if l == 2 { 1.0 } else { 0.0 };
            assert!((s.coeff(l) - expect).abs() < 1e-12, "l={l}");
        }
        let inv = |z: Complex64| Ok(1.0 / z);
        let s = laurent_expand(&inv, 0.0, 1.0, (-2, 2)).unwrap();
        assert!((s.coeff(-1) - 1.0).abs() < 1e-12);
        let not_intrinsic = |z: Complex64| Ok(Complex64::new(0.0, 1.0) * z);
        assert!(matches!(
            laurent_expand(&not_intrinsic, 0.0, 1.0, (0, 2)),
            Err(FueterError::NonIntrinsic { .. })
        ));
    }

    #[test]
    fn one_dimensional_case_is_cauchy_formula() {
        // n = 1: beta is the identity, so the reconstruction of z^2 should be z^2
        let c = ContourSpec::new((0.0, 2.0), 0.5, 128).unwrap();
        let f = |y0: f64, r: f64| {
            let v = Complex64::new(y0, r).powi(2);
            (v.re, v.im)
        };
        let z = Complex64::new(0.1, 2.1);
        let v = inverse_fueter(&f, c, 1, z, &t()).unwrap();
        assert!((v - z * z).norm() < 1e-9, "{v} vs {}", z * z);
    }

    #[test]
    fn conjugate_symmetry() {
        let c = ContourSpec::new((0.0, 2.0), 0.5, 128).unwrap();
        let f0 = LaurentSeries::monomial(-1);
        let s = BetaSampler { series: &f0, n: 3 };
        let sc = SampledContour::new(&s, c).unwrap();
        for z in [Complex64::new(0.1, 2.1), Complex64::new(-0.2, 1.8), Complex64::new(3.0, 0.5)] {
            let a = sc.eval(3, z, &t()).unwrap();
            let b = sc.eval(3, z.conj(), &t()).unwrap();
            assert!((a.conj() - b).norm() < 1e-10 * a.norm().max(1.0));
        }
    }

    #[test]
    fn roundtrip_rejects_even_n_and_outside_points() {
        let c = ContourSpec::new((0.0, 2.0), 0.5, 64).unwrap();
        let f0 = LaurentSeries::monomial(-1);
        let pt = Paravector::axial(2, 0.0, 2.0).unwrap();
        assert!(roundtrip_check(&f0, 2, c, &[pt], &t()).is_err());
        let far = Paravector::axial(3, 0.0, 3.0).unwrap();
        assert!(matches!(
            roundtrip_check(&f0, 3, c, &[far], &t()),
            Err(FueterError::Region(_))
        ));
    }
}
