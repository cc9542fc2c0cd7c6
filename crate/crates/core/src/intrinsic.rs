//! Holomorphic intrinsic functions given as real Laurent series at a real
//! center, and the axial functions they induce on R^{n+1}.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::axial::{AxialPair, AxialRational};
use crate::clifford::Paravector;
use crate::error::{FueterError, Result};
use crate::poly::Poly;

pub type ComplexPoint = Complex64;

/// `f(z) = sum_l c_l (z - center)^l` on `inner_radius < |z - center| < outer_radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    center: f64,
    coeffs: BTreeMap<i64, f64>,
    inner_radius: f64,
    outer_radius: f64,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    center: f64,
    coeffs: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inner_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer_radius: Option<f64>,
}

impl LaurentSeries {
    pub fn new(
        center: f64,
        coeffs: BTreeMap<i64, f64>,
        inner_radius: f64,
        outer_radius: f64,
    ) -> Result<Self> {
        if !center.is_finite() {
            return Err(FueterError::Config("center must be a finite real".into()));
        }
        if let Some((l, _)) = coeffs.iter().find(|(_, c)| !c.is_finite()) {
            return Err(FueterError::Config(format!("coefficient of z^{l} is not finite")));
        }
        if !(inner_radius >= 0.0 && outer_radius > inner_radius) {
            return Err(FueterError::Config(format!(
                "invalid annulus {inner_radius} < |z - a| < {outer_radius}"
            )));
        }
        Ok(Self {
            center,
            coeffs: coeffs.into_iter().filter(|(_, c)| *c != 0.0).collect(),
            inner_radius,
            outer_radius,
        })
    }

    /// Finite sum at center 0, valid on the largest annulus its exponents allow.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, f64)>) -> Self {
        let coeffs: BTreeMap<i64, f64> = terms.into_iter().collect();
        Self::new(0.0, coeffs, 0.0, f64::INFINITY).expect("finite terms")
    }

    pub fn monomial(l: i64) -> Self {
        Self::from_terms([(l, 1.0)])
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, f64> {
        &self.coeffs
    }

    pub fn coeff(&self, l: i64) -> f64 {
        self.coeffs.get(&l).copied().unwrap_or(0.0)
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub fn l_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn l_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SeriesJson =
            serde_json::from_str(text).map_err(|e| FueterError::Parse(e.to_string()))?;
        let mut coeffs = BTreeMap::new();
        for (k, v) in raw.coeffs {
            let l: i64 = k
                .trim()
                .parse()
                .map_err(|_| FueterError::Parse(format!("exponent key {k:?} is not an integer")))?;
            coeffs.insert(l, v);
        }
        Self::new(
            raw.center,
            coeffs,
            raw.inner_radius.unwrap_or(0.0),
            raw.outer_radius.unwrap_or(f64::INFINITY),
        )
    }

    pub fn to_json(&self) -> String {
        let raw = SeriesJson {
            center: self.center,
            coeffs: self.coeffs.iter().map(|(l, c)| (l.to_string(), *c)).collect(),
            inner_radius: (self.inner_radius > 0.0).then_some(self.inner_radius),
            outer_radius: self.outer_radius.is_finite().then_some(self.outer_radius),
        };
        serde_json::to_string(&raw).expect("series serializes")
    }

    /// Checks `rho = |z - center|` against the annulus.
    pub fn check_radius(&self, rho: f64) -> Result<()> {
        let has_negative = self.l_min().is_some_and(|l| l < 0);
        let inside_inner = if self.inner_radius == 0.0 && !has_negative {
            rho >= 0.0
        } else {
            rho > self.inner_radius
        };
        if inside_inner && rho < self.outer_radius {
            Ok(())
        } else {
            Err(FueterError::Region(format!(
                "|z - a| = {rho} outside annulus ({}, {})",
                self.inner_radius, self.outer_radius
            )))
        }
    }

    /// `f(z) = u + i v`.
    pub fn eval_holo(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        let w = z - self.center;
        self.check_radius(w.norm())?;
        Ok(self
            .coeffs
            .iter()
            .map(|(l, c)| *c * w.powi(*l as i32))
            .sum())
    }

    /// The induced function `u(x0, |x_vec|) + omega v(x0, |x_vec|)`.
    pub fn induce(&self, x: &Paravector<f64>) -> Result<Paravector<f64>> {
        let (x0, r, omega) = x.axial_coordinates();
        let val = self.eval_holo(Complex64::new(x0, r))?;
        if r == 0.0 {
            if val.im.abs() > 1e-12 * val.re.abs().max(1.0) {
                return Err(FueterError::NonIntrinsic {
                    residue: val.im.abs(),
                    tol: 1e-12,
                });
            }
            return Ok(Paravector::from_axial(val.re, 0.0, &omega));
        }
        Ok(Paravector::from_axial(val.re, val.im, &omega))
    }

    /// Exact axial form of a finite series. Coefficients are read as the
    /// exact binary values of their `f64`s. Negative exponents need center 0.
    pub fn axial_of_series(&self) -> Result<AxialPair> {
        let a = rational_from_f64(self.center)?;
        let shift = AxialPair::new(
            AxialRational::from_poly(Poly::x0().sub(&Poly::constant(a.clone()))),
            AxialRational::from_poly(Poly::r()),
        )?;
        let mut out = AxialPair::zero();
        for (l, c) in &self.coeffs {
            let c = rational_from_f64(*c)?;
            let term = if *l >= 0 {
                let mut p = AxialPair::constant(BigRational::from_integer(1.into()));
                for _ in 0..*l {
                    p = p.mul(&shift);
                }
                p
            } else if self.center == 0.0 {
                AxialPair::power(*l)
            } else {
                return Err(FueterError::Representation(
                    "negative powers about a nonzero center have no exact axial form".into(),
                ));
            };
            out = out.add(&term.scale(&c));
        }
        Ok(out)
    }
}

pub(crate) fn rational_from_f64(v: f64) -> Result<BigRational> {
    BigRational::from_float(v)
        .ok_or_else(|| FueterError::Domain(format!("{v} has no exact rational value")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::rational;

    #[test]
    fn evaluation_examples() {
        let sq = LaurentSeries::monomial(2);
        let v = sq.eval_holo(Complex64::new(1.0, 1.0)).unwrap();
        assert_eq!(v, Complex64::new(0.0, 2.0));
        let inv = LaurentSeries::monomial(-1);
        let v = inv.eval_holo(Complex64::new(0.0, 1.0)).unwrap();
        assert_eq!(v, Complex64::new(0.0, -1.0));
        assert!(inv.eval_holo(Complex64::new(0.0, 0.0)).is_err());
        let f = LaurentSeries::from_terms([(-2, 0.5), (1, 3.0), (4, -1.25)]);
        assert_eq!(f.eval_holo(Complex64::new(1.7, 0.0)).unwrap().im, 0.0);
    }

    #[test]
    fn annulus_is_enforced() {
        let f = LaurentSeries::new(1.0, [(1, 1.0)].into(), 0.5, 2.0).unwrap();
        assert!(f.eval_holo(Complex64::new(1.2, 0.0)).is_err());
        assert!(f.eval_holo(Complex64::new(2.0, 0.0)).is_ok());
        assert!(f.eval_holo(Complex64::new(3.5, 0.0)).is_err());
        assert!(LaurentSeries::new(0.0, BTreeMap::new(), 2.0, 1.0).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"center": 0.5, "coeffs": {"-1": 1.0, "3": -2.5}, "inner_radius": 0.1}"#;
        let f = LaurentSeries::from_json(text).unwrap();
        assert_eq!(f.coeff(-1), 1.0);
        assert_eq!(f.coeff(3), -2.5);
        assert_eq!(f.outer_radius(), f64::INFINITY);
        assert_eq!(LaurentSeries::from_json(&f.to_json()).unwrap(), f);
        assert!(LaurentSeries::from_json(r#"{"center": 0, "coeffs": {"x": 1}}"#).is_err());
        assert!(LaurentSeries::from_json(r#"{"center": [0, 1], "coeffs": {}}"#).is_err());
    }

    #[test]
    fn induced_examples() {
        let one = LaurentSeries::monomial(0);
        let x = Paravector::new(0.3, vec![1.0, -2.0]).unwrap();
        assert_eq!(one.induce(&x).unwrap(), Paravector::new(1.0, vec![0.0, 0.0]).unwrap());
        let id = LaurentSeries::monomial(1);
        let y = Paravector::new(1.0, vec![0.0, 2.0]).unwrap();
        let v = id.induce(&y).unwrap();
        assert!((v.x0 - 1.0).abs() < 1e-15 && v.vec[0] == 0.0 && (v.vec[1] - 2.0).abs() < 1e-15);
        let real = Paravector::new(2.0, vec![0.0, 0.0]).unwrap();
        assert_eq!(LaurentSeries::monomial(3).induce(&real).unwrap().x0, 8.0);
    }

    #[test]
    fn axial_forms() {
        assert_eq!(LaurentSeries::monomial(2).axial_of_series().unwrap(), AxialPair::power(2));
        assert_eq!(
            LaurentSeries::monomial(0).axial_of_series().unwrap(),
            AxialPair::constant(rational(1, 1))
        );
        let inv = LaurentSeries::monomial(-1).axial_of_series().unwrap();
        let x = Paravector::new(rational(1, 1), vec![rational(1, 1)]).unwrap();
        // 1 / (1 + e1) = (1 - e1) / 2
        assert_eq!(
            inv.eval_exact(&x).unwrap(),
            Paravector::new(rational(1, 2), vec![rational(-1, 2)]).unwrap()
        );
        let shifted = LaurentSeries::new(1.0, [(2, 1.0)].into(), 0.0, f64::INFINITY).unwrap();
        let pair = shifted.axial_of_series().unwrap();
        let (a, b) = pair.eval_f64(3.0, 0.5);
        assert_eq!((a, b), (4.0 - 0.25, 2.0));
        let bad = LaurentSeries::new(1.0, [(-1, 1.0)].into(), 0.1, f64::INFINITY).unwrap();
        assert!(bad.axial_of_series().is_err());
    }
}
