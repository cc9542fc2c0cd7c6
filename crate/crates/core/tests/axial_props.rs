use std::collections::BTreeMap;

use fueter::axial::{
    beta_pointwise_odd, dirac_axial, dirac_conj_axial, kelvin_axial, laplacian_axial, AxialPair, AxialRational,
};
use fueter::clifford::{rational, Paravector};
use fueter::poly::Poly;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Polynomial in `x0, x1, .., xn`, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq)]
struct MPoly(BTreeMap<Vec<u32>, BigRational>);

impl MPoly {
    fn constant(vars: usize, c: BigRational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(vec![0; vars], c);
        }
        MPoly(m)
    }

    fn var(vars: usize, v: usize) -> Self {
        let mut e = vec![0; vars];
        e[v] = 1;
        MPoly([(e, BigRational::one())].into())
    }

    fn add(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (e, c) in &other.0 {
            let s = m.remove(e).unwrap_or_else(BigRational::zero) + c;
            if !s.is_zero() {
                m.insert(e.clone(), s);
            }
        }
        MPoly(m)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out = out.add(&MPoly([(e, c1 * c2)].into()));
            }
        }
        out
    }

    fn pow(&self, vars: usize, k: u32) -> Self {
        let mut acc = MPoly::constant(vars, BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn second_derivative(&self, v: usize) -> Self {
        let mut out = MPoly::default();
        for (e, c) in &self.0 {
            if e[v] >= 2 {
                let mut e2 = e.clone();
                e2[v] -= 2;
                let f = BigRational::from_integer((e[v] * (e[v] - 1)).into());
                out = out.add(&MPoly([(e2, c * f)].into()));
            }
        }
        out
    }

    fn laplacian(&self, vars: usize) -> Self {
        (0..vars).fold(MPoly::default(), |acc, v| acc.add(&self.second_derivative(v)))
    }

    fn eval(&self, x: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (k, xv)| acc * num_traits::pow(xv.clone(), *k as usize))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// `sum c x0^i (r^2)^j` for terms `c x0^i r^(2j + parity)`.
fn substitute(p: &Poly, vars: usize, parity: u32) -> MPoly {
    let r2 = (1..vars).fold(MPoly::default(), |acc, v| {
        let x = MPoly::var(vars, v);
        acc.add(&x.mul(&x))
    });
    let mut out = MPoly::default();
    for ((i, j), c) in p.terms() {
        let term = MPoly::constant(vars, c.clone())
            .mul(&MPoly::var(vars, 0).pow(vars, *i))
            .mul(&r2.pow(vars, (j - parity) / 2));
        out = out.add(&term);
    }
    out
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, q)| rational(p, q))
}

/// Polynomial with only `r`-powers of the given parity and total degree <= max_deg.
fn parity_poly(parity: u32, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..=max_deg, 0u32..=max_deg / 2, small_rational()), 0..5).prop_map(move |terms| {
        let mut p = Poly::zero();
        for (i, j, c) in terms {
            let rj = 2 * j + parity;
            if i + rj <= max_deg {
                p = p.add(&Poly::monomial(c, i, rj));
            }
        }
        p
    })
}

fn poly_pair(max_deg: u32) -> impl Strategy<Value = AxialPair> {
    (parity_poly(0, max_deg), parity_poly(1, max_deg)).prop_map(|(a, b)| {
        AxialPair::new(AxialRational::from_poly(a), AxialRational::from_poly(b)).unwrap()
    })
}

/// Mixture of polynomial pairs, negative powers and Kelvin images.
fn rational_pair() -> impl Strategy<Value = (AxialPair, usize)> {
    (poly_pair(4), -4i64..=3, small_rational(), 1usize..=5).prop_map(|(p, l, c, n)| {
        let mixed = p.add(&AxialPair::power(l).scale(&c)).mul(&AxialPair::power(-1));
        (mixed.add(&kelvin_axial(&p, n)), n)
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(small_rational(), n + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laplacian_factors_through_dirac((f, n) in rational_pair()) {
        let lap = laplacian_axial(&f, n);
        prop_assert_eq!(&dirac_conj_axial(&dirac_axial(&f, n), n), &lap);
        prop_assert_eq!(&dirac_axial(&dirac_conj_axial(&f, n), n), &lap);
    }

    #[test]
    fn kelvin_is_an_involution((f, n) in rational_pair()) {
        prop_assert_eq!(kelvin_axial(&kelvin_axial(&f, n), n), f);
    }

    #[test]
    fn laplacian_matches_cartesian_calculus(
        (n, f, pts) in (1usize..=5).prop_flat_map(|n| (Just(n), poly_pair(6), prop::collection::vec(point(n), 20)))
    ) {
        let vars = n + 1;
        let scalar = substitute(f.a().as_poly().unwrap(), vars, 0);
        let b_over_r = substitute(f.b().as_poly().unwrap(), vars, 1);
        let lap_scalar = scalar.laplacian(vars);
        let lap_vec: Vec<MPoly> = (1..vars)
            .map(|v| b_over_r.mul(&MPoly::var(vars, v)).laplacian(vars))
            .collect();
        let axial = laplacian_axial(&f, n);
        for x in pts {
            let xp = Paravector::new(x[0].clone(), x[1..].to_vec()).unwrap();
            let got = axial.eval_exact(&xp).unwrap();
            prop_assert_eq!(&got.x0, &lap_scalar.eval(&x));
            for (k, comp) in lap_vec.iter().enumerate() {
                prop_assert_eq!(&got.vec[k], &comp.eval(&x));
            }
        }
    }
}

#[test]
fn pointwise_beta_kills_low_powers() {
    for n in [3usize, 5, 7] {
        for l in 0..=(n as i64 - 2) {
            assert!(beta_pointwise_odd(l, n).unwrap().is_zero(), "n={n} l={l}");
        }
        assert!(!beta_pointwise_odd(n as i64 - 1, n).unwrap().is_zero());
    }
}

#[test]
fn pointwise_beta_rejects_even_n() {
    assert!(beta_pointwise_odd(2, 4).is_err());
}
