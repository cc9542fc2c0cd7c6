mod common;

use std::collections::BTreeMap;

use fueter::axial::{kelvin_axial, laplacian_axial, AxialPair, AxialRational};
use fueter::clifford::{rational, Multivector, Paravector};
use fueter::fueter::{beta_series, kelvin, p_minus, p_plus};
use fueter::intrinsic::LaurentSeries;
use fueter::poly::Poly;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, q)| rational(p, q))
}

/// `s * u` with `u` a rational unit vector of R^{n+1} from inverse
/// stereographic projection, so that `|x| = s` is rational.
fn rational_norm_point(n: usize) -> impl Strategy<Value = Paravector<BigRational>> {
    (prop::collection::vec(small_rational(), n), (1i64..=5, 1i64..=3)).prop_map(move |(t, (p, q))| {
        let s = rational(p, q);
        let t2: BigRational = t.iter().map(|c| c * c).fold(BigRational::zero(), |a, b| a + b);
        let den = &t2 + BigRational::one();
        let x0 = (&t2 - BigRational::one()) / &den * &s;
        let vec = t.iter().map(|c| c * rational(2, 1) / &den * &s).collect();
        Paravector::new(x0, vec).unwrap()
    })
}

fn poly_pair() -> impl Strategy<Value = AxialPair> {
    let term = || (0u32..=3, 0u32..=1, small_rational());
    (prop::collection::vec(term(), 0..4), prop::collection::vec(term(), 0..4)).prop_map(|(a, b)| {
        let build = |terms: Vec<(u32, u32, BigRational)>, parity: u32| {
            terms
                .into_iter()
                .fold(Poly::zero(), |p, (i, j, c)| p.add(&Poly::monomial(c, i, 2 * j + parity)))
        };
        AxialPair::new(
            AxialRational::from_poly(build(a, 0)),
            AxialRational::from_poly(build(b, 1)),
        )
        .unwrap()
    })
}

fn multivector(n: usize) -> impl Strategy<Value = Multivector<BigRational>> {
    prop::collection::vec((0u32..(1 << n), small_rational()), 1..5)
        .prop_map(move |terms| Multivector::from_terms(n, terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pointwise_kelvin_is_an_involution(
        (n, a, b, x) in (1usize..=5).prop_flat_map(|n| (Just(n), multivector(n), multivector(n), rational_norm_point(n)))
    ) {
        // a generic, non-axial Clifford-valued function
        let f = |y: &Paravector<BigRational>| {
            a.checked_mul(&y.to_multivector())?.checked_mul(&b)
        };
        let once = |y: &Paravector<BigRational>| kelvin(n, f, y);
        prop_assert_eq!(kelvin(n, once, &x).unwrap(), f(&x).unwrap());
    }

    #[test]
    fn pointwise_kelvin_matches_axial_form(
        (n, pair, x) in (1usize..=5).prop_flat_map(|n| (Just(n), poly_pair(), rational_norm_point(n)))
    ) {
        prop_assume!(!x.vec_norm_squared().is_zero());
        let f = |y: &Paravector<BigRational>| pair.eval_exact(y).map(|v| v.to_multivector());
        let pointwise = kelvin(n, f, &x).unwrap();
        let symbolic = kelvin_axial(&pair, n).eval_exact(&x).unwrap();
        prop_assert_eq!(pointwise, symbolic.to_multivector());
    }

    #[test]
    fn monomials_are_homogeneous(
        (n, k, plus, s, seed) in (2usize..=5, 0u32..=6, any::<bool>(), 0.2f64..4.0, any::<u64>())
    ) {
        prop_assume!(plus || k >= 1);
        let m = if plus { p_plus(k, n).unwrap() } else { p_minus(k, n).unwrap() };
        let mut rng = common::rng(seed);
        let x = common::point_with_norm(&mut rng, n, 1.3);
        let lhs = m.eval(&x.scale(&s)).unwrap();
        let rhs = m.eval(&x).unwrap().scale(&s.powi(m.degree() as i32));
        prop_assert!(common::distance(&lhs, &rhs) <= 1e-12 * rhs.norm().max(1e-300));
    }

    #[test]
    fn series_image_matches_iterated_laplacian(
        (n, coeffs, shifted, seed) in (
            prop::sample::select(vec![1usize, 3, 5]),
            prop::collection::btree_map(-3i64..=7, -8i32..=8, 1..5),
            any::<bool>(),
            any::<u64>(),
        )
    ) {
        let coeffs: BTreeMap<i64, f64> = coeffs
            .into_iter()
            .filter(|(l, _)| !shifted || *l >= 0)
            .map(|(l, c)| (l, c as f64 / 4.0))
            .collect();
        let center = if shifted { 0.5 } else { 0.0 };
        let f = LaurentSeries::new(center, coeffs, 0.0, f64::INFINITY).unwrap();
        let mut exact = f.axial_of_series().unwrap();
        for _ in 0..(n - 1) / 2 {
            exact = laplacian_axial(&exact, n);
        }
        if (n - 1) % 4 == 2 {
            exact = exact.scale(&rational(-1, 1));
        }
        let mut rng = common::rng(seed);
        let x = common::point_with_norm(&mut rng, n, 1.7).checked_add(&Paravector::real(n, center).unwrap()).unwrap();
        let got = beta_series(&f, n, &x).unwrap();
        let want = exact.eval_paravector(&x);
        prop_assert!(
            common::distance(&got, &want) <= 1e-10 * want.norm().max(1.0),
            "{:?} vs {:?}", got.to_vec(), want.to_vec()
        );
    }
}
