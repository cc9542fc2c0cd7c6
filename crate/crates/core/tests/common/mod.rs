#![allow(dead_code)]

use fueter::clifford::Paravector;
use fueter::constants::omega;
use fueter::kernels::Which;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction in R^dim.
pub fn direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 0.1 && norm <= 1.0 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// Random point of R^{n+1} with the given modulus.
pub fn point_with_norm(rng: &mut ChaCha8Rng, n: usize, modulus: f64) -> Paravector<f64> {
    let d = direction(rng, n + 1);
    Paravector::from_components(&d.iter().map(|c| c * modulus).collect::<Vec<_>>()).unwrap()
}

/// Point `x0 + r * omega` with a random unit `omega` in R^n.
pub fn axial_point(rng: &mut ChaCha8Rng, n: usize, x0: f64, r: f64) -> Paravector<f64> {
    let w = direction(rng, n);
    Paravector::new(x0, w.into_iter().map(|c| c * r).collect()).unwrap()
}

pub fn distance(a: &Paravector<f64>, b: &Paravector<f64>) -> f64 {
    a.to_vec()
        .iter()
        .zip(b.to_vec())
        .map(|(p, q)| (p - q).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Direct surface integral of `E(x - w)` (or `E(x - w) w`) over the unit
/// sphere of the vector space, by jittered-grid Monte-Carlo with a fixed
/// seed. Only `n = 2` (circle) and `n = 3` (two-sphere) are supported.
/// Returns the paravector part; the bivector part of `E(x - w) w`
/// integrates to zero.
pub fn sphere_integral_mc(which: Which, n: usize, x: &Paravector<f64>, strata: usize, seed: u64) -> Paravector<f64> {
    let mut rng = rng(seed);
    let om = omega(n).to_f64();
    let x0 = x.x0;
    let xv = &x.vec;
    let mut acc = vec![0.0; n + 1];
    let mut add = |w: &[f64], weight: f64| {
        let u: Vec<f64> = xv.iter().zip(w).map(|(a, b)| a - b).collect();
        let d2 = x0 * x0 + u.iter().map(|c| c * c).sum::<f64>();
        let f = weight / (om * d2.powf((n as f64 + 1.0) / 2.0));
        match which {
            Which::Plus => {
                acc[0] += f * x0;
                for i in 0..n {
                    acc[i + 1] -= f * u[i];
                }
            }
            Which::Minus => {
                let dot: f64 = u.iter().zip(w).map(|(a, b)| a * b).sum();
                acc[0] += f * dot;
                for i in 0..n {
                    acc[i + 1] += f * x0 * w[i];
                }
            }
        }
    };
    match n {
        2 => {
            let count = strata * strata;
            let weight = 2.0 * std::f64::consts::PI / count as f64;
            for j in 0..count {
                let th = 2.0 * std::f64::consts::PI * (j as f64 + rng.random::<f64>()) / count as f64;
                add(&[th.cos(), th.sin()], weight);
            }
        }
        3 => {
            let weight = 4.0 * std::f64::consts::PI / (strata * strata) as f64;
            for i in 0..strata {
                for j in 0..strata {
                    let z = -1.0 + 2.0 * (i as f64 + rng.random::<f64>()) / strata as f64;
                    let ph = 2.0 * std::f64::consts::PI * (j as f64 + rng.random::<f64>()) / strata as f64;
                    let s = (1.0 - z * z).max(0.0).sqrt();
                    add(&[s * ph.cos(), s * ph.sin(), z], weight);
                }
            }
        }
        _ => panic!("sphere oracle supports n = 2, 3"),
    }
    Paravector::from_components(&acc).unwrap()
}

/// Same surface integral on a tensor lattice: periodic trapezoid in the
/// azimuth and Gauss–Legendre in the height (the azimuthal average of a
/// smooth function is smooth in the height).
pub fn sphere_integral_lattice(which: Which, n: usize, x: &Paravector<f64>) -> Paravector<f64> {
    let om = omega(n).to_f64();
    let mut acc = vec![0.0; n + 1];
    let mut add = |w: &[f64], weight: f64| {
        let u: Vec<f64> = x.vec.iter().zip(w).map(|(a, b)| a - b).collect();
        let d2 = x.x0 * x.x0 + u.iter().map(|c| c * c).sum::<f64>();
        let f = weight / (om * d2.powf((n as f64 + 1.0) / 2.0));
        match which {
            Which::Plus => {
                acc[0] += f * x.x0;
                for i in 0..n {
                    acc[i + 1] -= f * u[i];
                }
            }
            Which::Minus => {
                acc[0] += f * u.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
                for i in 0..n {
                    acc[i + 1] += f * x.x0 * w[i];
                }
            }
        }
    };
    let tau = std::f64::consts::TAU;
    match n {
        2 => {
            let count = 4096;
            for j in 0..count {
                let th = tau * j as f64 / count as f64;
                add(&[th.cos(), th.sin()], tau / count as f64);
            }
        }
        3 => {
            let gl = fueter::quadrature::gauss_legendre(96).unwrap();
            let count = 512;
            for (z, wz) in gl.nodes.iter().zip(&gl.weights) {
                let s = (1.0 - z * z).sqrt();
                for j in 0..count {
                    let ph = tau * j as f64 / count as f64;
                    add(&[s * ph.cos(), s * ph.sin(), *z], wz * tau / count as f64);
                }
            }
        }
        _ => panic!("sphere lattice supports n = 2, 3"),
    }
    Paravector::from_components(&acc).unwrap()
}
