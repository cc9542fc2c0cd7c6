//! Gauss–Jacobi rules by the Golub–Welsch eigenvalue method.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{FueterError, Result};

/// Nodes and weights for `int_{-1}^{1} f(x) (1-x)^alpha (1+x)^beta dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Gauss–Jacobi rule with `count` nodes, `alpha, beta > -1`.
pub fn gauss_jacobi(count: usize, alpha: f64, beta: f64) -> Result<GaussRule> {
    if count == 0 {
        return Err(FueterError::Config("quadrature needs at least one node".into()));
    }
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(FueterError::Domain(format!(
            "Jacobi exponents must exceed -1 (got {alpha}, {beta})"
        )));
    }
    let ab = alpha + beta;
    let mut jm = DMatrix::<f64>::zeros(count, count);
    for k in 0..count {
        let kf = k as f64;
        let denom = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        jm[(k, k)] = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / denom
        };
    }
    for k in 1..count {
        let kf = k as f64;
        let b2 = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        let b = b2.sqrt();
        jm[(k, k - 1)] = b;
        jm[(k - 1, k)] = b;
    }
    let mu0 = 2f64.powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0);
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..count)
        .map(|j| (eig.eigenvalues[j], mu0 * eig.eigenvectors[(0, j)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    if alpha == beta {
        // restore the exact mirror symmetry lost to rounding
        for i in 0..count / 2 {
            let j = count - 1 - i;
            let x = 0.5 * (nodes[j] - nodes[i]);
            let w = 0.5 * (weights[i] + weights[j]);
            nodes[i] = -x;
            nodes[j] = x;
            weights[i] = w;
            weights[j] = w;
        }
        if count % 2 == 1 {
            nodes[count / 2] = 0.0;
        }
    }
    Ok(GaussRule { nodes, weights })
}

pub fn gauss_legendre(count: usize) -> Result<GaussRule> {
    gauss_jacobi(count, 0.0, 0.0)
}

type RuleCache = Mutex<HashMap<(usize, u64), Arc<GaussRule>>>;

/// Symmetric rule `(1 - x^2)^alpha`, built once per `(count, alpha)`.
pub fn symmetric_rule(count: usize, alpha: f64) -> Result<Arc<GaussRule>> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (count, alpha.to_bits());
    if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(gauss_jacobi(count, alpha, alpha)?);
    cache
        .lock()
        .expect("rule cache poisoned")
        .entry(key)
        .or_insert_with(|| rule.clone());
    Ok(rule)
}
