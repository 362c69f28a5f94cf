//! Gauss-Legendre quadrature rules on `[-1, 1]`, cached by node count.
//!
//! Nodes are roots of the Legendre polynomial `P_n`, found by Newton
//! iteration from the Chebyshev-angle initial guesses; weights are
//! `2 / ((1 - x^2) P_n'(x)^2)`. Accuracy of nodes and weights is at the
//! roundoff level for the node counts used here (up to a few thousand).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// A fixed-order Gauss-Legendre rule.
#[derive(Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    fn build(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Initial guess for the i-th root (descending order).
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Evaluate P_n and P_n' by the three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussRule { nodes, weights }
    }
}

/// Return the (cached) `n`-point Gauss-Legendre rule.
pub fn gauss_legendre(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(GaussRule::build(n)))
        .clone()
}

/// Integrate `f` over `[a, b]` with the given rule.
pub fn integrate_rule(rule: &GaussRule, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut total = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        total += w * f(mid + half * x);
    }
    half * total
}
