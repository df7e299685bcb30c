//! One-dimensional quadrature: Gauss-Legendre and the trapezoid rule.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which rule a [`QuadratureSpec`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadRule {
    Trapezoid,
    GaussLegendre,
}

/// Node count, rule and target absolute tolerance for an integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub node_count: usize,
    pub rule: QuadRule,
    pub abs_tolerance: f64,
}

impl QuadratureSpec {
    pub fn new(node_count: usize, rule: QuadRule, abs_tolerance: f64) -> Result<Self> {
        if node_count < 16 {
            return Err(Error::InvalidArgument(format!(
                "node_count must be at least 16, got {node_count}"
            )));
        }
        if abs_tolerance.is_nan() || abs_tolerance <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "abs_tolerance must be positive, got {abs_tolerance}"
            )));
        }
        Ok(Self {
            node_count,
            rule,
            abs_tolerance,
        })
    }

    pub fn gauss_legendre(node_count: usize, abs_tolerance: f64) -> Result<Self> {
        Self::new(node_count, QuadRule::GaussLegendre, abs_tolerance)
    }

    /// Default rule for resolving n-copy sector oscillations up to spin j:
    /// the fastest mode has frequency n*j + k_max = 2nj, so the node count
    /// scales with n * (2j + 1).
    pub fn auto_for(n: u32, twice_j: u32) -> Self {
        let nodes = (16 * n as usize * (twice_j as usize + 1)).max(4096);
        Self {
            node_count: nodes,
            rule: QuadRule::GaussLegendre,
            abs_tolerance: 1e-9,
        }
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        match self.rule {
            QuadRule::GaussLegendre => GaussLegendre::new(self.node_count).integrate(a, b, f),
            QuadRule::Trapezoid => trapezoid(self.node_count, a, b, f),
        }
    }
}

/// Composite trapezoid rule with `nodes` equally spaced points (endpoints included).
pub fn trapezoid<F: FnMut(f64) -> f64>(nodes: usize, a: f64, b: f64, mut f: F) -> f64 {
    assert!(nodes >= 2);
    let h = (b - a) / (nodes - 1) as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..nodes - 1 {
        sum += f(a + h * i as f64);
    }
    sum * h
}

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Nodes are the roots of the Legendre polynomial P_n, found by Newton
/// iteration from the Chebyshev initial guess; weights are
/// 2 / ((1 - x^2) P_n'(x)^2). Exact for polynomials of degree 2n - 1.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "need at least 2 nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-like initial guess for the i-th positive root
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre recurrence: p0 = 1, p1 = x
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
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = x;
            nodes[n - 1 - i] = -x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}
