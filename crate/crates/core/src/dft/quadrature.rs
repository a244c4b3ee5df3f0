//! Product Gauss rules for `∫₀^∞∫₀^∞ e^{-ξ-ξ'} g(ξ,ξ') dξ dξ'`.
//!
//! The quarter plane is mapped to `ξ = ts`, `ξ' = t(1-s)` with
//! `t ∈ [0,∞)`, `s ∈ [0,1]` and Jacobian `t`. The weight becomes `e^{-t}`,
//! native to Gauss–Laguerre, and integrands that only depend on `ξ/(ξ+ξ')`
//! near the corner become smooth in `s`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `L_n(x)` and `L_{n-1}(x)` by the three-term recurrence.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, 1.0 - x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0 - x) * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// `n`-point Gauss–Laguerre rule for `∫₀^∞ e^{-x} f(x) dx`.
///
/// Roots by Newton's method from the usual asymptotic starting guesses;
/// weights `w_i = x_i / (n L_{n-1}(x_i))²`.
pub fn gauss_laguerre(n: usize) -> Rule {
    assert!(n >= 1);
    let nf = n as f64;
    let mut nodes: Vec<f64> = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        for _ in 0..200 {
            let (p, pm) = laguerre_pair(n, z);
            // L_n'(z) = n (L_n - L_{n-1}) / z
            let dp = nf * (p - pm) / z;
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let (_, pm) = laguerre_pair(n, z);
        nodes.push(z);
        weights.push(z / (nf * nf * pm * pm));
    }
    Rule { nodes, weights }
}

/// `n`-point Gauss–Legendre rule mapped to `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Rule {
    assert!(n >= 1);
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - x));
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    Rule { nodes, weights }
}

/// Polar product rule at a fixed node count per direction.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarRule {
    radial: Rule,
    angular: Rule,
}

impl PolarRule {
    pub fn new(n: usize) -> Self {
        Self { radial: gauss_laguerre(n), angular: gauss_legendre_unit(n) }
    }

    pub fn nodes_per_direction(&self) -> usize {
        self.radial.len()
    }

    /// `∫∫ e^{-ξ-ξ'} g(ξ,ξ')`. `g` is evaluated only at interior points.
    pub fn integrate<G: Fn(f64, f64) -> f64>(&self, g: G) -> f64 {
        let mut total = 0.0;
        for (t, wt) in self.radial.iter() {
            let mut inner = 0.0;
            for (s, ws) in self.angular.iter() {
                inner += ws * g(t * s, t * (1.0 - s));
            }
            total += wt * t * inner;
        }
        total
    }
}

/// Value with the difference between the last two refinement levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

/// Node-count ladder and stopping rule for [`integrate_adaptive`].
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveOptions {
    pub start: usize,
    pub max: usize,
    /// Accept when successive levels differ by at most
    /// `tolerance · max(1, |value| · scale)`.
    pub tolerance: f64,
    /// Converts the integral into the quantity the tolerance is meant for.
    pub scale: f64,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { start: 16, max: 128, tolerance: 1e-8, scale: 1.0 }
    }
}

/// Double the node count until two successive estimates agree.
pub fn integrate_adaptive<G: Fn(f64, f64) -> f64>(g: G, opts: &AdaptiveOptions) -> Result<Estimate> {
    let mut n = opts.start.max(1);
    let mut prev = PolarRule::new(n).integrate(&g);
    if !prev.is_finite() {
        return Err(Error::NonFinite(prev));
    }
    loop {
        let next_n = 2 * n;
        if next_n > opts.max {
            return Err(Error::QuadratureNotConverged { estimate: prev, error_estimate: f64::INFINITY });
        }
        let next = PolarRule::new(next_n).integrate(&g);
        if !next.is_finite() {
            return Err(Error::NonFinite(next));
        }
        let err = (next - prev).abs() * opts.scale.abs();
        let allowed = opts.tolerance * (next.abs() * opts.scale.abs()).max(1.0);
        if err <= allowed {
            return Ok(Estimate { value: next, error: err, nodes: next_n });
        }
        if 2 * next_n > opts.max {
            return Err(Error::QuadratureNotConverged { estimate: next, error_estimate: (next - prev).abs() });
        }
        prev = next;
        n = next_n;
    }
}
