//! Independent floating-point oracles shared by the integration tests.
#![allow(dead_code)]

use dispersion_core::densities::DensityKind;
use dispersion_core::exact::poly::horner;
use dispersion_core::exact::rational;
use dispersion_core::sk::Expansion;

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on `P_n`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
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
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Adaptive bisection with a fixed Gauss–Legendre rule per panel.
fn adaptive<F: Fn(f64) -> f64>(f: &F, rule: &[(f64, f64)], a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let panel = |a: f64, b: f64| {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        rule.iter().map(|&(x, w)| w * f(c + h * x)).sum::<f64>() * h
    };
    let m = 0.5 * (a + b);
    let whole = panel(a, b);
    let halves = panel(a, m) + panel(m, b);
    if depth == 0 || (whole - halves).abs() <= tol {
        return halves;
    }
    adaptive(f, rule, a, m, tol / 2.0, depth - 1) + adaptive(f, rule, m, b, tol / 2.0, depth - 1)
}

/// `∫₀^∞ e^{-t} t^w R(ξ,t)²` (or with the roles swapped) directly from the
/// expansion, in floating point.
pub fn quadrature_density(e: &Expansion, kind: DensityKind, xi: f64) -> f64 {
    let free = kind.free_coordinate();
    let other = 1 - free;
    let w = e.bases[other].weight_exponent as i32;
    let terms: Vec<(f64, f64, Vec<f64>)> = e
        .iter()
        .map(|((l, n), c)| {
            let labels = [l, n];
            let fv = horner(&e.bases[free].function(labels[free]).to_f64_coeffs(), xi);
            let oc = e.bases[other].function(labels[other]).to_f64_coeffs();
            (rational::to_f64(c), fv, oc)
        })
        .collect();
    let integrand = |t: f64| {
        let r: f64 = terms.iter().map(|(c, fv, oc)| c * fv * horner(oc, t)).sum();
        (-t).exp() * t.powi(w) * r * r
    };
    // split where the weight peaks; the tail past 250 is below 1e-60
    let cuts = [0.0, 5.0, 10.0, 20.0, 40.0, 80.0, 150.0, 250.0];
    let rule = gauss_legendre(20);
    let coarse: f64 = cuts.windows(2).map(|w| adaptive(&integrand, &rule, w[0], w[1], f64::INFINITY, 0)).sum();
    let tol = 1e-13 * coarse.abs().max(f64::MIN_POSITIVE);
    cuts.windows(2).map(|w| adaptive(&integrand, &rule, w[0], w[1], tol, 20)).sum()
}
