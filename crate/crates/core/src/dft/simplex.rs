//! Nelder–Mead simplex minimization with the standard coefficients
//! (reflection 1, expansion 2, contraction ½, shrink ½).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    /// Stop when the spread of function values across the simplex is below
    /// this and the simplex diameter is below `x_tolerance`.
    pub f_tolerance: f64,
    pub x_tolerance: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { max_iterations: 2000, f_tolerance: 1e-12, x_tolerance: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Minimize `f` from `start`, with initial edge lengths `steps`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    steps: &[f64],
    opts: &SimplexOptions,
) -> Result<Minimum> {
    let n = start.len();
    assert_eq!(steps.len(), n);
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += steps[i];
        let v = eval(&x);
        simplex.push((x, v));
    }

    let affine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect()
    };

    for iteration in 0..opts.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[n].1);
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= opts.f_tolerance * best.abs().max(1.0) && diameter <= opts.x_tolerance {
            return Ok(Minimum { point: simplex[0].0.clone(), value: best, iterations: iteration });
        }

        let centroid: Vec<f64> =
            (0..n).map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64).collect();
        let worst_x = simplex[n].0.clone();
        let reflected = affine(&centroid, &worst_x, -1.0);
        let fr = eval(&reflected);

        if fr < simplex[0].1 {
            let expanded = affine(&centroid, &worst_x, -2.0);
            let fe = eval(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            // contract toward the better of the worst point and its reflection
            let (toward, ft) = if fr < worst { (reflected, fr) } else { (worst_x, worst) };
            let contracted = affine(&centroid, &toward, 0.5);
            let fc = eval(&contracted);
            if fc < ft {
                simplex[n] = (contracted, fc);
            } else {
                let x0 = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    let x = affine(&x0, &p.0, 0.5);
                    let v = eval(&x);
                    *p = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Err(Error::OptimizerNotConverged {
        iterations: opts.max_iterations,
        best_value: simplex[0].1,
        best_point: simplex[0].0.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = nelder_mead(f, &[-1.2, 1.0], &[0.5, 0.5], &SimplexOptions::default()).unwrap();
        assert!((m.point[0] - 1.0).abs() < 1e-6 && (m.point[1] - 1.0).abs() < 1e-6, "{:?}", m.point);
    }

    #[test]
    fn shifted_quadratic() {
        let f = |x: &[f64]| 3.0 * (x[0] - 0.25).powi(2) + (x[1] + 2.0).powi(2) - 7.0;
        let m = nelder_mead(f, &[0.0, 0.0], &[1.0, 1.0], &SimplexOptions::default()).unwrap();
        assert!((m.value + 7.0).abs() < 1e-12);
        assert!((m.point[0] - 0.25).abs() < 1e-6);
    }

    #[test]
    fn iteration_limit_returns_best_so_far() {
        let f = |x: &[f64]| (x[0] - 5.0).powi(2) + (x[1] - 5.0).powi(2);
        let opts = SimplexOptions { max_iterations: 3, ..SimplexOptions::default() };
        match nelder_mead(f, &[0.0, 0.0], &[0.1, 0.1], &opts) {
            Err(Error::OptimizerNotConverged { iterations, best_value, best_point }) => {
                assert_eq!(iterations, 3);
                assert_eq!(best_point.len(), 2);
                assert!(best_value < 50.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
