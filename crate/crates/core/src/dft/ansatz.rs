//! Two closed-form trial correlations and their energies: the zeroth-order
//! form `R₀ = -¼ / (u/ξ + v/ξ')` (for channel A, `-¼ ξξ'/(ξ+ξ')`) and the
//! power ansatz `R = λ ξ^ν ξ'^ν`, whose density is `λ² Γ(w+1+2ν) ξ^{2ν}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::functional::{EnergyFunctional, Jet, TrialCorrelation};
use super::quadrature::{AdaptiveOptions, Estimate, PolarRule};
use super::simplex::{nelder_mead, SimplexOptions};
use crate::densities::{DensityKind, Grid};
use crate::error::{Error, Result};
use crate::exact::rational;
use crate::sk::{Channel, ChannelTag};

/// `R₀ = -¼ / (u/ξ + v/ξ')` with the channel's potential strengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZerothOrder {
    pub u: f64,
    pub v: f64,
}

impl ZerothOrder {
    pub fn for_channel(tag: ChannelTag) -> Self {
        let ch = Channel::new(tag);
        Self { u: ch.first.operator.potential as f64, v: ch.second.operator.potential as f64 }
    }
}

impl TrialCorrelation for ZerothOrder {
    fn jet(&self, xi: f64, eta: f64) -> Jet {
        let s = self.u / xi + self.v / eta;
        let (s1, s11) = (-self.u / (xi * xi), 2.0 * self.u / (xi * xi * xi));
        let (s2, s22) = (-self.v / (eta * eta), 2.0 * self.v / (eta * eta * eta));
        let (inv2, inv3) = (1.0 / (s * s), 1.0 / (s * s * s));
        Jet {
            value: -0.25 / s,
            d1: 0.25 * inv2 * s1,
            d11: 0.25 * (-2.0 * inv3 * s1 * s1 + inv2 * s11),
            d2: 0.25 * inv2 * s2,
            d22: 0.25 * (-2.0 * inv3 * s2 * s2 + inv2 * s22),
        }
    }
}

/// Energy of the zeroth-order correlation by adaptive quadrature.
pub fn sk_zeroth_energy(tag: ChannelTag, opts: &AdaptiveOptions) -> Result<Estimate> {
    EnergyFunctional::new(tag).numeric(&ZerothOrder::for_channel(tag), opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    pub lambda: f64,
    pub nu: f64,
}

/// `R = λ ξ^ν ξ'^ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerAnsatz(pub AnsatzParams);

impl TrialCorrelation for PowerAnsatz {
    fn jet(&self, xi: f64, eta: f64) -> Jet {
        let AnsatzParams { lambda, nu } = self.0;
        let (a, b) = (xi.powf(nu), eta.powf(nu));
        Jet {
            value: lambda * a * b,
            d1: lambda * nu * a / xi * b,
            d11: lambda * nu * (nu - 1.0) * a / (xi * xi) * b,
            d2: lambda * nu * a * b / eta,
            d22: lambda * nu * (nu - 1.0) * a * b / (eta * eta),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzOptions {
    /// Starting exponents of the multi-start search.
    pub starts: Vec<f64>,
    /// Node count of the fixed rule used while optimizing.
    pub search_nodes: usize,
    pub simplex: SimplexOptions,
    /// Rule for the reported energy at the optimum.
    pub quadrature: AdaptiveOptions,
}

impl Default for AnsatzOptions {
    fn default() -> Self {
        Self {
            starts: vec![0.5, 1.0, 1.5],
            search_nodes: 64,
            simplex: SimplexOptions::default(),
            quadrature: AdaptiveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzResult {
    pub channel: ChannelTag,
    pub params: AnsatzParams,
    pub energy: Estimate,
}

/// Stationary λ at fixed ν: the functional is quadratic in λ.
fn best_lambda(f: &EnergyFunctional, rule: &PolarRule, nu: f64) -> f64 {
    let at = |lambda| f.numeric_fixed(&PowerAnsatz(AnsatzParams { lambda, nu }), rule);
    let (plus, minus) = (at(1.0), at(-1.0));
    // E(λ) = λa - λ²q
    let (a, q) = ((plus - minus) / 2.0, -(plus + minus) / 2.0);
    a / (2.0 * q)
}

/// Best `(λ, ν)` of the power ansatz. The functional is made stationary
/// over both parameters, which maximizes the (negative-prefactor) energy.
pub fn ansatz_optimize(tag: ChannelTag, opts: &AnsatzOptions) -> Result<AnsatzResult> {
    if opts.starts.is_empty() {
        return Err(Error::InvalidParameter("no starting exponents".into()));
    }
    let f = EnergyFunctional::new(tag);
    let rule = PolarRule::new(opts.search_nodes);
    let objective = |x: &[f64]| {
        if x[1] <= 0.0 {
            return f64::INFINITY;
        }
        -f.numeric_fixed(&PowerAnsatz(AnsatzParams { lambda: x[0], nu: x[1] }), &rule)
    };

    let runs: Vec<Result<(f64, AnsatzParams)>> = opts
        .starts
        .par_iter()
        .map(|&nu| {
            let lambda = best_lambda(&f, &rule, nu);
            let steps = [0.1 * lambda.abs().max(1e-3), 0.1 * nu];
            let m = nelder_mead(objective, &[lambda, nu], &steps, &opts.simplex)?;
            Ok((m.value, AnsatzParams { lambda: m.point[0], nu: m.point[1] }))
        })
        .collect();

    let mut found: Vec<(f64, AnsatzParams)> = Vec::new();
    let mut first_err = None;
    for r in runs {
        match r {
            Ok(v) => found.push(v),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if found.is_empty() {
        return Err(first_err.expect("at least one start"));
    }
    // lowest objective; near-ties broken by the parameters for a
    // scheduling-independent answer
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let best = found[0].0;
    let tie = opts.simplex.f_tolerance.max(1e-12) * best.abs().max(1.0) * 10.0;
    let (_, params) = found
        .into_iter()
        .filter(|(v, _)| (v - best).abs() <= tie)
        .min_by(|a, b| a.1.lambda.total_cmp(&b.1.lambda).then(a.1.nu.total_cmp(&b.1.nu)))
        .expect("nonempty");

    let energy = f.numeric(&PowerAnsatz(params), &opts.quadrature)?;
    Ok(AnsatzResult { channel: tag, params, energy })
}

/// `λ² Γ(w+1+2ν)`, the constant of the ansatz density for the given kind.
pub fn ansatz_density_constant(params: AnsatzParams, kind: DensityKind) -> f64 {
    let ch = Channel::new(kind.channel());
    let integrated = if kind.free_coordinate() == 0 { ch.second } else { ch.first };
    let w = integrated.basis.weight_exponent as f64;
    params.lambda * params.lambda * libm::tgamma(w + 1.0 + 2.0 * params.nu)
}

/// `(ξ, Const·ξ^{2ν})` on every grid point.
pub fn ansatz_density(params: AnsatzParams, kind: DensityKind, grid: &Grid) -> Result<Vec<(f64, f64)>> {
    if !(params.nu > 0.0) {
        return Err(Error::InvalidParameter(format!("exponent must be positive, got {}", params.nu)));
    }
    let c = ansatz_density_constant(params, kind);
    Ok(grid
        .points()
        .iter()
        .map(|x| {
            let x = rational::to_f64(x);
            (x, c * x.powf(2.0 * params.nu))
        })
        .collect())
}
