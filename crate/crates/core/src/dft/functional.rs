//! The energy as a functional of the correlation,
//! `E[R] = κ ∫∫ ξ^w ξ'^{w'} e^{-ξ-ξ'} R (1/2 - D[R])`,
//! where `D = op₁ + op₂` and the `-1/4` source term is folded into the
//! operator (so `D[R] = 1/4` at the exact solution). The functional is
//! stationary exactly there, and its stationary value is `(κ/4)∫∫ w R`.

use std::sync::OnceLock;

use num_traits::Zero;

use super::quadrature::{integrate_adaptive, AdaptiveOptions, Estimate, PolarRule};
use crate::error::Result;
use crate::exact::poly::horner;
use crate::exact::rational::{self, Rational};
use crate::sk::assemble::ProductTables;
use crate::sk::{exact_record, Channel, ChannelTag, Expansion};

/// Value and pure second-order partial derivatives of a correlation at a
/// point; mixed derivatives never enter the operator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d11: f64,
    pub d2: f64,
    pub d22: f64,
}

/// A correlation `R(ξ, ξ')` that can be sampled with derivatives.
pub trait TrialCorrelation: Sync {
    fn jet(&self, xi: f64, eta: f64) -> Jet;
}

/// A solved expansion sampled in floating point.
#[derive(Debug, Clone)]
pub struct ExpansionCorrelation {
    terms: Vec<(f64, usize, usize)>,
    first: Vec<[Vec<f64>; 3]>,
    second: Vec<[Vec<f64>; 3]>,
}

impl ExpansionCorrelation {
    pub fn new(e: &Expansion) -> Self {
        let (lmax, nmax) = e.truncation.max_labels();
        let [b1, b2] = e.bases;
        let derivs = |p: crate::exact::Poly| {
            let d1 = p.derivative();
            let d2 = d1.derivative();
            [p.to_f64_coeffs(), d1.to_f64_coeffs(), d2.to_f64_coeffs()]
        };
        let first = (b1.first_index()..=lmax).map(|l| derivs(b1.function(l))).collect();
        let second = (b2.first_index()..=nmax).map(|n| derivs(b2.function(n))).collect();
        let terms = e
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((l, n), c)| {
                (rational::to_f64(c), (l - b1.first_index()) as usize, (n - b2.first_index()) as usize)
            })
            .collect();
        Self { terms, first, second }
    }
}

impl TrialCorrelation for ExpansionCorrelation {
    fn jet(&self, xi: f64, eta: f64) -> Jet {
        let eval = |fam: &[[Vec<f64>; 3]], x: f64| -> Vec<[f64; 3]> {
            fam.iter().map(|p| [horner(&p[0], x), horner(&p[1], x), horner(&p[2], x)]).collect()
        };
        let (a, b) = (eval(&self.first, xi), eval(&self.second, eta));
        let mut j = Jet::default();
        for &(c, l, n) in &self.terms {
            let (fa, fb) = (a[l], b[n]);
            j.value += c * fa[0] * fb[0];
            j.d1 += c * fa[1] * fb[0];
            j.d11 += c * fa[2] * fb[0];
            j.d2 += c * fa[0] * fb[1];
            j.d22 += c * fa[0] * fb[2];
        }
        j
    }
}

/// Energy functional of one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyFunctional {
    pub channel: Channel,
}

impl EnergyFunctional {
    pub fn new(tag: ChannelTag) -> Self {
        Self { channel: Channel::new(tag) }
    }

    /// Projection weight exponents of the two coordinates.
    pub fn weights(&self) -> (i32, i32) {
        (self.channel.first.basis.weight_exponent as i32, self.channel.second.basis.weight_exponent as i32)
    }

    /// Prefactor `κ`, fixed so that the functional at the order-one exact
    /// solution equals the order-one energy constant.
    pub fn prefactor(&self) -> Rational {
        static CELLS: [OnceLock<Rational>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let tag = self.channel.tag;
        CELLS[tag as usize]
            .get_or_init(|| {
                let r = exact_record(tag, 1).expect("order-one system is nonsingular");
                r.energy_constant / self.unscaled_exact(&r.expansion)
            })
            .clone()
    }

    /// `∫∫ w R (1/2 - D[R])` for an expansion in any polynomial bases,
    /// integrated exactly.
    pub fn unscaled_exact(&self, e: &Expansion) -> Rational {
        let (lmax, nmax) = e.truncation.max_labels();
        let tables = ProductTables::new(
            (e.bases[0], self.channel.first.operator),
            (e.bases[1], self.channel.second.operator),
            lmax,
            nmax,
        );
        quadratic_value(&tables, e.truncation.cells(), &e.coeffs)
    }

    pub fn exact(&self, e: &Expansion) -> Rational {
        self.prefactor() * self.unscaled_exact(e)
    }

    /// Local integrand `w R (1/2 - D[R])` without the exponential.
    pub fn density<T: TrialCorrelation + ?Sized>(&self, r: &T, xi: f64, eta: f64) -> f64 {
        let (w1, w2) = self.weights();
        let j = r.jet(xi, eta);
        let d = self.channel.first.operator.apply(xi, j.value, j.d1, j.d11)
            + self.channel.second.operator.apply(eta, j.value, j.d2, j.d22);
        xi.powi(w1) * eta.powi(w2) * j.value * (0.5 - d)
    }

    /// Energy by adaptive quadrature; the tolerance applies to the energy.
    pub fn numeric<T: TrialCorrelation + ?Sized>(&self, r: &T, opts: &AdaptiveOptions) -> Result<Estimate> {
        let kappa = rational::to_f64(&self.prefactor());
        let opts = AdaptiveOptions { scale: kappa, ..opts.clone() };
        let est = integrate_adaptive(|x, y| self.density(r, x, y), &opts)?;
        Ok(Estimate { value: est.value * kappa, error: est.error, nodes: est.nodes })
    }

    /// Energy on a fixed rule, for use inside optimizers where the node
    /// set must not change between evaluations.
    pub fn numeric_fixed<T: TrialCorrelation + ?Sized>(&self, r: &T, rule: &PolarRule) -> f64 {
        rational::to_f64(&self.prefactor()) * rule.integrate(|x, y| self.density(r, x, y))
    }
}

/// `bᵀa - aᵀQa` with `b_i = ½∫∫ w B_i` and `Q_ij = ∫∫ w B_i D[B_j]`.
pub(crate) fn quadratic_value(tables: &ProductTables, cells: &[(u32, u32)], a: &[Rational]) -> Rational {
    let half = rational::frac(1, 2);
    let mut total = Rational::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        total += ai * tables.moment_entry(cells[i]) * &half;
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            let q = tables.operator_entry(cells[i], cells[j]);
            if !q.is_zero() {
                total -= ai * aj * q;
            }
        }
    }
    total
}
