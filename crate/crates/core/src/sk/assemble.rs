//! Galerkin projection of the correlation equation onto a truncated basis.
//!
//! Every entry is an exact integral: the operator is applied to each basis
//! product, the result is multiplied by the projection weight
//! `ξ^{w} e^{-ξ} ξ'^{w'} e^{-ξ'}` and a test product, and integrated with
//! factorial moments. Because the operator separates into one-coordinate
//! pieces, each entry factors into one-dimensional tables.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_traits::Zero;

use super::channel::{Channel, RadialOperator};
use super::truncation::Truncation;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{weighted_inner, weighted_integral, BasisSpec, Poly};

/// One-dimensional integral tables for a basis under its projection weight.
#[derive(Debug, Clone)]
pub struct CoordinateTables {
    first: u32,
    functions: Vec<Poly>,
    /// `∫ ξ^w e^{-ξ} B_m B_l`
    gram: Vec<Vec<Rational>>,
    /// `∫ ξ^w e^{-ξ} B_m op[B_l]`
    operator: Vec<Vec<Rational>>,
    /// `∫ ξ^w e^{-ξ} B_m`
    moments: Vec<Rational>,
}

impl CoordinateTables {
    pub fn new(basis: BasisSpec, op: RadialOperator, labels: RangeInclusive<u32>) -> Self {
        let w = basis.weight_exponent;
        assert!(w >= 1, "projection weight must vanish at the origin");
        let first = *labels.start();
        assert!(first >= basis.first_index());
        let functions: Vec<Poly> = labels.clone().map(|l| basis.function(l)).collect();
        let actions: Vec<Poly> = functions.iter().map(|f| op.scaled_action(f)).collect();
        let gram = functions
            .iter()
            .map(|t| functions.iter().map(|b| weighted_inner(t, b, w)).collect())
            .collect();
        // ξ^w · op[B] = ξ^{w-1} · (ξ op[B])
        let operator = functions
            .iter()
            .map(|t| actions.iter().map(|a| weighted_inner(t, a, w - 1)).collect())
            .collect();
        let moments = functions.iter().map(|t| weighted_integral(t, w)).collect();
        Self { first, functions, gram, operator, moments }
    }

    fn idx(&self, label: u32) -> usize {
        (label - self.first) as usize
    }

    pub fn function(&self, label: u32) -> &Poly {
        &self.functions[self.idx(label)]
    }

    pub fn gram(&self, m: u32, l: u32) -> &Rational {
        &self.gram[self.idx(m)][self.idx(l)]
    }

    pub fn operator(&self, m: u32, l: u32) -> &Rational {
        &self.operator[self.idx(m)][self.idx(l)]
    }

    pub fn moment(&self, m: u32) -> &Rational {
        &self.moments[self.idx(m)]
    }
}

/// Both coordinate tables for a channel, covering the labels of a truncation.
#[derive(Debug, Clone)]
pub struct ProductTables {
    pub first: CoordinateTables,
    pub second: CoordinateTables,
}

impl ProductTables {
    pub fn for_channel(channel: &Channel, truncation: &Truncation) -> Self {
        let (lmax, nmax) = truncation.max_labels();
        Self::new(
            (channel.first.basis, channel.first.operator),
            (channel.second.basis, channel.second.operator),
            lmax,
            nmax,
        )
    }

    pub fn new(
        first: (BasisSpec, RadialOperator),
        second: (BasisSpec, RadialOperator),
        first_max: u32,
        second_max: u32,
    ) -> Self {
        Self {
            first: CoordinateTables::new(first.0, first.1, first.0.first_index()..=first_max),
            second: CoordinateTables::new(second.0, second.1, second.0.first_index()..=second_max),
        }
    }

    /// `∫∫ w T_{m,s} (op₁+op₂)[B_{l,n}]`
    pub fn operator_entry(&self, (m, s): (u32, u32), (l, n): (u32, u32)) -> Rational {
        self.first.operator(m, l) * self.second.gram(s, n) + self.first.gram(m, l) * self.second.operator(s, n)
    }

    /// `∫∫ w B_{l,n} B_{l',n'}`
    pub fn gram_entry(&self, (l, n): (u32, u32), (l2, n2): (u32, u32)) -> Rational {
        self.first.gram(l, l2) * self.second.gram(n, n2)
    }

    /// `∫∫ w B_{l,n}`
    pub fn moment_entry(&self, (l, n): (u32, u32)) -> Rational {
        self.first.moment(l) * self.second.moment(n)
    }
}

/// Exact sparse square system `M x = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub order: u32,
    pub dimension: usize,
    pub entries: BTreeMap<(usize, usize), Rational>,
    pub rhs: Vec<Rational>,
}

impl LinearSystem {
    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row_nonzeros(&self, row: usize) -> usize {
        self.entries.range((row, 0)..(row + 1, 0)).count()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.dimension]; self.dimension];
        for (&(r, c), v) in &self.entries {
            m[r][c] = v.clone();
        }
        m
    }

    /// `M x - rhs`, exactly.
    pub fn residual(&self, x: &[Rational]) -> Vec<Rational> {
        let mut r: Vec<Rational> = self.rhs.iter().map(|b| -b).collect();
        for (&(row, col), v) in &self.entries {
            r[row] += v * &x[col];
        }
        r
    }
}

/// Project the channel equation onto the truncation's cells.
///
/// Rows are scaled by `4 / (I₁ I₂)`, with `I` the weighted integral of each
/// coordinate's lowest basis function, so the inhomogeneity projects onto
/// the unit pattern `Δ_{m,s}`. For channel A this reproduces the classical
/// recurrence with `g_s = (s-1)(s+1)!/(144 (s-2)!)` and `q_s = (s+1)!/(s-2)!`.
pub fn assemble(channel: &Channel, truncation: &Truncation) -> Result<LinearSystem> {
    if truncation.is_empty() {
        return Err(Error::EmptyTruncation);
    }
    let tables = ProductTables::for_channel(channel, truncation);
    let (l0, n0) = (channel.first.basis.first_index(), channel.second.basis.first_index());
    let scale = rational::int(4) / (tables.first.moment(l0) * tables.second.moment(n0));
    let rhs_scale = &scale * channel.inhomogeneity();

    let cells = truncation.cells();
    let mut entries = BTreeMap::new();
    let mut rhs = Vec::with_capacity(cells.len());
    for (row, &test) in cells.iter().enumerate() {
        for (col, &trial) in cells.iter().enumerate() {
            let v = tables.operator_entry(test, trial);
            if !v.is_zero() {
                entries.insert((row, col), v * &scale);
            }
        }
        rhs.push(tables.moment_entry(test) * &rhs_scale);
    }
    Ok(LinearSystem { order: truncation.order(), dimension: cells.len(), entries, rhs })
}
