//! Exact density-functional path: expand the correlation in the orbitals
//! that diagonalize the density, `R̃ = Σ ã_{n,m} φ_n(ξ) φ_m(ξ')`, and make the
//! energy functional stationary in the coefficients.
//!
//! The functional is the quadratic form `bᵀã - ãᵀQã`, so stationarity is the
//! linear system `(Q + Qᵀ) ã = b`, solved exactly.

use num_traits::Zero;

use super::functional::{quadratic_value, EnergyFunctional};
use crate::error::Result;
use crate::exact::rational::{self, Rational};
use crate::exact::BasisSpec;
use crate::sk::assemble::ProductTables;
use crate::sk::solve::solve_dense;
use crate::sk::{normalization_constant, Channel, ChannelTag, Expansion, Method, SolutionRecord, Truncation};

/// Orbital family per coordinate: `φ = L⁴` for a dipole coordinate,
/// `χ = L⁶` for a quadrupole one.
pub fn orbital_bases(tag: ChannelTag) -> [BasisSpec; 2] {
    match tag {
        ChannelTag::A => [BasisSpec::PHI, BasisSpec::PHI],
        ChannelTag::B => [BasisSpec::PHI, BasisSpec::CHI],
        ChannelTag::C => [BasisSpec::CHI, BasisSpec::CHI],
    }
}

/// `ω_m = m!/(m-α)!`, the orbital norm under its weight.
pub fn orbital_weight(basis: BasisSpec, label: u32) -> Rational {
    basis.norm(label)
}

/// Orbital cells spanning the same polynomial space as the tabulated
/// truncation: each cell is mapped to the orbitals of equal degree.
pub fn orbital_truncation(tag: ChannelTag, order: u32) -> Result<Truncation> {
    let ch = Channel::new(tag);
    let [o1, o2] = orbital_bases(tag);
    let cells = Truncation::tabulated(tag, order)?
        .cells()
        .iter()
        .map(|&(l, n)| {
            (o1.index_of_degree(ch.first.basis.degree(l)), o2.index_of_degree(ch.second.basis.degree(n)))
        })
        .collect();
    Truncation::from_cells(order, cells)
}

/// The quadratic form of the functional over an orbital truncation.
#[derive(Debug, Clone)]
pub struct StationarySystem {
    pub channel: ChannelTag,
    pub truncation: Truncation,
    pub bases: [BasisSpec; 2],
    /// `Q_ij = ∫∫ w B_i D[B_j]`
    pub quadratic: Vec<Vec<Rational>>,
    /// `b_i = ½∫∫ w B_i`
    pub linear: Vec<Rational>,
    tables: ProductTables,
}

impl StationarySystem {
    pub fn new(tag: ChannelTag, truncation: Truncation, bases: [BasisSpec; 2]) -> Self {
        let ch = Channel::new(tag);
        let (lmax, nmax) = truncation.max_labels();
        let tables =
            ProductTables::new((bases[0], ch.first.operator), (bases[1], ch.second.operator), lmax, nmax);
        let cells = truncation.cells();
        let quadratic = cells
            .iter()
            .map(|&ci| cells.iter().map(|&cj| tables.operator_entry(ci, cj)).collect())
            .collect();
        let half = rational::frac(1, 2);
        let linear = cells.iter().map(|&c| tables.moment_entry(c) * &half).collect();
        Self { channel: tag, truncation, bases, quadratic, linear, tables }
    }

    /// `∂/∂ã_i (bᵀã - ãᵀQã) = b_i - Σ_j (Q_ij + Q_ji) ã_j`.
    pub fn gradient(&self, a: &[Rational]) -> Vec<Rational> {
        let n = a.len();
        (0..n)
            .map(|i| {
                let mut g = self.linear[i].clone();
                for (j, aj) in a.iter().enumerate() {
                    if aj.is_zero() {
                        continue;
                    }
                    g -= (&self.quadratic[i][j] + &self.quadratic[j][i]) * aj;
                }
                g
            })
            .collect()
    }

    /// Unscaled functional value.
    pub fn value(&self, a: &[Rational]) -> Rational {
        quadratic_value(&self.tables, self.truncation.cells(), a)
    }

    pub fn solve(&self) -> Result<Vec<Rational>> {
        let n = self.linear.len();
        let hessian = (0..n)
            .map(|i| (0..n).map(|j| &self.quadratic[i][j] + &self.quadratic[j][i]).collect())
            .collect();
        solve_dense(self.truncation.order(), hessian, self.linear.clone())
    }
}

/// A stationary point of the functional with its exact gradient.
#[derive(Debug, Clone)]
pub struct DftSolution {
    pub record: SolutionRecord,
    pub gradient: Vec<Rational>,
}

/// Stationary energy at a tabulated order, with the orbital expansion
/// attached to the record.
pub fn dft_solve(tag: ChannelTag, order: u32) -> Result<DftSolution> {
    let truncation = orbital_truncation(tag, order)?;
    let bases = orbital_bases(tag);
    let system = StationarySystem::new(tag, truncation.clone(), bases);
    let coeffs = system.solve()?;
    let gradient = system.gradient(&coeffs);
    let value = system.value(&coeffs);
    let expansion = Expansion::with_bases(tag, bases, truncation, coeffs);
    let energy_constant = EnergyFunctional::new(tag).prefactor() * value;
    let normalization_constant = normalization_constant(&expansion);
    let record = SolutionRecord {
        channel: tag,
        order,
        method: Method::Dft,
        expansion,
        energy_constant,
        normalization_constant,
    };
    Ok(DftSolution { record, gradient })
}
