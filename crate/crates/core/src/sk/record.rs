use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::assemble::assemble;
use super::channel::{Channel, ChannelTag};
use super::solve::solve;
use super::truncation::Truncation;
use crate::error::Result;
use crate::exact::rational::{self, ExactFraction, Rational, Rounding};
use crate::exact::BasisSpec;

/// Solved coefficients `c_{l,n}` of `R(ξ,ξ') = Σ c_{l,n} B_l(ξ) B'_n(ξ')`
/// over a truncation. The bases default to the channel's own pair; the
/// orbital expansions of the density-functional path use others.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub channel: ChannelTag,
    pub bases: [BasisSpec; 2],
    pub truncation: Truncation,
    pub coeffs: Vec<Rational>,
}

impl Expansion {
    pub fn new(channel: ChannelTag, truncation: Truncation, coeffs: Vec<Rational>) -> Self {
        let ch = Channel::new(channel);
        Self::with_bases(channel, [ch.first.basis, ch.second.basis], truncation, coeffs)
    }

    pub fn with_bases(
        channel: ChannelTag,
        bases: [BasisSpec; 2],
        truncation: Truncation,
        coeffs: Vec<Rational>,
    ) -> Self {
        assert_eq!(truncation.len(), coeffs.len());
        Self { channel, bases, truncation, coeffs }
    }

    pub fn zero(channel: ChannelTag, truncation: Truncation) -> Self {
        let coeffs = vec![Rational::zero(); truncation.len()];
        Self::new(channel, truncation, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.truncation.order()
    }

    /// Coefficient at `(l, n)`; zero outside the truncation.
    pub fn get(&self, l: u32, n: u32) -> Rational {
        self.truncation.position(l, n).map(|i| self.coeffs[i].clone()).unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.truncation.cells().iter().copied().zip(self.coeffs.iter())
    }
}

/// Galerkin-solve one channel on the given truncation.
pub fn solve_expansion(tag: ChannelTag, truncation: &Truncation) -> Result<Expansion> {
    let channel = Channel::new(tag);
    let system = assemble(&channel, truncation)?;
    let coeffs = solve(&system)?;
    Ok(Expansion::new(tag, truncation.clone(), coeffs))
}

/// `A = -12[a₂₂ - a₂₃ - a₃₂ + a₃₃]`, `B = -270[b₂₃ - b₂₄ - b₃₃ + b₃₄]`,
/// `C = -2835[c₃₃ - c₃₄ - c₄₃ + c₄₄]`.
pub fn energy_constant(expansion: &Expansion) -> Rational {
    Channel::new(expansion.channel).energy_from(|l, n| expansion.get(l, n))
}

/// `∫∫ ξ^w ξ'^{w'} e^{-ξ-ξ'} R²` for an expansion, as an exact quadratic
/// form in its coefficients.
pub fn weighted_square_norm(expansion: &Expansion) -> Rational {
    let [b1, b2] = expansion.bases;
    let (lmax, nmax) = expansion.truncation.max_labels();
    let (l0, n0) = (b1.first_index(), b2.first_index());
    let (g1, g2) = (b1.gram(l0, lmax), b2.gram(n0, nmax));
    let gram = |(l, n): (u32, u32), (l2, n2): (u32, u32)| {
        &g1[(l - l0) as usize][(l2 - l0) as usize] * &g2[(n - n0) as usize][(n2 - n0) as usize]
    };
    let cells = expansion.truncation.cells();
    let mut total = Rational::zero();
    for (i, a) in expansion.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in expansion.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let g = gram(cells[i], cells[j]);
            if !g.is_zero() {
                total += a * b * g;
            }
        }
    }
    total
}

/// Order-one normalization constants the prefactor is matched to.
/// These are the exact fractions 6, 1215/49 = 24.7959183..., 25515/128 =
/// 199.3359375.
pub fn normalization_reference(tag: ChannelTag) -> Rational {
    match tag {
        ChannelTag::A => rational::int(6),
        ChannelTag::B => rational::frac(1215, 49),
        ChannelTag::C => rational::frac(25515, 128),
    }
}

/// Prefactor `κ` in `D = κ ∫∫ w R²`, absorbing the ground-state energy and
/// the angular integrals. Fixed once from the order-one solution.
pub fn normalization_prefactor(tag: ChannelTag) -> Rational {
    static CELLS: [OnceLock<Rational>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[tag as usize]
        .get_or_init(|| {
            let t = Truncation::tabulated(tag, 1).expect("order one is valid");
            let e = solve_expansion(tag, &t).expect("order-one system is nonsingular");
            normalization_reference(tag) / weighted_square_norm(&e)
        })
        .clone()
}

/// Normalization constant `D_i` of the perturbed wavefunction.
pub fn normalization_constant(expansion: &Expansion) -> Rational {
    normalization_prefactor(expansion.channel) * weighted_square_norm(expansion)
}

/// How a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Dft,
    R0,
    Ansatz,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Exact => "exact",
            Method::Dft => "dft",
            Method::R0 => "r0",
            Method::Ansatz => "ansatz",
        };
        f.write_str(s)
    }
}

/// A solved channel at one truncation order, with its derived constants.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionRecord {
    pub channel: ChannelTag,
    pub order: u32,
    pub method: Method,
    pub expansion: Expansion,
    pub energy_constant: Rational,
    pub normalization_constant: Rational,
}

impl SolutionRecord {
    pub fn from_expansion(expansion: Expansion, method: Method) -> Self {
        let energy_constant = energy_constant(&expansion);
        let normalization_constant = normalization_constant(&expansion);
        Self {
            channel: expansion.channel,
            order: expansion.order(),
            method,
            expansion,
            energy_constant,
            normalization_constant,
        }
    }

    pub fn to_json(&self, digits: usize) -> RecordJson {
        RecordJson {
            method: self.method,
            channel: self.channel,
            order: Some(self.order),
            energy_constant: ValueJson::exact(&self.energy_constant, digits),
            normalization_constant: Some(ValueJson::exact(&self.normalization_constant, digits)),
            coefficients: Some(
                self.expansion
                    .iter()
                    .map(|((l, n), v)| CoefficientJson { l, n, value: ExactFraction::from(v) })
                    .collect(),
            ),
            parameters: None,
        }
    }
}

/// Solve a channel at a tabulated truncation order.
pub fn exact_record(tag: ChannelTag, order: u32) -> Result<SolutionRecord> {
    let t = Truncation::tabulated(tag, order)?;
    Ok(SolutionRecord::from_expansion(solve_expansion(tag, &t)?, Method::Exact))
}

/// A scalar in a result file: exact fraction plus decimal rendering, or a
/// floating-point estimate for the numerical baselines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub den: Option<String>,
    pub decimal: String,
}

impl ValueJson {
    pub fn exact(x: &Rational, digits: usize) -> Self {
        let f = ExactFraction::from(x);
        Self { num: Some(f.num), den: Some(f.den), decimal: rational::to_decimal(x, digits, Rounding::Nearest) }
    }

    pub fn approximate(x: f64, digits: usize) -> Self {
        Self { num: None, den: None, decimal: format!("{x:.digits$}") }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientJson {
    pub l: u32,
    pub n: u32,
    pub value: ExactFraction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParametersJson {
    pub lambda: f64,
    pub nu: f64,
}

/// JSON form shared by every method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordJson {
    pub method: Method,
    pub channel: ChannelTag,
    pub order: Option<u32>,
    pub energy_constant: ValueJson,
    pub normalization_constant: Option<ValueJson>,
    pub coefficients: Option<Vec<CoefficientJson>>,
    pub parameters: Option<ParametersJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    #[test]
    fn order_one_constants() {
        let a = exact_record(ChannelTag::A, 1).unwrap();
        assert_eq!(a.expansion.coeffs, vec![frac(-1, 2)]);
        assert_eq!(a.energy_constant, int(6));
        assert_eq!(a.normalization_constant, int(6));
        assert_eq!(exact_record(ChannelTag::B, 1).unwrap().energy_constant, frac(810, 7));
        assert_eq!(exact_record(ChannelTag::C, 1).unwrap().energy_constant, frac(8505, 8));
    }

    #[test]
    fn calibrated_prefactors() {
        assert_eq!(normalization_prefactor(ChannelTag::A), frac(1, 24));
        assert_eq!(normalization_prefactor(ChannelTag::B), frac(1, 128));
        assert_eq!(normalization_prefactor(ChannelTag::C), frac(7, 2560));
    }

    #[test]
    fn missing_cells_count_as_zero() {
        let t = Truncation::tabulated(ChannelTag::A, 1).unwrap();
        let e = Expansion::zero(ChannelTag::A, t);
        assert_eq!(e.get(3, 3), int(0));
        assert_eq!(energy_constant(&e), int(0));
    }

    #[test]
    fn json_shape() {
        let r = exact_record(ChannelTag::A, 2).unwrap();
        let j = serde_json::to_value(r.to_json(8)).unwrap();
        assert_eq!(j["method"], "exact");
        assert_eq!(j["channel"], "A");
        assert_eq!(j["energy_constant"]["num"], "56");
        assert_eq!(j["energy_constant"]["den"], "9");
        assert_eq!(j["energy_constant"]["decimal"], "6.22222222");
        assert_eq!(j["coefficients"].as_array().unwrap().len(), 2);
        let back: RecordJson = serde_json::from_value(j).unwrap();
        assert_eq!(back.order, Some(2));
    }
}
