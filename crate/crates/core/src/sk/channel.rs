use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{BasisSpec, Poly};

/// Interaction channel: dipole-dipole (A, `R⁻⁶`), dipole-quadrupole
/// (B, `R⁻⁸`) or quadrupole-quadrupole (C, `R⁻¹⁰`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChannelTag {
    A,
    B,
    C,
}

impl ChannelTag {
    pub const ALL: [ChannelTag; 3] = [ChannelTag::A, ChannelTag::B, ChannelTag::C];

    pub fn channel(self) -> Channel {
        Channel::new(self)
    }

    /// Power of the internuclear distance the constant multiplies.
    pub fn distance_power(self) -> u32 {
        match self {
            ChannelTag::A => 6,
            ChannelTag::B => 8,
            ChannelTag::C => 10,
        }
    }
}

impl fmt::Display for ChannelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelTag::A => "A",
            ChannelTag::B => "B",
            ChannelTag::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for ChannelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(ChannelTag::A),
            "B" | "b" => Ok(ChannelTag::B),
            "C" | "c" => Ok(ChannelTag::C),
            other => Err(Error::Parse(format!("unknown channel {other:?}"))),
        }
    }
}

/// One-coordinate part of the correlation operator:
/// `∂² + (drift/ξ - 1)∂ - potential/ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialOperator {
    pub drift: u32,
    pub potential: u32,
}

impl RadialOperator {
    /// `ξ · op[p] = ξp'' + (drift - ξ)p' - potential·p`, which is again a
    /// polynomial.
    pub fn scaled_action(&self, p: &Poly) -> Poly {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let drift_term = Poly::new(vec![rational::int(self.drift as i64), rational::int(-1)]);
        let a = &d2.shift(1) + &(&drift_term * &d1);
        &a - &p.scale(&rational::int(self.potential as i64))
    }

    /// Pointwise value of `op[f]` given `f, f', f''` at `ξ > 0`.
    pub fn apply(&self, xi: f64, f: f64, df: f64, d2f: f64) -> f64 {
        d2f + (self.drift as f64 / xi - 1.0) * df - self.potential as f64 / xi * f
    }
}

/// Basis and operator attached to one electron coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinate {
    pub basis: BasisSpec,
    pub operator: RadialOperator,
}

/// Reduced radial correlation equation of one channel,
/// `(op₁ + op₂)[R] - 1/4 = 0`, with its expansion bases and energy formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channel {
    pub tag: ChannelTag,
    pub first: Coordinate,
    pub second: Coordinate,
    /// Multiplier of the four leading coefficients in the energy constant.
    pub energy_prefactor: i64,
}

const H_DIPOLE: Coordinate =
    Coordinate { basis: BasisSpec::H, operator: RadialOperator { drift: 4, potential: 1 } };
const G_QUADRUPOLE: Coordinate =
    Coordinate { basis: BasisSpec::G, operator: RadialOperator { drift: 6, potential: 2 } };

impl Channel {
    pub fn new(tag: ChannelTag) -> Self {
        match tag {
            ChannelTag::A => Channel { tag, first: H_DIPOLE, second: H_DIPOLE, energy_prefactor: -12 },
            ChannelTag::B => Channel { tag, first: H_DIPOLE, second: G_QUADRUPOLE, energy_prefactor: -270 },
            ChannelTag::C => {
                Channel { tag, first: G_QUADRUPOLE, second: G_QUADRUPOLE, energy_prefactor: -2835 }
            }
        }
    }

    pub fn inhomogeneity(&self) -> Rational {
        rational::frac(1, 4)
    }

    /// Whether the equation is invariant under swapping the coordinates.
    pub fn is_symmetric(&self) -> bool {
        self.first == self.second
    }

    /// The four `(label, label, sign)` terms of the energy constant:
    /// `prefactor · [c₀₀ - c₀₁ - c₁₀ + c₁₁]` over the two lowest labels of
    /// each coordinate.
    pub fn energy_terms(&self) -> [(u32, u32, i64); 4] {
        let (l, n) = (self.first.basis.first_index(), self.second.basis.first_index());
        [(l, n, 1), (l, n + 1, -1), (l + 1, n, -1), (l + 1, n + 1, 1)]
    }

    /// Energy constant from a coefficient lookup; absent labels count as zero.
    pub fn energy_from<F>(&self, coeff: F) -> Rational
    where
        F: Fn(u32, u32) -> Rational,
    {
        let bracket = self
            .energy_terms()
            .iter()
            .fold(Rational::zero(), |acc, &(l, n, sign)| acc + coeff(l, n) * rational::int(sign));
        bracket * rational::int(self.energy_prefactor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laguerre;

    #[test]
    fn basis_functions_are_eigenfunctions_of_the_scaled_operator() {
        // ξ·op[H_l] = -(l-1) H_l for the dipole coordinate, likewise for G.
        for coord in [H_DIPOLE, G_QUADRUPOLE] {
            for l in coord.basis.first_index()..coord.basis.first_index() + 8 {
                let h = coord.basis.function(l);
                let lhs = coord.operator.scaled_action(&h);
                assert_eq!(lhs, h.scale(&rational::int(-(l as i64 - 1))), "label {l}");
            }
        }
    }

    #[test]
    fn scaled_action_of_a_monomial() {
        // ξ^2 under drift 4, potential 1: ξ·2 + (4 - ξ)·2ξ - ξ² = 10ξ - 3ξ²
        let op = RadialOperator { drift: 4, potential: 1 };
        assert_eq!(op.scaled_action(&Poly::x().shift(1)), Poly::from_ints(&[0, 10, -3]));
        assert_eq!(op.scaled_action(&laguerre::laguerre(3, 0)), Poly::from_ints(&[-1]));
    }

    #[test]
    fn energy_terms_follow_the_lowest_labels() {
        let b = Channel::new(ChannelTag::B);
        assert_eq!(b.energy_terms(), [(2, 3, 1), (2, 4, -1), (3, 3, -1), (3, 4, 1)]);
        let c = Channel::new(ChannelTag::C);
        assert_eq!(c.energy_terms()[3], (4, 4, 1));
        assert!(Channel::new(ChannelTag::A).is_symmetric());
        assert!(!b.is_symmetric());
    }

    #[test]
    fn tags_parse() {
        assert_eq!("b".parse::<ChannelTag>().unwrap(), ChannelTag::B);
        assert!("D".parse::<ChannelTag>().is_err());
        assert_eq!(ChannelTag::C.to_string(), "C");
    }
}
