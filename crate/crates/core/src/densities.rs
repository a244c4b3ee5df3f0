//! Perturbation densities `f(ξ) = ∫ e^{-ξ'} ξ'^w R(ξ,ξ')² dξ'`.
//!
//! Integrating the squared expansion over one coordinate leaves a quadratic
//! form in the other coordinate's basis,
//! `f(ξ) = Σ α_{n,m} B_n(ξ) B_m(ξ)` with
//! `α_{n,m} = Σ_{l,l'} c_{n,l} c_{m,l'} ∫ ξ'^w e^{-ξ'} B'_l B'_{l'}`.
//! The α-table and the resulting polynomial are exact; floats appear only
//! when a value is handed out.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{BasisSpec, Poly};
use crate::sk::{ChannelTag, Expansion};

/// Which density of which channel. Channel B has one per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DensityKind {
    A,
    B1,
    B2,
    C,
}

impl DensityKind {
    pub const ALL: [DensityKind; 4] = [DensityKind::A, DensityKind::B1, DensityKind::B2, DensityKind::C];

    pub fn channel(self) -> ChannelTag {
        match self {
            DensityKind::A => ChannelTag::A,
            DensityKind::B1 | DensityKind::B2 => ChannelTag::B,
            DensityKind::C => ChannelTag::C,
        }
    }

    /// Coordinate the density is a function of (0 or 1); the other one is
    /// integrated out.
    pub fn free_coordinate(self) -> usize {
        match self {
            DensityKind::B2 => 1,
            _ => 0,
        }
    }

    pub fn of_channel(tag: ChannelTag) -> &'static [DensityKind] {
        match tag {
            ChannelTag::A => &[DensityKind::A],
            ChannelTag::B => &[DensityKind::B1, DensityKind::B2],
            ChannelTag::C => &[DensityKind::C],
        }
    }

    /// File-name friendly label, e.g. `f_B1`.
    pub fn label(self) -> &'static str {
        match self {
            DensityKind::A => "f_A",
            DensityKind::B1 => "f_B1",
            DensityKind::B2 => "f_B2",
            DensityKind::C => "f_C",
        }
    }
}

impl fmt::Display for DensityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DensityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("f_").unwrap_or(t);
        match t.to_ascii_uppercase().as_str() {
            "A" => Ok(DensityKind::A),
            "B1" => Ok(DensityKind::B1),
            "B2" => Ok(DensityKind::B2),
            "C" => Ok(DensityKind::C),
            _ => Err(Error::Parse(format!("unknown density {s:?}"))),
        }
    }
}

/// An exact density `Σ α_{n,m} B_n B_m` over one basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFn {
    pub kind: DensityKind,
    pub order: u32,
    pub basis: BasisSpec,
    /// Label of `alpha[0][0]`.
    pub first: u32,
    pub alpha: Vec<Vec<Rational>>,
    poly: Poly,
}

impl DensityFn {
    pub fn new(kind: DensityKind, order: u32, basis: BasisSpec, first: u32, alpha: Vec<Vec<Rational>>) -> Self {
        let fs: Vec<Poly> = (0..alpha.len() as u32).map(|i| basis.function(first + i)).collect();
        let mut poly = Poly::zero();
        for (i, row) in alpha.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    poly = &poly + &(&fs[i] * &fs[j]).scale(a);
                }
            }
        }
        Self { kind, order, basis, first, alpha, poly }
    }

    pub fn alpha_at(&self, n: u32, m: u32) -> Rational {
        let (i, j) = (n.checked_sub(self.first), m.checked_sub(self.first));
        match (i, j) {
            (Some(i), Some(j)) => self
                .alpha
                .get(i as usize)
                .and_then(|r| r.get(j as usize))
                .cloned()
                .unwrap_or_else(Rational::zero),
            _ => Rational::zero(),
        }
    }

    /// The density as an explicit polynomial in `ξ`.
    pub fn to_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn eval_exact(&self, xi: &Rational) -> Result<Rational> {
        if xi.is_negative() {
            return Err(Error::NegativeAbscissa(xi.to_string()));
        }
        Ok(self.poly.eval(xi))
    }

    /// Exact evaluation at the binary value of `xi`, rounded once.
    pub fn eval(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) {
            return Err(Error::NegativeAbscissa(xi.to_string()));
        }
        Ok(rational::to_f64(&self.eval_exact(&rational::from_f64(xi)?)?))
    }
}

/// Contract a solved expansion into one of its channel's densities.
pub fn density_coeffs(expansion: &Expansion, kind: DensityKind) -> Result<DensityFn> {
    if kind.channel() != expansion.channel {
        return Err(Error::InvalidParameter(format!(
            "density {kind} does not belong to channel {}",
            expansion.channel
        )));
    }
    let free = kind.free_coordinate();
    let other = 1 - free;
    let (fb, ob) = (expansion.bases[free], expansion.bases[other]);
    let (lmax, nmax) = expansion.truncation.max_labels();
    let maxes = [lmax, nmax];
    let (f0, o0) = (fb.first_index(), ob.first_index());
    let fdim = (maxes[free] - f0 + 1) as usize;
    let odim = (maxes[other] - o0 + 1) as usize;

    // c[free][other]
    let mut c = vec![vec![Rational::zero(); odim]; fdim];
    for ((l, n), v) in expansion.iter() {
        let labels = [l, n];
        c[(labels[free] - f0) as usize][(labels[other] - o0) as usize] = v.clone();
    }
    let gram = ob.gram(o0, maxes[other]);

    // t = c · gram, then α = t · cᵀ
    let t: Vec<Vec<Rational>> = c
        .iter()
        .map(|row| {
            (0..odim)
                .map(|k| {
                    row.iter()
                        .zip(&gram)
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Rational::zero(), |acc, (a, g)| acc + a * &g[k])
                })
                .collect()
        })
        .collect();
    let alpha: Vec<Vec<Rational>> = t
        .iter()
        .map(|trow| {
            c.iter()
                .map(|crow| trow.iter().zip(crow).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
                .collect()
        })
        .collect();
    Ok(DensityFn::new(kind, expansion.order(), fb, f0, alpha))
}

/// Sample points for a density table: nonempty, nonnegative, strictly
/// increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<Rational>,
}

impl Grid {
    pub fn from_points(points: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if points[0].is_negative() {
            return Err(Error::NegativeAbscissa(points[0].to_string()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid);
        }
        Ok(Self { points })
    }

    /// `start, start+step, …` up to and including `end`.
    pub fn range(start: Rational, end: Rational, step: Rational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::InvalidGrid);
        }
        let mut points = Vec::new();
        let mut x = start;
        while x <= end {
            points.push(x.clone());
            x += &step;
        }
        Self::from_points(points)
    }

    /// `n` equally spaced points covering `[start, end]`.
    pub fn linspace(start: Rational, end: Rational, n: usize) -> Result<Self> {
        if n < 2 {
            return Self::from_points(vec![start].into_iter().take(n).collect());
        }
        let step = (&end - &start) / rational::int(n as i64 - 1);
        Self::from_points((0..n).map(|i| &start + &step * rational::int(i as i64)).collect())
    }

    /// `[0, 10]` in steps of `0.1`.
    pub fn short_range() -> Self {
        Self::range(rational::int(0), rational::int(10), rational::frac(1, 10)).expect("valid grid")
    }

    /// `[10, 20]` in steps of `0.1`.
    pub fn long_range() -> Self {
        Self::range(rational::int(10), rational::int(20), rational::frac(1, 10)).expect("valid grid")
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub xi: Rational,
    pub f: Rational,
}

impl DensityRow {
    pub fn f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.xi), rational::to_f64(&self.f))
    }
}

/// Evaluate a density on every grid point, in grid order.
pub fn emit_density_grid(f: &DensityFn, grid: &Grid) -> Result<Vec<DensityRow>> {
    grid.points()
        .par_iter()
        .map(|x| Ok(DensityRow { xi: x.clone(), f: f.eval_exact(x)? }))
        .collect()
}

/// Abscissa as a short exact decimal where possible.
pub fn render_abscissa(xi: &Rational) -> String {
    let s = rational::to_decimal(xi, 12, rational::Rounding::Nearest);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `xi,f` table with 12 significant digits.
pub fn write_density_csv<W: Write>(rows: &[DensityRow], mut out: W) -> std::io::Result<()> {
    out.write_all(b"xi,f\n")?;
    for r in rows {
        writeln!(out, "{},{}", render_abscissa(&r.xi), rational::to_significant(&r.f, 12))?;
    }
    Ok(())
}
