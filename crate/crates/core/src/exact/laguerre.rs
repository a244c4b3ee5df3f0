//! Associated Laguerre polynomials and exact integrals against `ξ^w e^{-ξ}`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::{self, factorial, falling_ratio, Rational};

/// `L^α_n(ξ)` in the standard normalization (`L^α_0 = 1`), built with the
/// three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α-ξ) L_k - (k+α) L_{k-1}`.
pub fn laguerre(alpha: u32, n: u32) -> Poly {
    let alpha_r = rational::int(alpha as i64);
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::new(vec![rational::int(1) + &alpha_r, rational::int(-1)]);
    for k in 1..n {
        let k_r = rational::int(k as i64);
        let lin = Poly::new(vec![rational::int(2 * k as i64 + 1) + &alpha_r, rational::int(-1)]);
        let next = &(&lin * &cur) - &prev.scale(&(&k_r + &alpha_r));
        let next = next.scale(&rational::frac(1, k as i64 + 1));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `∫₀^∞ ξ^k e^{-ξ} dξ = k!`.
pub fn moment(k: u32) -> Rational {
    Rational::from_integer(factorial(k))
}

/// `∫₀^∞ ξ^w e^{-ξ} p(ξ) dξ`, term by term.
pub fn weighted_integral(p: &Poly, w: u32) -> Rational {
    // walk k! upward instead of recomputing each factorial
    let mut fact = factorial(w);
    let mut total = Rational::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(w as u64 + k as u64);
        }
        if !c.is_zero() {
            total += c * Rational::from_integer(fact.clone());
        }
    }
    total
}

/// `∫₀^∞ ξ^w e^{-ξ} p(ξ) q(ξ) dξ`.
pub fn weighted_inner(p: &Poly, q: &Poly, w: u32) -> Rational {
    weighted_integral(&(p * q), w)
}

/// A family of basis functions `n ↦ L^α_{n+shift-α}`.
///
/// Labels follow the derivative-based Laguerre convention common in older
/// physics texts, where the label `L^α_m` names a polynomial of degree
/// `m - α`. So `H_n = L³_{n+1}` has degree `n - 2` and its first member is
/// `H_2 = 1`. The projection weight `ξ^{weight_exponent} e^{-ξ}` is used for
/// Galerkin tests and for the quadratic forms built on the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisSpec {
    pub alpha: u32,
    pub shift: i32,
    pub weight_exponent: u32,
}

impl BasisSpec {
    /// `H_n = L³_{n+1}`, tested against `ξ⁴e^{-ξ}`.
    pub const H: BasisSpec = BasisSpec { alpha: 3, shift: 1, weight_exponent: 4 };
    /// `G_n = L⁵_{n+2}`, tested against `ξ⁶e^{-ξ}`.
    pub const G: BasisSpec = BasisSpec { alpha: 5, shift: 2, weight_exponent: 6 };
    /// Orbitals `φ_n = L⁴_n`.
    pub const PHI: BasisSpec = BasisSpec { alpha: 4, shift: 0, weight_exponent: 4 };
    /// Orbitals `χ_n = L⁶_n`.
    pub const CHI: BasisSpec = BasisSpec { alpha: 6, shift: 0, weight_exponent: 6 };

    /// Smallest label whose polynomial exists (degree zero).
    pub fn first_index(&self) -> u32 {
        (self.alpha as i32 - self.shift) as u32
    }

    pub fn degree(&self, index: u32) -> u32 {
        assert!(index >= self.first_index(), "basis label {index} below first label {}", self.first_index());
        index - self.first_index()
    }

    /// Label of the member with the given polynomial degree.
    pub fn index_of_degree(&self, degree: u32) -> u32 {
        degree + self.first_index()
    }

    pub fn function(&self, index: u32) -> Poly {
        laguerre(self.alpha, self.degree(index))
    }

    /// `∫ ξ^w e^{-ξ} B_i B_j` for labels `first..=last`, with `w` the
    /// basis' projection weight. Indexed from `first`.
    pub fn gram(&self, first: u32, last: u32) -> Vec<Vec<Rational>> {
        let fs: Vec<Poly> = (first..=last).map(|l| self.function(l)).collect();
        fs.iter().map(|a| fs.iter().map(|b| weighted_inner(a, b, self.weight_exponent)).collect()).collect()
    }

    /// `∫ ξ^α e^{-ξ} (member)² = (d+α)!/d!` with `d` the degree.
    pub fn norm(&self, index: u32) -> Rational {
        let d = self.degree(index);
        Rational::from_integer(falling_ratio(d + self.alpha, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};
    use num_integer::binomial;

    /// Series definition `Σ_k (-1)^k C(n+α, n-k) ξ^k / k!`.
    fn laguerre_series(alpha: u32, n: u32) -> Poly {
        Poly::new(
            (0..=n)
                .map(|k| {
                    let c = binomial(BigInt::from(n + alpha), BigInt::from(n - k));
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    Rational::new(c * sign, factorial(k))
                })
                .collect(),
        )
    }

    #[test]
    fn low_order_members() {
        assert_eq!(laguerre(3, 0), Poly::one());
        assert_eq!(laguerre(3, 1), Poly::from_ints(&[4, -1]));
        assert_eq!(laguerre(4, 2), Poly::new(vec![int(15), int(-6), frac(1, 2)]));
    }

    #[test]
    fn recurrence_matches_series_definition() {
        for alpha in 0..=8 {
            for n in 0..=12 {
                let p = laguerre(alpha, n);
                assert_eq!(p, laguerre_series(alpha, n), "alpha={alpha} n={n}");
                assert_eq!(p.degree(), Some(n as usize));
            }
        }
    }

    #[test]
    fn moments() {
        assert_eq!(moment(0), int(1));
        assert_eq!(moment(4), int(24));
        assert_eq!(moment(7), int(5040));
        for k in 0..20 {
            assert_eq!(moment(k + 1), moment(k) * int(k as i64 + 1));
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(weighted_inner(&laguerre(4, 1), &laguerre(4, 3), 4), int(0));
        assert_eq!(weighted_inner(&laguerre(4, 2), &laguerre(4, 2), 4), int(360));
        assert_eq!(weighted_inner(&Poly::one(), &Poly::one(), 4), int(24));
    }

    #[test]
    fn orthogonality_and_norms() {
        for alpha in 0..=8u32 {
            let polys: Vec<Poly> = (0..=12).map(|n| laguerre(alpha, n)).collect();
            for n in 0..=12usize {
                for m in 0..=12usize {
                    let v = weighted_inner(&polys[n], &polys[m], alpha);
                    if n == m {
                        let expected = Rational::from_integer(factorial(n as u32 + alpha))
                            / Rational::from_integer(factorial(n as u32));
                        assert_eq!(v, expected);
                    } else {
                        assert!(v.is_zero(), "alpha={alpha} n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn basis_labels() {
        assert_eq!(BasisSpec::H.first_index(), 2);
        assert_eq!(BasisSpec::G.first_index(), 3);
        assert_eq!(BasisSpec::PHI.first_index(), 4);
        assert_eq!(BasisSpec::CHI.first_index(), 6);
        assert_eq!(BasisSpec::H.function(3), laguerre(3, 1));
        // q_s = (s+1)!/(s-2)!
        assert_eq!(BasisSpec::H.norm(3), int(24));
        // ω_m = m!/(m-4)!
        assert_eq!(BasisSpec::PHI.norm(6), int(360));
        assert_eq!(BasisSpec::CHI.norm(8), int(8 * 7 * 6 * 5 * 4 * 3));
    }

    #[test]
    fn orbital_norms_are_falling_factorials() {
        for spec in [BasisSpec::PHI, BasisSpec::CHI] {
            for m in spec.first_index()..spec.first_index() + 8 {
                let f = spec.function(m);
                let direct = weighted_inner(&f, &f, spec.alpha);
                let omega = Rational::from_integer(falling_ratio(m, m - spec.alpha));
                assert_eq!(direct, omega);
                assert_eq!(spec.norm(m), omega);
            }
        }
    }
}
