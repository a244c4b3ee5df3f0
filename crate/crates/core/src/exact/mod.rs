//! Exact arithmetic layer: rationals, polynomials, Laguerre families and
//! integrals against `ξ^w e^{-ξ}` on the half line.

pub mod laguerre;
pub mod poly;
pub mod rational;

pub use laguerre::{laguerre, moment, weighted_inner, weighted_integral, BasisSpec};
pub use poly::Poly;
pub use rational::{ExactFraction, Rational, Rounding};
