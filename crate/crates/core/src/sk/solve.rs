//! Fraction-free (Bareiss) elimination for exact rational systems.
//!
//! Each row is first cleared of denominators, so elimination runs over the
//! integers. The Bareiss update
//! `a_ij ← (a_kk a_ij - a_ik a_kj) / a_{k-1,k-1}` divides exactly, which
//! keeps entries bounded by minors of the original matrix instead of
//! letting them grow geometrically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::assemble::LinearSystem;
use crate::error::{Error, Result};
use crate::exact::Rational;

pub fn solve(system: &LinearSystem) -> Result<Vec<Rational>> {
    solve_dense(system.order, system.to_dense(), system.rhs.clone())
}

/// Solve a dense square system; `order` only labels the error.
pub fn solve_dense(order: u32, matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = rhs.len();
    if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare { rows: matrix.len(), unknowns: n });
    }
    let singular = || Error::SingularSystem { order, dimension: n };

    // augmented integer rows
    let mut a: Vec<Vec<BigInt>> = matrix
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            clear_denominators(&row)
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].bits())
            .ok_or_else(singular)?;
        a.swap(k, pivot);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let akk = &pivot_row[k];
        for row in rest.iter_mut() {
            let aik = std::mem::take(&mut row[k]);
            for j in k + 1..=n {
                let akj = &pivot_row[j];
                if row[j].is_zero() && (aik.is_zero() || akj.is_zero()) {
                    continue;
                }
                let mut v = akk * &row[j];
                if !aik.is_zero() && !akj.is_zero() {
                    v -= &aik * akj;
                }
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
            }
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Ok(x)
}

/// Scale a rational row by the lcm of its denominators.
fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    fn dense(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn identity_returns_rhs() {
        let rhs = vec![frac(1, 3), int(-7), frac(22, 5)];
        let m = dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(solve_dense(1, m, rhs.clone()).unwrap(), rhs);
    }

    #[test]
    fn needs_a_row_swap() {
        let m = dense(&[&[0, 2], &[3, 1]]);
        let x = solve_dense(1, m, vec![int(4), int(5)]).unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
    }

    #[test]
    fn rational_entries() {
        let m = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(1, 4), frac(1, 5)]];
        let x = solve_dense(1, m, vec![int(1), int(1)]).unwrap();
        // 1/2 x + 1/3 y = 1, 1/4 x + 1/5 y = 1  =>  x = -8, y = 15
        assert_eq!(x, vec![int(-8), int(15)]);
    }

    #[test]
    fn singular_is_reported() {
        let m = dense(&[&[1, 2], &[2, 4]]);
        let err = solve_dense(7, m, vec![int(1), int(2)]).unwrap_err();
        assert!(matches!(err, Error::SingularSystem { order: 7, dimension: 2 }));
        assert_eq!(err.to_string(), "singular system at order 7 (dimension 2)");
    }

    #[test]
    fn hilbert_matrix_is_solved_exactly() {
        let n = 8;
        let m: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| frac(1, (i + j + 1) as i64)).collect()).collect();
        let truth: Vec<Rational> = (0..n).map(|i| frac(i as i64 - 3, 2)).collect();
        let rhs: Vec<Rational> =
            m.iter().map(|row| row.iter().zip(&truth).map(|(a, x)| a * x).sum()).collect();
        assert_eq!(solve_dense(1, m, rhs).unwrap(), truth);
    }
}
