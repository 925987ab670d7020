//! Lattices over the local ring `Z_(p)`.
//!
//! A lattice is given by a rational matrix whose columns span it over
//! `Z_(p)`. Elementary divisors are computed by Smith reduction with the
//! pivot of least `p`-adic valuation, so every elimination factor is a
//! `p`-integral rational.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{powi, valuation, Rational};

/// Result of Smith reduction `A = L · D · K` with `L`, `K` invertible over `Z_(p)`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// `p`-exponents of the nonzero diagonal entries of `D`, ascending.
    pub valuations: Vec<i64>,
    /// The left factor `L` (rows of `A` by rows of `A`).
    pub left: Matrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.valuations.len()
    }
}

pub fn smith(a: &Matrix, p: u64) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut left = Matrix::identity(m);
    let mut valuations = Vec::new();
    let mut r = 0;
    while r < m.min(n) {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in r..m {
            for j in r..n {
                if let Some(v) = valuation(&w[(i, j)], p) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        w.swap_rows(r, pi);
        left.swap_columns(r, pi);
        w.swap_columns(r, pj);
        let piv = w[(r, r)].clone();
        for i in r + 1..m {
            if w[(i, r)].is_zero() {
                continue;
            }
            let f = &w[(i, r)] / &piv;
            for j in r..n {
                if w[(r, j)].is_zero() {
                    continue;
                }
                let t = &w[(r, j)] * &f;
                w[(i, j)] -= t;
            }
            // row_i -= f row_r  <=>  column r of L gains f times column i
            for k in 0..m {
                if left[(k, i)].is_zero() {
                    continue;
                }
                let t = &left[(k, i)] * &f;
                left[(k, r)] += t;
            }
        }
        // Column operations only touch row r now; they are not tracked.
        for j in r + 1..n {
            w[(r, j)] = Rational::zero();
        }
        // Absorb the unit part of the pivot into L.
        let unit = &piv / powi(&Rational::from_integer(p.into()), v);
        for k in 0..m {
            let t = &left[(k, r)] * &unit;
            left[(k, r)] = t;
        }
        valuations.push(v);
        r += 1;
    }
    let mut order: Vec<usize> = (0..valuations.len()).collect();
    order.sort_by_key(|&i| valuations[i]);
    if order.iter().enumerate().any(|(a, &b)| a != b) {
        let mut perm: Vec<usize> = order.clone();
        perm.extend(valuations.len()..m);
        left = left.select_columns(&perm);
        valuations = order.iter().map(|&i| valuations[i]).collect();
    }
    Smith { valuations, left }
}

/// A `Z_(p)`-basis (as columns) of the lattice spanned by the columns of `a`.
pub fn lattice_basis(a: &Matrix, p: u64) -> Matrix {
    let s = smith(a, p);
    let pp = Rational::from_integer(p.into());
    let cols: Vec<Vec<Rational>> = s
        .valuations
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let scale = powi(&pp, v);
            s.left.column(i).iter().map(|x| x * &scale).collect()
        })
        .collect();
    Matrix::from_columns(a.rows(), &cols).expect("column lengths agree")
}

/// A basis of `(span_Q a) ∩ Z_(p)^m`.
pub fn saturation(a: &Matrix, p: u64) -> Matrix {
    let s = smith(a, p);
    let idx: Vec<usize> = (0..s.rank()).collect();
    s.left.select_columns(&idx)
}

/// Elementary divisor exponents of `sup / sub`, ascending (zeros included).
///
/// Both arguments are spanning sets; `sub` must lie inside `sup` and have the
/// same rank.
pub fn relative_exponents(sup: &Matrix, sub: &Matrix, p: u64) -> Result<Vec<i64>> {
    let b = lattice_basis(sup, p);
    let c = lattice_basis(sub, p);
    if b.cols() != c.cols() {
        return Err(Error::Lattice("sublattice has smaller rank; quotient is not torsion".to_string()));
    }
    if b.cols() == 0 {
        return Ok(Vec::new());
    }
    let x = b.solve(&c).ok_or_else(|| Error::Lattice("sublattice is not contained in the span".to_string()))?;
    let s = smith(&x, p);
    if s.valuations.iter().any(|&v| v < 0) {
        return Err(Error::Lattice("sublattice is not contained in the lattice".to_string()));
    }
    Ok(s.valuations)
}

/// `true` when every column of `sub` lies in the `Z_(p)`-span of `sup`.
pub fn contains(sup: &Matrix, sub: &Matrix, p: u64) -> bool {
    let b = lattice_basis(sup, p);
    match b.solve(sub) {
        Some(x) => x.entries().all(|e| valuation(e, p).is_none_or(|v| v >= 0)),
        None => false,
    }
}

/// Square, `p`-integral, with unit determinant.
pub fn is_unimodular(a: &Matrix, p: u64) -> bool {
    a.is_square()
        && a.entries().all(|e| valuation(e, p).is_none_or(|v| v >= 0))
        && valuation(&a.det(), p) == Some(0)
}

/// The `p`-exponent of `[Z_(p)^m : L]` for a full-rank lattice `L`.
pub fn index_exponent(a: &Matrix, p: u64) -> Result<i64> {
    let s = smith(a, p);
    if s.rank() != a.rows() {
        return Err(Error::Lattice("lattice is not of full rank".to_string()));
    }
    Ok(s.valuations.iter().sum())
}

pub fn p_power(p: u64, e: i64) -> Rational {
    powi(&Rational::from_integer(p.into()), e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn smith_valuations() {
        let a = m(&[&[3, 0], &[0, 9]]);
        assert_eq!(smith(&a, 3).valuations, vec![1, 2]);
        let b = m(&[&[2, 4], &[6, 8]]);
        // det = -8, unit at p = 3
        assert_eq!(smith(&b, 3).valuations, vec![0, 0]);
        let c = m(&[&[3, 6], &[9, 3]]);
        assert_eq!(smith(&c, 3).valuations, vec![1, 1]);
    }

    #[test]
    fn left_factor_is_unimodular_and_reconstructs_span() {
        let a = m(&[&[6, 3, 0], &[2, 9, 27], &[5, 1, 4]]);
        let s = smith(&a, 3);
        assert!(is_unimodular(&s.left, 3));
        let b = lattice_basis(&a, 3);
        assert!(contains(&a, &b, 3) && contains(&b, &a, 3));
    }

    #[test]
    fn saturation_of_scaled_vector() {
        let a = Matrix::from_columns(2, &[vec![int(9), int(18)]]).unwrap();
        let s = saturation(&a, 3);
        assert!(contains(&s, &Matrix::from_columns(2, &[vec![int(1), int(2)]]).unwrap(), 3));
        assert_eq!(relative_exponents(&s, &a, 3).unwrap(), vec![2]);
    }

    #[test]
    fn relative_exponents_with_denominators() {
        let sup = Matrix::from_columns(1, &[vec![rat(1, 3)]]).unwrap();
        let sub = Matrix::from_columns(1, &[vec![int(3)]]).unwrap();
        assert_eq!(relative_exponents(&sup, &sub, 3).unwrap(), vec![2]);
        assert!(relative_exponents(&sub, &sup, 3).is_err());
    }
}
