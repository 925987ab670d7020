//! Symmetric functions evaluated at rational points.
//!
//! Schur polynomials go through the Jacobi-Trudi determinant in the complete
//! homogeneous polynomials, so repeated (in particular zero) arguments are
//! fine. The bialternant formula is available for distinct arguments.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;
use crate::rational::{powi, Rational};
use crate::series::TruncatedSeries;

/// A weakly decreasing tuple of integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantWeight {
    parts: Vec<i64>,
}

impl DominantWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if !is_dominant(&parts) {
            return Err(invalid(format!("weight {:?} is not weakly decreasing", parts)));
        }
        Ok(DominantWeight { parts })
    }

    /// A partition: dominant with nonnegative parts.
    pub fn partition(parts: Vec<i64>) -> Result<Self> {
        let w = Self::new(parts)?;
        if !w.is_partition() {
            return Err(invalid(format!("weight {:?} has a negative part", w.parts)));
        }
        Ok(w)
    }

    pub fn zero(n: usize) -> Self {
        DominantWeight { parts: vec![0; n] }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn is_partition(&self) -> bool {
        self.parts.last().is_none_or(|&x| x >= 0)
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().filter(|&&x| x != 0).count()
    }

    /// Pads with zeros (or truncates trailing zeros) to exactly `n` parts.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if self.parts.len() > n && self.parts[n..].iter().any(|&x| x != 0) {
            return Err(Error::Dimension(format!("weight {:?} does not fit in {} parts", self.parts, n)));
        }
        let mut parts = self.parts.clone();
        parts.resize(n, 0);
        Self::new(parts)
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut parts: Vec<i64> = self.parts.iter().map(|x| x * k).collect();
        if k < 0 {
            parts.reverse();
        }
        DominantWeight { parts }
    }

    pub fn shifted(&self, c: i64) -> Self {
        DominantWeight { parts: self.parts.iter().map(|x| x + c).collect() }
    }
}

pub fn is_dominant(parts: &[i64]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1])
}

/// Partitions of `d` with at most `max_len` parts, in increasing
/// lexicographic order of their part sequences.
pub fn partitions(d: usize, max_len: usize) -> Vec<DominantWeight> {
    fn go(rem: usize, cap: usize, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in 1..=cap.min(rem) {
            cur.push(part as i64);
            go(rem - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, max_len, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter().map(|parts| DominantWeight { parts }).collect()
}

/// All partitions with size at most `d`, by size and then parts.
pub fn partitions_up_to(d: usize, max_len: usize) -> Vec<DominantWeight> {
    (0..=d).flat_map(|k| partitions(k, max_len)).collect()
}

pub fn elementary(i: usize, xs: &[Rational]) -> Rational {
    elementary_all(xs).get(i).cloned().unwrap_or_else(Rational::zero)
}

/// `[e_0, …, e_n]`.
pub fn elementary_all(xs: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); xs.len() + 1];
    e[0] = Rational::one();
    for (j, x) in xs.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            let t = &e[k - 1] * x;
            e[k] += t;
        }
    }
    e
}

pub fn complete(k: usize, xs: &[Rational]) -> Rational {
    complete_upto(k, xs).pop().expect("nonempty")
}

/// `[h_0, …, h_k]`.
pub fn complete_upto(k: usize, xs: &[Rational]) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); k + 1];
    h[0] = Rational::one();
    for x in xs {
        for d in 1..=k {
            let t = &h[d - 1] * x;
            h[d] += t;
        }
    }
    h
}

fn schur_from_complete(parts: &[i64], h: &[Rational]) -> Rational {
    let l = parts.iter().take_while(|&&x| x > 0).count();
    if l == 0 {
        return Rational::one();
    }
    let mut m = Matrix::zeros(l, l);
    for i in 0..l {
        for j in 0..l {
            let k = parts[i] - i as i64 + j as i64;
            if k >= 0 {
                m[(i, j)] = h[k as usize].clone();
            }
        }
    }
    m.det()
}

/// `s_λ(xs)` for a partition `λ`. Zero when `λ` has more rows than `xs` has entries.
pub fn schur(lambda: &DominantWeight, xs: &[Rational]) -> Result<Rational> {
    if !lambda.is_partition() {
        return Err(invalid(format!("schur needs a partition, got {:?}", lambda.parts())));
    }
    if lambda.length() > xs.len() {
        return Ok(Rational::zero());
    }
    let top = (lambda.parts().first().copied().unwrap_or(0) as usize) + lambda.length();
    let h = complete_upto(top, xs);
    Ok(schur_from_complete(lambda.parts(), &h))
}

/// Schur character of `GL_n` at a dominant weight with possibly negative parts:
/// `s_λ = e_n^m · s_{λ - m}` with `m` the last part. Needs `len(xs) = len(λ)`.
pub fn schur_laurent(lambda: &DominantWeight, xs: &[Rational]) -> Result<Rational> {
    if lambda.is_partition() {
        return schur(lambda, xs);
    }
    if lambda.parts().len() != xs.len() {
        return Err(Error::Dimension("weight with negative parts needs one part per variable".into()));
    }
    if xs.iter().any(Zero::is_zero) {
        return Err(invalid("negative weights need nonzero arguments"));
    }
    let m = *lambda.parts().last().expect("nonempty");
    let en = xs.iter().fold(Rational::one(), |acc, x| acc * x);
    Ok(powi(&en, m) * schur(&lambda.shifted(-m), xs)?)
}

/// Ratio of alternants `det(x_i^{λ_j + n - j}) / det(x_i^{n - j})`.
pub fn bialternant(lambda: &DominantWeight, xs: &[Rational]) -> Result<Rational> {
    let n = xs.len();
    if !lambda.is_partition() {
        return Err(invalid("bialternant needs a partition"));
    }
    if lambda.length() > n {
        return Ok(Rational::zero());
    }
    let lam = lambda.padded(n)?;
    let mut num = Matrix::zeros(n, n);
    let mut den = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let shift = (n - 1 - j) as i64;
            num[(i, j)] = powi(&xs[i], lam.parts()[j] + shift);
            den[(i, j)] = powi(&xs[i], shift);
        }
    }
    let d = den.det();
    if d.is_zero() {
        return Err(invalid("bialternant needs pairwise distinct arguments"));
    }
    Ok(num.det() / d)
}

/// `Σ_{|λ| = d, ℓ(λ) ≤ max_length} s_λ(xs) s_λ(ys)` for `d = 0..=D`.
/// `None` imposes no length bound beyond what the variables allow.
pub fn cauchy_series(xs: &[Rational], ys: &[Rational], max_length: Option<usize>, max_degree: usize) -> TruncatedSeries {
    let cap = max_length.unwrap_or(usize::MAX).min(xs.len()).min(ys.len());
    let hx = complete_upto(max_degree + cap, xs);
    let hy = complete_upto(max_degree + cap, ys);
    let mut out = TruncatedSeries::zero(max_degree);
    for d in 0..=max_degree {
        let mut acc = Rational::zero();
        for lam in partitions(d, cap) {
            let a = schur_from_complete(lam.parts(), &hx);
            if a.is_zero() {
                continue;
            }
            acc += a * schur_from_complete(lam.parts(), &hy);
        }
        out.set(d, acc);
    }
    out
}

/// `Σ_{|λ| = d} s_{2λ}(xs)` for `d = 0..=D`.
pub fn littlewood_even_series(xs: &[Rational], max_degree: usize) -> TruncatedSeries {
    let n = xs.len();
    let h = complete_upto(2 * max_degree + n, xs);
    let mut out = TruncatedSeries::zero(max_degree);
    for d in 0..=max_degree {
        let acc = partitions(d, n).iter().fold(Rational::zero(), |acc, lam| {
            acc + schur_from_complete(lam.scaled(2).parts(), &h)
        });
        out.set(d, acc);
    }
    out
}

fn geometric_product(ratios: impl Iterator<Item = Rational>, max_degree: usize) -> TruncatedSeries {
    ratios.fold(TruncatedSeries::one(max_degree), |acc, r| {
        let g = TruncatedSeries::from_coefficients((0..=max_degree).map(|k| powi(&r, k as i64)).collect())
            .expect("nonempty");
        acc.mul(&g)
    })
}

/// Expansion of `∏_{i,j} 1 / (1 - t x_i y_j)`.
pub fn cauchy_product_series(xs: &[Rational], ys: &[Rational], max_degree: usize) -> TruncatedSeries {
    geometric_product(xs.iter().flat_map(|x| ys.iter().map(move |y| x * y)), max_degree)
}

/// Expansion of `∏_i 1 / (1 - t x_i²) · ∏_{j<k} 1 / (1 - t x_j x_k)`.
pub fn littlewood_product_series(xs: &[Rational], max_degree: usize) -> TruncatedSeries {
    let squares = xs.iter().map(|x| x * x);
    let pairs = (0..xs.len()).flat_map(|j| (j + 1..xs.len()).map(move |k| (j, k))).map(|(j, k)| &xs[j] * &xs[k]);
    geometric_product(squares.chain(pairs), max_degree)
}

/// Sparse polynomial with integer coefficients in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], BigInt::from(c));
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * BigInt::from(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Substitutes every variable `X_i -> X_i^k`.
    pub fn power_variables(&self, k: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.iter().map(|x| x * k).collect(), c.clone());
        }
        out
    }

    /// The elementary symmetric polynomial `σ_i(X_1, …, X_n)`.
    pub fn elementary(nvars: usize, i: usize) -> Self {
        let mut out = Self::zero(nvars);
        if i > nvars {
            return out;
        }
        let mut chosen = Vec::new();
        fn go(start: usize, left: usize, n: usize, chosen: &mut Vec<usize>, out: &mut MultiPoly) {
            if left == 0 {
                let mut e = vec![0u32; n];
                for &c in chosen.iter() {
                    e[c] = 1;
                }
                out.add_term(e, BigInt::one());
                return;
            }
            for j in start..n {
                chosen.push(j);
                go(j + 1, left - 1, n, chosen, out);
                chosen.pop();
            }
        }
        go(0, i, nvars, &mut chosen, &mut out);
        out
    }

    pub fn evaluate(&self, xs: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let m = e.iter().zip(xs).fold(Rational::from_integer(c.clone()), |m, (&k, x)| m * powi(x, k as i64));
            acc + m
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn part(v: &[i64]) -> DominantWeight {
        DominantWeight::partition(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur(&part(&[1]), &ints(&[2, 3, 5])).unwrap(), int(10));
        assert_eq!(schur(&part(&[1, 1]), &ints(&[2, 3, 5])).unwrap(), int(31));
        assert_eq!(schur(&part(&[2, 1]), &ints(&[1, 1, 1])).unwrap(), int(8));
        assert_eq!(schur(&part(&[2, 1]), &ints(&[4, 0, 0])).unwrap(), int(0));
        assert!(schur(&DominantWeight::new(vec![1, -1]).unwrap(), &ints(&[1, 2])).is_err());
        assert!(DominantWeight::new(vec![0, 1]).is_err());
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary(0, &ints(&[2, 3])), int(1));
        assert_eq!(elementary(2, &ints(&[2, 3])), int(6));
        assert_eq!(elementary(3, &ints(&[2, 3])), int(0));
    }

    #[test]
    fn partition_order() {
        let p: Vec<Vec<i64>> = partitions(4, 4).into_iter().map(|w| w.parts().to_vec()).collect();
        assert_eq!(p, vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1], vec![4]]);
        assert_eq!(partitions(4, 2).len(), 3);
        assert_eq!(partitions(0, 0).len(), 1);
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_series(&ints(&[1]), &ints(&[1]), Some(1), 3).coefficients(), &ints(&[1, 1, 1, 1])[..]);
        assert_eq!(cauchy_series(&ints(&[1, 1]), &ints(&[1, 1]), Some(2), 2).coefficients(), &ints(&[1, 4, 10])[..]);
        assert_eq!(cauchy_series(&ints(&[1, 1]), &ints(&[1, 1]), Some(1), 2).coefficients(), &ints(&[1, 4, 9])[..]);
    }

    #[test]
    fn littlewood_examples() {
        assert_eq!(littlewood_even_series(&ints(&[1]), 2).coefficients(), &ints(&[1, 1, 1])[..]);
        assert_eq!(littlewood_even_series(&ints(&[1, 1]), 2).coefficients(), &ints(&[1, 3, 6])[..]);
        assert_eq!(littlewood_even_series(&ints(&[2, 3]), 1).coefficients(), &ints(&[1, 19])[..]);
        assert_eq!(littlewood_product_series(&ints(&[2, 3]), 1).coefficients(), &ints(&[1, 19])[..]);
    }

    #[test]
    fn laurent_schur_shifts_by_determinant() {
        let xs = vec![int(2), rat(1, 3)];
        let w = DominantWeight::new(vec![1, -1]).unwrap();
        // s_(1,-1) = (x1 x2)^{-1} s_(2,0)
        let expect = (int(4) + rat(2, 3) + rat(1, 9)) / rat(2, 3);
        assert_eq!(schur_laurent(&w, &xs).unwrap(), expect);
    }

    #[test]
    fn multipoly_elementary_matches_evaluation() {
        let xs = ints(&[2, 3, 5]);
        for i in 0..=3 {
            assert_eq!(MultiPoly::elementary(3, i).evaluate(&xs), elementary(i, &xs));
        }
    }
}
