//! Rational roots of rational polynomials.
//!
//! The polynomial is made square-free and primitive, rescaled to a monic
//! integer polynomial whose rational roots are integers, and those are found
//! by Hensel lifting the roots modulo a small good prime past the Cauchy bound.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &[Rational]) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(k.into())).collect()
}

/// Remainder of `a` modulo `b` (`b` nonzero).
fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let db = degree(b);
    let lead = b[db].clone();
    while !is_zero_poly(&r) && degree(&r) >= db {
        let shift = degree(&r) - db;
        let c = r[degree(&r)].clone() / &lead;
        for (j, x) in b.iter().enumerate() {
            r[shift + j] -= &c * x;
        }
        r = trim(r);
    }
    r
}

fn poly_div(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let db = degree(b);
    if degree(&r) < db {
        return vec![Rational::zero()];
    }
    let mut q = vec![Rational::zero(); degree(&r) - db + 1];
    let lead = b[db].clone();
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone() / &lead;
        for (j, x) in b.iter().enumerate() {
            r[k + j] -= &c * x;
        }
        q[k] = c;
    }
    trim(q)
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !is_zero_poly(&y) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Primitive integer multiple of a nonzero rational polynomial.
fn primitive(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(g: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn eval(g: &[BigInt], x: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Integer roots of a monic square-free integer polynomial.
fn integer_roots_monic(g: &[BigInt]) -> Vec<BigInt> {
    let dg: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    let bound: BigInt = g.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero) + 1u32;
    for l in small_primes() {
        let lb = BigInt::from(l);
        let roots: Vec<BigInt> =
            (0..l).map(BigInt::from).filter(|x| eval_mod(g, x, &lb).is_zero()).collect();
        if roots.iter().any(|r| eval_mod(&dg, r, &lb).is_zero()) {
            continue;
        }
        let mut out = Vec::new();
        for r0 in roots {
            let mut r = r0;
            let mut m = lb.clone();
            while m <= &bound * 2u32 {
                m = &m * &m;
                let inv = inverse_mod(&eval_mod(&dg, &r, &m), &m).expect("simple root stays a unit");
                r = (&r - eval_mod(g, &r, &m) * inv).mod_floor(&m);
            }
            let cand = if &r * 2u32 > m { &r - &m } else { r };
            if eval(g, &cand).is_zero() {
                out.push(cand);
            }
        }
        return out;
    }
    unreachable!("a square-free polynomial has a good prime")
}

/// The distinct rational roots of `p` (coefficients from the constant term up), ascending.
pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = trim(p.to_vec());
    if is_zero_poly(&p) || p.len() == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if p[0].is_zero() {
        out.push(Rational::zero());
        while p[0].is_zero() {
            p.remove(0);
        }
    }
    if p.len() > 1 {
        let g = poly_gcd(&p, &derivative(&p));
        let sqfree = if degree(&g) > 0 { poly_div(&p, &g) } else { p };
        let h = primitive(&sqfree);
        let m = h.len() - 1;
        let a = h[m].clone();
        // y = a x turns h into a monic integer polynomial in y
        let monic: Vec<BigInt> =
            h.iter().enumerate().map(|(i, c)| if i == m { BigInt::one() } else { c * a.pow((m - 1 - i) as u32) }).collect();
        for y in integer_roots_monic(&monic) {
            out.push(Rational::new(y, a.clone()));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn from_roots(roots: &[Rational]) -> Vec<Rational> {
        roots.iter().fold(vec![int(1)], |acc, r| {
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            next
        })
    }

    #[test]
    fn recovers_rational_roots_with_multiplicity() {
        let roots = [rat(1, 2), rat(1, 2), int(-3), rat(7, 9), int(0)];
        let got = rational_roots(&from_roots(&roots));
        assert_eq!(got, vec![int(-3), int(0), rat(1, 2), rat(7, 9)]);
    }

    #[test]
    fn ignores_irrational_factors() {
        // (x² + 1)(x - 5)
        let p = vec![int(-5), int(1), int(-5), int(1)];
        assert_eq!(rational_roots(&p), vec![int(5)]);
        assert!(rational_roots(&[int(-2), int(0), int(1)]).is_empty());
    }

    #[test]
    fn large_roots() {
        let big = Rational::new(BigInt::from(123_456_789_012_345i64), BigInt::from(7_777_777i64));
        let roots = [big.clone(), rat(-5, 3), big.clone()];
        let mut expect = vec![rat(-5, 3), big];
        expect.sort();
        assert_eq!(rational_roots(&from_roots(&roots)), expect);
    }
}
