#![allow(dead_code)]

use autoloc_core::rational::{int, rat};
use autoloc_core::Rational;
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

pub fn rationals(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), len)
}

pub fn nonzero_rationals(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(nonzero_rational(), len)
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Truncated power series product, written out directly.
pub fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().min(b.len());
    (0..n).map(|d| (0..=d).map(|k| &a[k] * &b[d - k]).sum()).collect()
}

/// `1/(1 - c t^k)` through degree `max`.
pub fn geometric(c: &Rational, k: usize, max: usize) -> Vec<Rational> {
    let mut out = vec![int(0); max + 1];
    let mut pow = int(1);
    let mut d = 0;
    while d <= max {
        out[d] = pow.clone();
        pow *= c;
        d += k;
    }
    out
}

pub fn product_of_geometrics(cs: &[Rational], max: usize) -> Vec<Rational> {
    cs.iter().fold(geometric(&int(0), 1, max), |acc, c| series_mul(&acc, &geometric(c, 1, max)))
}
