mod common;

use autoloc_core::rational::{int, powi};
use autoloc_core::symfunc::*;
use autoloc_core::Rational;
use common::*;
use proptest::prelude::*;

fn distinct(xs: &[Rational]) -> bool {
    xs.iter().enumerate().all(|(i, a)| xs[..i].iter().all(|b| a != b))
}

fn partition_strategy(n: usize) -> impl Strategy<Value = DominantWeight> {
    (0usize..=8).prop_flat_map(move |d| {
        let all = partitions(d, n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

#[test]
fn partition_enumeration_order() {
    let parts: Vec<Vec<i64>> = partitions(4, 4).iter().map(|p| p.parts().to_vec()).collect();
    assert_eq!(parts, vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1], vec![4]]);
    assert_eq!(partitions(5, 2).len(), 3);
    assert_eq!(partitions_up_to(3, 3).len(), 7);
}

#[test]
fn small_schur_values() {
    let xs = ints(&[1, 2, 3]);
    // s_(2,1)(1,2,3) = sum over SSYT = 60
    assert_eq!(schur(&DominantWeight::partition(vec![2, 1]).unwrap(), &xs).unwrap(), int(60));
    assert_eq!(schur(&DominantWeight::partition(vec![1, 1, 1]).unwrap(), &xs).unwrap(), int(6));
    assert_eq!(schur(&DominantWeight::partition(vec![1, 1, 1, 1]).unwrap(), &xs).unwrap(), int(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_trudi_matches_bialternant(xs in nonzero_rationals(1..=4), lam in partition_strategy(4)) {
        prop_assume!(distinct(&xs));
        prop_assert_eq!(schur(&lam, &xs).unwrap(), bialternant(&lam, &xs).unwrap());
    }

    #[test]
    fn homogeneity(xs in rationals(1..=4), lam in partition_strategy(4), c in small_rational()) {
        let scaled: Vec<Rational> = xs.iter().map(|x| x * &c).collect();
        let lhs = schur(&lam, &scaled).unwrap();
        prop_assert_eq!(lhs, powi(&c, lam.size()) * schur(&lam, &xs).unwrap());
    }

    #[test]
    fn vanishing_past_nonzero_count(xs in nonzero_rationals(1..=3), zeros in 1usize..=2, extra in 1i64..=3) {
        let k = xs.len();
        let mut parts = vec![extra; k + 1];
        parts[0] += 1;
        let lam = DominantWeight::partition(parts).unwrap();
        let mut padded = xs.clone();
        padded.extend(std::iter::repeat_n(int(0), zeros));
        prop_assert_eq!(schur(&lam, &padded).unwrap(), int(0));
    }

    #[test]
    fn laurent_shift(xs in nonzero_rationals(1..=4), lam in partition_strategy(4), m in -3i64..=3) {
        let n = xs.len();
        prop_assume!(lam.length() <= n);
        let shifted = lam.padded(n).unwrap().shifted(m);
        let en = xs.iter().fold(int(1), |acc, x| acc * x);
        prop_assert_eq!(
            schur_laurent(&shifted, &xs).unwrap(),
            powi(&en, m) * schur(&lam, &xs).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cauchy_identity(xs in rationals(1..=4), ys in rationals(1..=4)) {
        prop_assume!(xs.len() == ys.len());
        let n = xs.len();
        let lhs = cauchy_series(&xs, &ys, Some(n), 12);
        let pairs: Vec<Rational> = xs.iter().flat_map(|x| ys.iter().map(move |y| x * y)).collect();
        prop_assert_eq!(lhs.coefficients(), &product_of_geometrics(&pairs, 12)[..]);
    }

    #[test]
    fn littlewood_identity(xs in rationals(1..=4)) {
        let mut cs: Vec<Rational> = xs.iter().map(|x| x * x).collect();
        for j in 0..xs.len() {
            for k in j + 1..xs.len() {
                cs.push(&xs[j] * &xs[k]);
            }
        }
        let lhs = littlewood_even_series(&xs, 12);
        prop_assert_eq!(lhs.coefficients(), &product_of_geometrics(&cs, 12)[..]);
    }

    #[test]
    fn multipoly_evaluation_agrees(xs in rationals(1..=4), i in 0usize..=4) {
        let n = xs.len();
        prop_assume!(i <= n);
        prop_assert_eq!(MultiPoly::elementary(n, i).evaluate(&xs), elementary(i, &xs));
    }
}
