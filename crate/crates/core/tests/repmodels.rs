mod common;

use autoloc_core::rational::{int, powi, rat};
use autoloc_core::repmodels::*;
use autoloc_core::{Matrix, Rational};
use proptest::prelude::*;

fn weight(max: u32) -> impl Strategy<Value = WeightTriple> {
    (0..=max, 0..=max, -2i64..=2).prop_map(|(a, b, v)| WeightTriple::new(a, b, v))
}

fn invertible() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, 9).prop_filter_map("singular", |e| {
        let m = Matrix::from_rows(e.chunks(3).map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap();
        (m.det() != int(0)).then_some(m)
    })
}

fn polynomial(w: WeightTriple, coefs: &[i64]) -> BiHomPolynomial {
    let ms = monomials(w);
    BiHomPolynomial::from_terms(w, ms.into_iter().zip(coefs.iter().cycle()).map(|(m, &c)| (m, int(c)))).unwrap()
}

fn kernel_element(w: WeightTriple, coefs: &[i64]) -> BiHomPolynomial {
    kernel_basis(w)
        .iter()
        .zip(coefs.iter().cycle())
        .fold(BiHomPolynomial::zero(w), |acc, (b, &c)| acc.add(&b.scale(&int(c))).unwrap())
}

#[test]
fn kernel_dimension_formula() {
    for a in 0..=6 {
        for b in 0..=6 {
            let w = WeightTriple::new(a, b, 0);
            assert_eq!(kernel_basis(w).len(), w.dimension(), "{:?}", w);
        }
    }
}

#[test]
fn gram_nonsingular_over_q() {
    for a in 0..=6 {
        for b in 0..=6 {
            for g in gram_blocks(WeightTriple::new(a, b, 0)) {
                assert!(g.is_square() && g.det() != int(0), "({}, {})", a, b);
            }
        }
    }
}

#[test]
fn highest_weight_pairing_constants() {
    let half = Matrix::from_rows(vec![
        vec![int(0), int(0), rat(-1, 2)],
        vec![int(0), int(-1), int(0)],
        vec![rat(-1, 2), int(0), int(0)],
    ])
    .unwrap();
    for n in 0..=4u32 {
        for v in -2..=2i64 {
            let w = WeightTriple::new(n, n, v);
            let sign = powi(&int(-1), 2 * n as i64 + v);
            assert_eq!(highest_weight_pairing(w, &longest_weyl_element()).unwrap(), sign);
            assert_eq!(highest_weight_pairing(w, &half).unwrap(), powi(&int(4), v));
        }
    }
}

#[test]
fn highest_weight_vector_eigencharacter() {
    let w = WeightTriple::new(3, 2, -1);
    let t = Matrix::diagonal(&[int(2), int(3), int(5)]);
    let p = BiHomPolynomial::highest_weight_vector(w);
    let [a, b, c] = w.highest_weight();
    let expect = powi(&int(2), a) * powi(&int(3), b) * powi(&int(5), c);
    assert_eq!(act(&t, &p, ActionVariant::Standard).unwrap(), p.scale(&expect));
}

/// Unimodular for every p ≥ n⁺ + n⁻ + 2.
#[test]
fn gram_unimodular_above_sum_threshold() {
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            for p in [3u64, 5, 7, 11, 13] {
                if p >= u64::from(a + b + 2) {
                    let w = WeightTriple::new(a, b, 0);
                    assert!(gram_divisors(w, p).iter().all(|&e| e == 0), "{:?} p = {}", w, p);
                }
            }
        }
    }
}

/// The perfectness claim for every p > max(n⁺, n⁻). It fails already at
/// (1,1,0), p = 3, where the pairing is the trace form on sl_3.
#[test]
#[ignore = "fails: the pairing is not perfect for p between max(n+, n-) and n+ + n- + 1"]
fn gram_unimodular_for_p_small() {
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            for p in [3u64, 5, 7, 11, 13] {
                let w = WeightTriple::new(a, b, 0);
                if w.is_p_small(p) {
                    assert!(gram_divisors(w, p).iter().all(|&e| e == 0), "{:?} p = {}", w, p);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn contraction_is_equivariant(w in weight(3), g in invertible(), coefs in prop::collection::vec(-5i64..=5, 1..12)) {
        let p = polynomial(w, &coefs);
        let lhs = contraction(&act(&g, &p, ActionVariant::Standard).unwrap());
        let rhs = act(&g, &contraction(&p), ActionVariant::Standard).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_equivariant(w in weight(2), g in invertible(), a in prop::collection::vec(-3i64..=3, 1..6), b in prop::collection::vec(-3i64..=3, 1..6)) {
        let p = kernel_element(w, &a);
        let q = kernel_element(w.dual(), &b);
        let lhs = pair(&act(&g, &p, ActionVariant::Standard).unwrap(), &act(&g, &q, ActionVariant::Standard).unwrap()).unwrap();
        prop_assert_eq!(lhs, pair(&p, &q).unwrap());
    }

    #[test]
    fn action_preserves_kernel(w in weight(3), g in invertible(), a in prop::collection::vec(-3i64..=3, 1..6)) {
        let p = kernel_element(w, &a);
        prop_assert!(contraction(&act(&g, &p, ActionVariant::Dual).unwrap()).is_zero());
    }

    #[test]
    fn vee_intertwines(w in weight(3), g in invertible(), coefs in prop::collection::vec(-5i64..=5, 1..12)) {
        let p = polynomial(w, &coefs);
        prop_assert_eq!(
            vee(&act(&g, &p, ActionVariant::Dual).unwrap()),
            act(&g, &vee(&p), ActionVariant::Standard).unwrap()
        );
        prop_assert_eq!(vee(&vee(&p)), p.clone());
        prop_assert_eq!(contraction(&vee(&p)), vee(&contraction(&p)));
    }

    #[test]
    fn epsilon_is_sigma_after_vee(w in weight(2), a in prop::collection::vec(-3i64..=3, 1..6), b in prop::collection::vec(-3i64..=3, 1..6)) {
        let p = kernel_element(w, &a);
        let q = kernel_element(w.dual(), &b);
        let (x, y) = tensor_involution(TensorInvolution::Epsilon, (&p, &q)).unwrap();
        prop_assert_eq!((x.clone(), y.clone()), (vee(&q), vee(&p)));
        prop_assert_eq!(tensor_involution(TensorInvolution::Epsilon, (&x, &y)).unwrap(), (p, q));
    }
}

#[test]
fn scalar_matrices_act_centrally() {
    let w = WeightTriple::new(2, 1, 1);
    let p = polynomial(w, &[1, -2, 3]);
    let c: Rational = rat(3, 2);
    let g = Matrix::identity(3).scale(&c);
    // det^v · c^{n⁺} · c^{-n⁻} = c^{3v + n⁺ - n⁻}
    assert_eq!(act(&g, &p, ActionVariant::Standard).unwrap(), p.scale(&powi(&c, 3 + 2 - 1)));
}
