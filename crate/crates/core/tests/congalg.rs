mod common;

use autoloc_core::congalg::*;
use autoloc_core::rational::{int, valuation};
use autoloc_core::{Matrix, Rational};
use proptest::prelude::*;

const PRIMES: [u64; 3] = [3, 5, 7];

/// Generators `p^k · v` with small integer `v`.
fn order_strategy(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DvrAlgebra> {
    (dims, 0..PRIMES.len()).prop_flat_map(|(d, pi)| {
        let p = PRIMES[pi];
        prop::collection::vec((prop::collection::vec(-4i64..=4, d), 0u32..=2), d).prop_filter_map(
            "rank deficient",
            move |gens| {
                let vs: Vec<Vec<Rational>> = gens
                    .iter()
                    .map(|(v, k)| v.iter().map(|&x| int(x * (p as i64).pow(*k))).collect())
                    .collect();
                DvrAlgebra::generated_order(p, &vs).ok()
            },
        )
    })
}

fn unimodular(d: usize, seed: &[i64]) -> Matrix {
    let mut lower = Matrix::identity(d);
    let mut upper = Matrix::identity(d);
    let mut it = seed.iter().cycle();
    for i in 0..d {
        for j in 0..i {
            lower[(i, j)] = int(*it.next().unwrap());
            upper[(j, i)] = int(*it.next().unwrap());
        }
    }
    lower.mul(&upper)
}

fn projection_transfer(src: &DvrAlgebra, d: usize) -> Option<TransferData> {
    let p = src.p();
    let dp = src.dim();
    // recover the embedding Q^{d'} ⊃ T' from the idempotents
    let spectrum = spectrum_with_idempotents(src).ok()?;
    let coords: Vec<Vec<Rational>> = (0..dp).map(|j| spectrum.iter().map(|(l, _)| l.values()[j].clone()).collect()).collect();
    let projected: Vec<Vec<Rational>> = coords.iter().map(|v| v[..d].to_vec()).collect();
    let tgt = DvrAlgebra::generated_order(p, &projected).ok()?;
    let tspec = spectrum_with_idempotents(&tgt).ok()?;
    let tcoords: Vec<Vec<Rational>> =
        (0..d).map(|j| tspec.iter().map(|(l, _)| l.values()[j].clone()).collect()).collect();
    let basis = Matrix::from_columns(d, &tcoords).ok()?;
    let cols: Vec<Vec<Rational>> = projected.iter().map(|v| basis.solve(&Matrix::from_columns(d, std::slice::from_ref(v)).unwrap()).unwrap().column(0)).collect();
    let theta = Matrix::from_columns(d, &cols).ok()?;
    TransferData::new(src.clone(), tgt, theta).ok()
}

fn swap_involution(t: &DvrAlgebra, m: &HeckeModule, unit_seed: &[i64]) -> (HeckeModule, SemiLinearInvolution) {
    let r = m.rank();
    let doubled = HeckeModule::direct_sum(&[m.clone(), m.clone()]).unwrap();
    // X = action of a unit 1 + p·s, so ι = [[0, X], [X⁻¹, 0]] squares to the identity
    let p = int(t.p() as i64);
    let s: Vec<Rational> = (0..t.dim()).map(|i| int(unit_seed[i % unit_seed.len()]) * &p).collect();
    let u: Vec<Rational> = t.unit().iter().zip(&s).map(|(a, b)| a + b).collect();
    let x = m.element_action(&u);
    let xi = x.inverse().unwrap();
    let mut iota = Matrix::zeros(2 * r, 2 * r);
    for i in 0..r {
        for j in 0..r {
            iota[(i, r + j)] = x[(i, j)].clone();
            iota[(r + i, j)] = xi[(i, j)].clone();
        }
    }
    let inv = SemiLinearInvolution::new(t, &doubled, Matrix::identity(t.dim()), iota).unwrap();
    (doubled, inv)
}

#[test]
fn spec_instances() {
    let t = DvrAlgebra::from_order(3, &[common::ints(&[1, 1]), common::ints(&[0, 3])]).unwrap();
    let spectrum = split_spectrum(&t).unwrap();
    assert_eq!(congruence_number(&t, &spectrum[1]).unwrap(), 1);
    let chain = DvrAlgebra::from_order(3, &[common::ints(&[1, 1, 1]), common::ints(&[0, 3, 0]), common::ints(&[0, 0, 9])]).unwrap();
    let first = Eigensystem::new(common::ints(&[1, 0, 0]));
    assert!(congruence_exists(&chain, &first).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn congruence_criterion(t in order_strategy(1..=4)) {
        for lam in split_spectrum(&t).unwrap() {
            let n = congruence_number(&t, &lam).unwrap();
            prop_assert_eq!(congruence_exists(&t, &lam).unwrap(), n >= 1);
        }
    }

    #[test]
    fn regular_module_is_cyclic(t in order_strategy(1..=4)) {
        let m = HeckeModule::regular(&t);
        for lam in split_spectrum(&t).unwrap() {
            let n = congruence_number(&t, &lam).unwrap();
            let divs = congruence_module_divisors(&t, &lam, &m).unwrap();
            prop_assert_eq!(divs, if n == 0 { vec![] } else { vec![n] });
        }
    }

    #[test]
    fn basis_change_invariance(t in order_strategy(2..=4), seed in prop::collection::vec(-3i64..=3, 12)) {
        let u = unimodular(t.dim(), &seed);
        let t2 = t.change_basis(&u).unwrap();
        let m = HeckeModule::direct_sum(&[HeckeModule::regular(&t), HeckeModule::regular(&t).dual()]).unwrap();
        let m2 = m.reindex_algebra(&u).change_basis(&t2, &unimodular(m.rank(), &seed[3..])).unwrap();
        for lam in split_spectrum(&t).unwrap() {
            let lam2 = lam.change_basis(&u);
            prop_assert_eq!(congruence_number(&t, &lam).unwrap(), congruence_number(&t2, &lam2).unwrap());
            prop_assert_eq!(
                congruence_module_divisors(&t, &lam, &m).unwrap(),
                congruence_module_divisors(&t2, &lam2, &m2).unwrap()
            );
        }
    }

    #[test]
    fn transfer_additivity(src in order_strategy(2..=4), cut in 1usize..=3) {
        let d = cut.min(src.dim() - 1);
        let Some(td) = projection_transfer(&src, d) else { return Ok(()); };
        let r = HeckeModule::regular(&src);
        let modules = [r.clone(), r.dual(), HeckeModule::direct_sum(&[r.clone(), r.dual()]).unwrap()];
        for lam in split_spectrum(td.target()).unwrap() {
            for m in &modules {
                let ex = transfer_congruence(&td, &lam, m).unwrap();
                prop_assert_eq!(ex.total, ex.pushforward + ex.transfer);
                let total: u32 = congruence_module_divisors(&src, &td.pullback(&lam), m).unwrap().iter().sum();
                prop_assert_eq!(ex.total, total);
            }
        }
    }

    #[test]
    fn involution_additivity(t in order_strategy(1..=3), seed in prop::collection::vec(-2i64..=2, 4)) {
        let (m, inv) = swap_involution(&t, &HeckeModule::regular(&t), &seed);
        for lam in split_spectrum(&t).unwrap() {
            let (a, b) = involution_parts(&t, &lam, &m, &inv).unwrap();
            let total: u32 = congruence_module_divisors(&t, &lam, &m).unwrap().iter().sum();
            prop_assert_eq!(a + b, total);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn pairing_lemma(t in order_strategy(1..=3), seed in prop::collection::vec(-2i64..=2, 4), useed in prop::collection::vec(-2i64..=2, 12)) {
        let (m0, inv0) = swap_involution(&t, &HeckeModule::regular(&t), &seed);
        let u = unimodular(m0.rank(), &useed);
        let ui = u.inverse().unwrap();
        let m = m0.change_basis(&t, &u).unwrap();
        let iota = ui.mul(inv0.module()).mul(&u);
        let inv_m = SemiLinearInvolution::new(&t, &m, Matrix::identity(t.dim()), iota.clone()).unwrap();
        let n = m.dual();
        let inv_n = SemiLinearInvolution::new(&t, &n, Matrix::identity(t.dim()), iota.transpose().neg()).unwrap();
        let g = Matrix::identity(m.rank());
        for lam in split_spectrum(&t).unwrap() {
            let rep = verify_pairing_lemma(&t, &lam, &m, &n, &g, &inv_m, &inv_n).unwrap();
            prop_assert_eq!(&rep.verdict, &Verdict::Pass, "{:?}", rep);
        }
        let bad = SemiLinearInvolution::new(&t, &n, Matrix::identity(t.dim()), iota.transpose()).unwrap();
        let lam = &split_spectrum(&t).unwrap()[0];
        let rep = verify_pairing_lemma(&t, lam, &m, &n, &g, &inv_m, &bad).unwrap();
        prop_assert!(matches!(rep.verdict, Verdict::PreconditionSkip(_)));
    }

    #[test]
    fn lf_lemma(src in order_strategy(2..=4), cut in 1usize..=3, seed in prop::collection::vec(-2i64..=2, 4), coef in prop::collection::vec(-5i64..=5, 8)) {
        let d = cut.min(src.dim() - 1);
        let Some(td) = projection_transfer(&src, d) else { return Ok(()); };
        let (m, inv) = swap_involution(&src, &HeckeModule::regular(&src), &seed);
        for sign in [Sign::Plus, Sign::Minus] {
            let forms = transfer_dual_forms(&td, &m, &inv, sign).unwrap();
            let mut l = vec![int(0); m.rank()];
            for (j, col) in forms.columns().iter().enumerate() {
                for (a, b) in l.iter_mut().zip(col) {
                    *a += b * int(coef[j % coef.len()]);
                }
            }
            for lam in split_spectrum(td.target()).unwrap() {
                let rep = verify_lf_lemma(&td, &lam, &m, &inv, sign, &l).unwrap();
                prop_assert_ne!(&rep.verdict, &Verdict::Fail, "{:?}", rep);
                if let (Some(bound), Some(Some(v))) = (rep.bound, rep.value_valuation) {
                    prop_assert!(v >= bound as i64);
                }
            }
        }
    }
}

#[test]
fn lf_lemma_skips_forms_off_the_transfer() {
    let src = DvrAlgebra::from_order(3, &[common::ints(&[1, 1, 1]), common::ints(&[0, 3, 0]), common::ints(&[0, 0, 9])]).unwrap();
    let td = projection_transfer(&src, 2).unwrap();
    let (m, inv) = swap_involution(&src, &HeckeModule::regular(&src), &[0]);
    let lam = Eigensystem::new(common::ints(&[1, 0]));
    let sharp = Matrix::identity(m.rank()).sub(&m.element_action(&td.e_theta().unwrap()));
    // a ι-invariant form that does not vanish on the complementary part, with denominators cleared
    let row = sharp.to_rows().into_iter().find(|r| r.iter().any(|x| *x != int(0))).unwrap();
    let sym: Vec<Rational> = row.iter().zip(inv.module().vec_mul(&row)).map(|(a, b)| a + b).collect();
    let l: Vec<Rational> = sym.iter().map(|x| x * int(81)).collect();
    assert!(sharp.vec_mul(&l).iter().any(|x| *x != int(0)));
    let rep = verify_lf_lemma(&td, &lam, &m, &inv, Sign::Plus, &l).unwrap();
    assert!(matches!(rep.verdict, Verdict::PreconditionSkip(_)), "{:?}", rep);
    let zero = verify_lf_lemma(&td, &lam, &m, &inv, Sign::Plus, &vec![int(0); m.rank()]).unwrap();
    assert_eq!(zero.verdict, Verdict::Pass);
    let _ = valuation(&int(3), 3);
}
