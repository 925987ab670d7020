//! Seeded random instances.
//!
//! Every instance draws from its own ChaCha stream keyed by `(seed, suite, index)`,
//! so results do not depend on evaluation order.

use autoloc_core::congalg::{spectrum_with_idempotents, DvrAlgebra, HeckeModule, SemiLinearInvolution, TransferData};
use autoloc_core::rational::{int, rat};
use autoloc_core::repmodels::{BiHomPolynomial, WeightTriple};
use autoloc_core::satake::SatakeData;
use autoloc_core::{Matrix, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub fn instance_rng(seed: u64, stream: &str, index: usize) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(stream.as_bytes());
    h.update((index as u64).to_le_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

/// `num/den` with `|num|, den ≤ bound`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(1..=bound);
    rat(if rng.gen() { n } else { -n }, rng.gen_range(1..=bound))
}

pub fn nonzero_rationals<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| nonzero_rational(rng, bound)).collect()
}

pub fn rationals<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| rational(rng, bound)).collect()
}

pub fn pick<'a, R: Rng, T>(rng: &mut R, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

pub fn unramified<R: Rng>(rng: &mut R, n: usize, q: u64) -> SatakeData {
    SatakeData::unramified(q, nonzero_rationals(rng, n, 9)).expect("valid unramified data")
}

/// Ramified data with `r < n` inverse roots and conductor `1..=3`.
pub fn ramified<R: Rng>(rng: &mut R, n: usize, r: usize, q: u64) -> SatakeData {
    let c = rng.gen_range(1..=3);
    SatakeData::new(n, q, nonzero_rationals(rng, r, 9), c).expect("valid ramified data")
}

/// A partition with at most `len` parts, each at most `max_part`, padded to `len` entries.
pub fn partition<R: Rng>(rng: &mut R, len: usize, max_part: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=max_part)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

pub fn integer_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let entries = (0..rows).map(|_| (0..cols).map(|_| int(rng.gen_range(-bound..=bound))).collect()).collect();
    Matrix::from_rows(entries).expect("rectangular")
}

/// An invertible integral matrix with nonzero determinant.
pub fn invertible_integer_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let m = integer_matrix(rng, n, n, bound);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Product of random unipotent lower and upper triangular integral matrices.
pub fn unimodular<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    let mut lower = Matrix::identity(d);
    let mut upper = Matrix::identity(d);
    for i in 0..d {
        for j in 0..i {
            lower[(i, j)] = int(rng.gen_range(-2..=2));
            upper[(j, i)] = int(rng.gen_range(-2..=2));
        }
    }
    lower.mul(&upper)
}

/// A `Z_(p)`-order in `Q^d` generated by vectors `p^k v` with small integral `v`.
pub fn order<R: Rng>(rng: &mut R, p: u64, d: usize) -> DvrAlgebra {
    loop {
        let gens: Vec<Vec<Rational>> = (0..d)
            .map(|_| {
                let k = rng.gen_range(0..=2u32);
                (0..d).map(|_| int(rng.gen_range(-4..=4) * (p as i64).pow(k))).collect()
            })
            .collect();
        if let Ok(t) = DvrAlgebra::generated_order(p, &gens) {
            return t;
        }
    }
}

/// The transfer `T' → T` obtained by projecting `T' ⊂ Q^{d'}` onto the first `d` coordinates.
pub fn projection_transfer(src: &DvrAlgebra, d: usize) -> Option<TransferData> {
    let p = src.p();
    let spectrum = spectrum_with_idempotents(src).ok()?;
    let coords: Vec<Vec<Rational>> =
        (0..src.dim()).map(|j| spectrum.iter().map(|(l, _)| l.values()[j].clone()).collect()).collect();
    let projected: Vec<Vec<Rational>> = coords.iter().map(|v| v[..d].to_vec()).collect();
    let tgt = DvrAlgebra::generated_order(p, &projected).ok()?;
    let tspec = spectrum_with_idempotents(&tgt).ok()?;
    let tcoords: Vec<Vec<Rational>> =
        (0..d).map(|j| tspec.iter().map(|(l, _)| l.values()[j].clone()).collect()).collect();
    let basis = Matrix::from_columns(d, &tcoords).ok()?;
    let inv = basis.inverse()?;
    let cols: Vec<Vec<Rational>> = projected.iter().map(|v| inv.mul_vec(v)).collect();
    let theta = Matrix::from_columns(d, &cols).ok()?;
    TransferData::new(src.clone(), tgt, theta).ok()
}

/// A random transfer instance: an order of rank `2..=4` and a projection onto `1..rank` coordinates.
pub fn transfer<R: Rng>(rng: &mut R, primes: &[u64]) -> TransferData {
    loop {
        let p = *pick(rng, primes);
        let d = rng.gen_range(2..=4);
        let src = order(rng, p, d);
        let cut = rng.gen_range(1..d);
        if let Some(td) = projection_transfer(&src, cut) {
            return td;
        }
    }
}

/// A module built from regular pieces, duals and a unimodular change of basis.
pub fn module<R: Rng>(rng: &mut R, t: &DvrAlgebra) -> HeckeModule {
    let r = HeckeModule::regular(t);
    let m = match rng.gen_range(0..3) {
        0 => r,
        1 => r.dual(),
        _ => HeckeModule::direct_sum(&[r.clone(), r.dual()]).expect("same algebra"),
    };
    let u = unimodular(rng, m.rank());
    m.change_basis(t, &u).expect("unimodular")
}

/// `M ⊕ M` with `ι = [[0, X], [X⁻¹, 0]]`, `X` the action of a unit `1 + p s`.
pub fn swap_involution<R: Rng>(rng: &mut R, t: &DvrAlgebra, m: &HeckeModule) -> (HeckeModule, SemiLinearInvolution) {
    let r = m.rank();
    let doubled = HeckeModule::direct_sum(&[m.clone(), m.clone()]).expect("same algebra");
    let p = int(t.p() as i64);
    let u: Vec<Rational> = t.unit().iter().map(|a| a + int(rng.gen_range(-2..=2)) * &p).collect();
    let x = m.element_action(&u);
    let xi = x.inverse().expect("a unit acts invertibly");
    let mut iota = Matrix::zeros(2 * r, 2 * r);
    for i in 0..r {
        for j in 0..r {
            iota[(i, r + j)] = x[(i, j)].clone();
            iota[(r + i, j)] = xi[(i, j)].clone();
        }
    }
    let inv = SemiLinearInvolution::new(t, &doubled, Matrix::identity(t.dim()), iota).expect("semi-linear by construction");
    (doubled, inv)
}

pub struct PairingInstance {
    pub t: DvrAlgebra,
    pub m: HeckeModule,
    pub n: HeckeModule,
    pub pairing: Matrix,
    pub inv_m: SemiLinearInvolution,
    pub inv_n: SemiLinearInvolution,
}

/// `M` with a swap involution in a random basis, `N = M^*` with `ι_N = -ι_Mᵀ`
/// and the evaluation pairing, so the pairing is perfect and anti-equivariant.
pub fn pairing_instance<R: Rng>(rng: &mut R, primes: &[u64]) -> PairingInstance {
    let p = *pick(rng, primes);
    let d = rng.gen_range(1..=3);
    let t = order(rng, p, d);
    let (m0, inv0) = swap_involution(rng, &t, &HeckeModule::regular(&t));
    let u = unimodular(rng, m0.rank());
    let ui = u.inverse().expect("unimodular");
    let m = m0.change_basis(&t, &u).expect("unimodular");
    let iota = ui.mul(inv0.module()).mul(&u);
    let id = Matrix::identity(t.dim());
    let inv_m = SemiLinearInvolution::new(&t, &m, id.clone(), iota.clone()).expect("conjugated involution");
    let n = m.dual();
    let inv_n = SemiLinearInvolution::new(&t, &n, id, iota.transpose().neg()).expect("dual involution");
    let pairing = Matrix::identity(m.rank());
    PairingInstance { t, m, n, pairing, inv_m, inv_n }
}

pub fn weight<R: Rng>(rng: &mut R, max: u32, max_v: i64) -> WeightTriple {
    WeightTriple::new(rng.gen_range(0..=max), rng.gen_range(0..=max), rng.gen_range(-max_v..=max_v))
}

/// A random element of the kernel of the contraction, integral combination of the kernel basis.
pub fn kernel_element<R: Rng>(rng: &mut R, basis: &[BiHomPolynomial], w: WeightTriple) -> BiHomPolynomial {
    basis.iter().fold(BiHomPolynomial::zero(w), |acc, b| {
        acc.add(&b.scale(&int(rng.gen_range(-3..=3)))).expect("same weight")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn streams_are_independent_and_reproducible() {
        let a = instance_rng(1, "x", 0).next_u64();
        assert_eq!(a, instance_rng(1, "x", 0).next_u64());
        assert_ne!(a, instance_rng(1, "x", 1).next_u64());
        assert_ne!(a, instance_rng(1, "y", 0).next_u64());
        assert_ne!(a, instance_rng(2, "x", 0).next_u64());
    }

    #[test]
    fn pairing_instances_are_well_formed() {
        let mut rng = instance_rng(0, "pairing", 0);
        for _ in 0..5 {
            let inst = pairing_instance(&mut rng, &[3, 5]);
            assert_eq!(inst.m.rank(), inst.n.rank());
        }
    }
}
