//! Integral models of the irreducible algebraic representations of `GL_3`.
//!
//! `P_n` is the space of polynomials in `X,Y,Z; A,B,C`, homogeneous of degree
//! `n⁺` in the first three variables and `n⁻` in the last three, with
//! `g` acting by `(det g)^v P((X,Y,Z)g; (A,B,C)ᵀg⁻¹)`. The irreducible model
//! `L_n` is the kernel of the contraction `∂²/∂X∂A + ∂²/∂Y∂B + ∂²/∂Z∂C`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::lattice::{saturation, smith};
use crate::matrix::Matrix;
use crate::rational::{int, powi, Rational};

/// `(n⁺, n⁻, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightTriple {
    pub n_plus: u32,
    pub n_minus: u32,
    pub v: i64,
}

impl WeightTriple {
    pub fn new(n_plus: u32, n_minus: u32, v: i64) -> Self {
        WeightTriple { n_plus, n_minus, v }
    }

    /// `n^∨ = (n⁻, n⁺, -v)`.
    pub fn dual(self) -> Self {
        WeightTriple { n_plus: self.n_minus, n_minus: self.n_plus, v: -self.v }
    }

    /// Highest weight `(v + n⁺, v, v - n⁻)`.
    pub fn highest_weight(self) -> [i64; 3] {
        [self.v + self.n_plus as i64, self.v, self.v - self.n_minus as i64]
    }

    /// `(n⁺+1)(n⁻+1)(n⁺+n⁻+2)/2`.
    pub fn dimension(self) -> usize {
        let (a, b) = (self.n_plus as usize, self.n_minus as usize);
        (a + 1) * (b + 1) * (a + b + 2) / 2
    }

    /// Whether `p > max(n⁺, n⁻)`.
    pub fn is_p_small(self, p: u64) -> bool {
        p > u64::from(self.n_plus.max(self.n_minus))
    }
}

/// Exponents `((a,b,c),(d,e,f))` of `X^a Y^b Z^c A^d B^e C^f`.
pub type Monomial = ([u32; 3], [u32; 3]);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomPolynomial {
    weight: WeightTriple,
    terms: BTreeMap<Monomial, Rational>,
}

fn compositions(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

/// All monomials of the given bidegree, in lexicographic order.
pub fn monomials(w: WeightTriple) -> Vec<Monomial> {
    let xs = compositions(w.n_plus);
    let as_ = compositions(w.n_minus);
    xs.iter().flat_map(|x| as_.iter().map(move |a| (*x, *a))).collect()
}

fn torus_weight(m: &Monomial) -> [i64; 3] {
    let (x, a) = m;
    [0, 1, 2].map(|k| x[k] as i64 - a[k] as i64)
}

fn multinomial(parts: &[u32; 3]) -> BigInt {
    let n: u32 = parts.iter().sum();
    let mut num = BigInt::one();
    for k in 1..=n {
        num *= k;
    }
    for &p in parts {
        for k in 1..=p {
            num /= k;
        }
    }
    num
}

impl BiHomPolynomial {
    pub fn zero(weight: WeightTriple) -> Self {
        BiHomPolynomial { weight, terms: BTreeMap::new() }
    }

    pub fn monomial(weight: WeightTriple, m: Monomial, coef: Rational) -> Result<Self> {
        Self::from_terms(weight, [(m, coef)])
    }

    /// Sums repeated monomials and drops zero coefficients.
    pub fn from_terms(weight: WeightTriple, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut out = Self::zero(weight);
        for (m, c) in terms {
            let (x, a) = &m;
            if x.iter().sum::<u32>() != weight.n_plus || a.iter().sum::<u32>() != weight.n_minus {
                return Err(invalid(format!("monomial {:?} is not of bidegree ({}, {})", m, weight.n_plus, weight.n_minus)));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `X^{n⁺} C^{n⁻}`, a highest weight vector.
    pub fn highest_weight_vector(weight: WeightTriple) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(([weight.n_plus, 0, 0], [0, 0, weight.n_minus]), Rational::one());
        BiHomPolynomial { weight, terms }
    }

    pub fn weight(&self) -> WeightTriple {
        self.weight
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(invalid("cannot add polynomials of different weights"));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.weight);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    /// Coordinates in [`monomials`] order.
    pub fn to_vector(&self) -> Vec<Rational> {
        monomials(self.weight).iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn from_vector(weight: WeightTriple, v: &[Rational]) -> Result<Self> {
        let ms = monomials(weight);
        if ms.len() != v.len() {
            return Err(Error::Dimension(format!("expected {} coordinates, got {}", ms.len(), v.len())));
        }
        Self::from_terms(weight, ms.into_iter().zip(v.iter().cloned()))
    }
}

/// `∂²/∂X∂A + ∂²/∂Y∂B + ∂²/∂Z∂C`, landing in weight `(n⁺-1, n⁻-1, v)`.
///
/// When either degree is 0 the result is the zero polynomial, with the
/// degrees clamped at 0.
pub fn contraction(p: &BiHomPolynomial) -> BiHomPolynomial {
    let w = p.weight;
    let target = WeightTriple::new(w.n_plus.saturating_sub(1), w.n_minus.saturating_sub(1), w.v);
    let mut out = BiHomPolynomial::zero(target);
    if w.n_plus == 0 || w.n_minus == 0 {
        return out;
    }
    for ((x, a), c) in &p.terms {
        for k in 0..3 {
            if x[k] > 0 && a[k] > 0 {
                let (mut x2, mut a2) = (*x, *a);
                x2[k] -= 1;
                a2[k] -= 1;
                out.add_term((x2, a2), c * int(i64::from(x[k] * a[k])));
            }
        }
    }
    out
}

fn blocks(w: WeightTriple) -> BTreeMap<[i64; 3], Vec<Monomial>> {
    let mut out: BTreeMap<[i64; 3], Vec<Monomial>> = BTreeMap::new();
    for m in monomials(w) {
        out.entry(torus_weight(&m)).or_default().push(m);
    }
    out
}

/// Kernel of the contraction on one torus weight block, as coordinate columns.
fn block_kernel(w: WeightTriple, block: &[Monomial]) -> Vec<Vec<Rational>> {
    if w.n_plus == 0 || w.n_minus == 0 {
        return (0..block.len())
            .map(|i| (0..block.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
    }
    let mut targets: Vec<Monomial> = Vec::new();
    let mut columns = Vec::with_capacity(block.len());
    for m in block {
        let image = contraction(&BiHomPolynomial { weight: w, terms: BTreeMap::from([(*m, Rational::one())]) });
        columns.push(image);
        for t in columns.last().expect("pushed").terms.keys() {
            if !targets.contains(t) {
                targets.push(*t);
            }
        }
    }
    if targets.is_empty() {
        return block_kernel(WeightTriple::new(0, 0, w.v), block);
    }
    targets.sort();
    let mut mat = Matrix::zeros(targets.len(), block.len());
    for (j, img) in columns.iter().enumerate() {
        for (t, c) in &img.terms {
            let i = targets.binary_search(t).expect("collected");
            mat[(i, j)] = c.clone();
        }
    }
    mat.nullspace()
}

fn block_polys(w: WeightTriple, block: &[Monomial], vectors: &[Vec<Rational>]) -> Vec<BiHomPolynomial> {
    vectors
        .iter()
        .map(|v| {
            BiHomPolynomial::from_terms(w, block.iter().copied().zip(v.iter().cloned())).expect("monomials have the right bidegree")
        })
        .collect()
}

/// A `Q`-basis of `L_n`, grouped by torus weight in lexicographic order.
pub fn kernel_basis(w: WeightTriple) -> Vec<BiHomPolynomial> {
    blocks(w).values().flat_map(|block| block_polys(w, block, &block_kernel(w, block))).collect()
}

/// `⟨P, Q⟩ = Σ a_{i⁺,i⁻} b_{i⁻,i⁺} / (multinom(n⁺; i⁺) multinom(n⁻; i⁻))` for `Q` of weight `w^∨`.
pub fn pair(p: &BiHomPolynomial, q: &BiHomPolynomial) -> Result<Rational> {
    if q.weight != p.weight.dual() {
        return Err(invalid("second argument must have the dual weight"));
    }
    let mut acc = Rational::zero();
    for ((x, a), c) in &p.terms {
        if let Some(d) = q.terms.get(&(*a, *x)) {
            acc += c * d / Rational::from_integer(multinomial(x) * multinomial(a));
        }
    }
    Ok(acc)
}

/// `P(X,Y,Z; A,B,C) ↦ P(A,B,C; X,Y,Z)`.
pub fn vee(p: &BiHomPolynomial) -> BiHomPolynomial {
    BiHomPolynomial {
        weight: p.weight.dual(),
        terms: p.terms.iter().map(|((x, a), c)| ((*a, *x), c.clone())).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionVariant {
    /// `ρ_n(g)`.
    Standard,
    /// `ρ_n^∨(g) = ρ_n(ᵀg⁻¹)`.
    Dual,
}

type Form = BTreeMap<[u32; 3], Rational>;

fn form_mul(f: &Form, g: &Form) -> Form {
    let mut out = Form::new();
    for (a, x) in f {
        for (b, y) in g {
            let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
            *out.entry(e).or_insert_with(Rational::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Powers `0..=n` of each of the three linear forms `Σ_i var_i m[i][j]`.
fn linear_powers(m: &Matrix, n: u32) -> [Vec<Form>; 3] {
    [0, 1, 2].map(|j| {
        let mut lin = Form::new();
        for i in 0..3 {
            if !m[(i, j)].is_zero() {
                let mut e = [0u32; 3];
                e[i] = 1;
                lin.insert(e, m[(i, j)].clone());
            }
        }
        let mut pows = vec![Form::from([([0, 0, 0], Rational::one())])];
        for k in 1..=n as usize {
            let next = form_mul(&pows[k - 1], &lin);
            pows.push(next);
        }
        pows
    })
}

fn monomial_image(pows: &[Vec<Form>; 3], e: &[u32; 3]) -> Form {
    let f = form_mul(&pows[0][e[0] as usize], &pows[1][e[1] as usize]);
    form_mul(&f, &pows[2][e[2] as usize])
}

/// `ρ_n(g)P` or `ρ_n^∨(g)P`.
pub fn act(g: &Matrix, p: &BiHomPolynomial, variant: ActionVariant) -> Result<BiHomPolynomial> {
    if g.rows() != 3 || g.cols() != 3 {
        return Err(Error::Dimension("group element must be 3 x 3".into()));
    }
    let inv = g.inverse().ok_or_else(|| invalid("group element is singular"))?;
    let (g, h) = match variant {
        ActionVariant::Standard => (g.clone(), inv.transpose()),
        ActionVariant::Dual => (inv.transpose(), g.clone()),
    };
    let w = p.weight;
    let det = powi(&g.det(), w.v);
    let xp = linear_powers(&g, w.n_plus);
    let ap = linear_powers(&h, w.n_minus);
    let mut out = BiHomPolynomial::zero(w);
    let mut cache_x: BTreeMap<[u32; 3], Form> = BTreeMap::new();
    let mut cache_a: BTreeMap<[u32; 3], Form> = BTreeMap::new();
    for ((x, a), c) in &p.terms {
        let fx = cache_x.entry(*x).or_insert_with(|| monomial_image(&xp, x)).clone();
        let fa = cache_a.entry(*a).or_insert_with(|| monomial_image(&ap, a));
        let scale = c * &det;
        for (ex, cx) in &fx {
            for (ea, ca) in fa.iter() {
                out.add_term((*ex, *ea), &scale * cx * ca);
            }
        }
    }
    Ok(out)
}

/// The antidiagonal `((0,0,-1),(0,1,0),(-1,0,0))`.
pub fn longest_weyl_element() -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    m[(0, 2)] = int(-1);
    m[(1, 1)] = int(1);
    m[(2, 0)] = int(-1);
    m
}

/// `⟨P_n⁺, ρ_{n^∨}(g) P_{n^∨}⁺⟩`.
pub fn highest_weight_pairing(w: WeightTriple, g: &Matrix) -> Result<Rational> {
    let q = act(g, &BiHomPolynomial::highest_weight_vector(w.dual()), ActionVariant::Standard)?;
    pair(&BiHomPolynomial::highest_weight_vector(w), &q)
}

fn saturated_blocks(w: WeightTriple, p: u64) -> BTreeMap<[i64; 3], (Vec<Monomial>, Matrix)> {
    blocks(w)
        .into_iter()
        .map(|(key, block)| {
            let ker = block_kernel(w, &block);
            let m = Matrix::from_columns(block.len(), &ker).expect("equal lengths");
            let sat = saturation(&m, p);
            (key, (block, sat))
        })
        .collect()
}

fn block_gram(w: WeightTriple, left: (&[Monomial], &Matrix), right: (&[Monomial], &Matrix)) -> Matrix {
    let lp = block_polys(w, left.0, &left.1.columns());
    let rp = block_polys(w.dual(), right.0, &right.1.columns());
    let rows: Vec<Vec<Rational>> =
        lp.iter().map(|a| rp.iter().map(|b| pair(a, b).expect("dual weights")).collect()).collect();
    Matrix::from_rows(rows).expect("rectangular")
}

/// Gram matrices of the pairing between `Q`-kernel bases at `w` and `w^∨`, one per torus weight block.
pub fn gram_blocks(w: WeightTriple) -> Vec<Matrix> {
    let left = blocks(w);
    let right = blocks(w.dual());
    left.iter()
        .map(|(key, lb)| {
            let rb = &right[&[-key[0], -key[1], -key[2]]];
            let lk = Matrix::from_columns(lb.len(), &block_kernel(w, lb)).expect("equal lengths");
            let rk = Matrix::from_columns(rb.len(), &block_kernel(w.dual(), rb)).expect("equal lengths");
            block_gram(w, (lb, &lk), (rb, &rk))
        })
        .collect()
}

/// `p`-exponents of the elementary divisors of the pairing between the
/// saturated integral kernels at `w` and `w^∨`, ascending, one per basis vector.
pub fn gram_divisors(w: WeightTriple, p: u64) -> Vec<i64> {
    let left = saturated_blocks(w, p);
    let right = saturated_blocks(w.dual(), p);
    let mut out = Vec::with_capacity(w.dimension());
    for (key, (lb, lk)) in &left {
        let (rb, rk) = &right[&[-key[0], -key[1], -key[2]]];
        if lk.cols() == 0 {
            continue;
        }
        let g = block_gram(w, (lb, lk), (rb, rk));
        let s = smith(&g, p);
        let missing = g.rows() - s.rank();
        out.extend(s.valuations);
        // a degenerate pairing leaves missing divisors; mark them as infinite
        out.extend(core::iter::repeat_n(i64::MAX, missing));
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorInvolution {
    /// `P ⊗ Q ↦ Q ⊗ P`.
    Sigma,
    /// `P ⊗ Q ↦ ∨P ⊗ ∨Q`.
    Vee,
    /// `P ⊗ Q ↦ ∨Q ⊗ ∨P`.
    Epsilon,
}

/// Applies the involution to a pure tensor, checking that it preserves the weight pair.
pub fn tensor_involution(
    kind: TensorInvolution,
    pq: (&BiHomPolynomial, &BiHomPolynomial),
) -> Result<(BiHomPolynomial, BiHomPolynomial)> {
    let (p, q) = pq;
    let (wp, wq) = (p.weight, q.weight);
    let ok = match kind {
        TensorInvolution::Sigma => wp == wq,
        TensorInvolution::Vee => wp.dual() == wp && wq.dual() == wq,
        TensorInvolution::Epsilon => wq == wp.dual(),
    };
    if !ok {
        return Err(invalid(format!("weights {:?} and {:?} are not compatible with {:?}", wp, wq, kind)));
    }
    Ok(match kind {
        TensorInvolution::Sigma => (q.clone(), p.clone()),
        TensorInvolution::Vee => (vee(p), vee(q)),
        TensorInvolution::Epsilon => (vee(q), vee(p)),
    })
}
