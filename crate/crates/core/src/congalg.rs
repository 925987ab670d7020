//! Congruence modules over `Z_(p)`.
//!
//! Algebras are finite flat `Z_(p)`-algebras with split semisimple generic
//! fibre, given by structure constants in a fixed basis. Modules carry one
//! action matrix per basis element. Every lattice computation goes through
//! [`crate::lattice`], so congruence numbers are `p`-exponents of Fitting
//! ideals computed exactly.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::lattice::{is_unimodular, lattice_basis, relative_exponents, saturation, smith};
use crate::matrix::Matrix;
use crate::rational::{is_p_integral, is_prime, valuation, Rational};
use crate::roots::rational_roots;

/// A commutative `Z_(p)`-algebra of rank `d`: `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvrAlgebra {
    p: u64,
    structure: Vec<Vec<Vec<Rational>>>,
    unit: Vec<Rational>,
    regular: Vec<Matrix>,
}

/// An algebra morphism `λ: T → Q`, by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Eigensystem {
    values: Vec<Rational>,
}

impl Eigensystem {
    pub fn new(values: Vec<Rational>) -> Self {
        Eigensystem { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `λ(x)` for `x` in basis coordinates.
    pub fn apply(&self, x: &[Rational]) -> Rational {
        self.values.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.values.iter().all(|v| is_p_integral(v, p))
    }
}

fn check_p_integral(m: &Matrix, p: u64, what: &str) -> Result<()> {
    if m.entries().all(|x| is_p_integral(x, p)) {
        Ok(())
    } else {
        Err(invalid(format!("{} has entries that are not p-integral", what)))
    }
}

impl DvrAlgebra {
    pub fn new(p: u64, structure: Vec<Vec<Vec<Rational>>>, unit: Vec<Rational>) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(invalid(format!("{} is not an odd prime", p)));
        }
        let d = unit.len();
        if d == 0 {
            return Err(invalid("algebra must have positive rank"));
        }
        if structure.len() != d || structure.iter().any(|s| s.len() != d || s.iter().any(|t| t.len() != d)) {
            return Err(Error::Dimension("structure constants must be d x d x d".into()));
        }
        if structure.iter().flatten().flatten().chain(unit.iter()).any(|x| !is_p_integral(x, p)) {
            return Err(invalid("structure constants and unit must be p-integral"));
        }
        let regular = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(d, d);
                for j in 0..d {
                    for k in 0..d {
                        m[(k, j)] = structure[i][j][k].clone();
                    }
                }
                m
            })
            .collect();
        let t = DvrAlgebra { p, structure, unit, regular };
        for i in 0..d {
            for j in 0..d {
                if t.structure[i][j] != t.structure[j][i] {
                    return Err(invalid("multiplication is not commutative"));
                }
            }
        }
        let unit_mat = t.element_matrix(&t.unit);
        if unit_mat != Matrix::identity(d) {
            return Err(invalid("unit does not act as the identity"));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = t.regular[i].mul(&t.regular[j]);
                let rhs = t.element_matrix(&t.structure[i][j]);
                if lhs != rhs {
                    return Err(invalid("multiplication is not associative"));
                }
            }
        }
        Ok(t)
    }

    /// The `Z_(p)`-span of `basis` inside `Q^k` with coordinatewise
    /// multiplication, which must be a unital subring of full rank `k`.
    pub fn from_order(p: u64, basis: &[Vec<Rational>]) -> Result<Self> {
        let k = basis.first().map_or(0, Vec::len);
        let b = Matrix::from_columns(k, basis)?;
        if b.cols() != k || b.rank() != k {
            return Err(invalid("order basis must have full rank"));
        }
        let inv = b.inverse().expect("full rank");
        let d = k;
        let mut structure = vec![vec![vec![Rational::zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod: Vec<Rational> = basis[i].iter().zip(&basis[j]).map(|(x, y)| x * y).collect();
                structure[i][j] = inv.mul_vec(&prod);
            }
        }
        let unit = inv.mul_vec(&vec![Rational::one(); k]);
        if structure.iter().flatten().flatten().chain(unit.iter()).any(|x| !is_p_integral(x, p)) {
            return Err(invalid("span is not closed under multiplication over Z_(p)"));
        }
        Self::new(p, structure, unit)
    }

    /// The smallest `Z_(p)`-order in `Q^k` containing `1` and `generators`
    /// (coordinatewise multiplication); fails unless it has full rank.
    pub fn generated_order(p: u64, generators: &[Vec<Rational>]) -> Result<Self> {
        let k = generators.first().map_or(0, Vec::len);
        if k == 0 || generators.iter().any(|g| g.len() != k) {
            return Err(Error::Dimension("generators must be nonempty vectors of equal length".into()));
        }
        if generators.iter().flatten().any(|x| !is_p_integral(x, p)) {
            return Err(invalid("generators must be p-integral"));
        }
        let mut cols = generators.to_vec();
        cols.push(vec![Rational::one(); k]);
        let mut basis = lattice_basis(&Matrix::from_columns(k, &cols)?, p);
        loop {
            let b = basis.columns();
            let mut all = b.clone();
            for i in 0..b.len() {
                for j in i..b.len() {
                    all.push(b[i].iter().zip(&b[j]).map(|(x, y)| x * y).collect());
                }
            }
            let next = lattice_basis(&Matrix::from_columns(k, &all)?, p);
            if next.cols() == basis.cols() && relative_exponents(&next, &basis, p)?.iter().all(|&e| e == 0) {
                break;
            }
            basis = next;
        }
        if basis.cols() != k {
            return Err(invalid("generated order does not have full rank"));
        }
        Self::from_order(p, &basis.columns())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn structure(&self) -> &[Vec<Vec<Rational>>] {
        &self.structure
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// Matrix of multiplication by `e_i`.
    pub fn regular(&self, i: usize) -> &Matrix {
        &self.regular[i]
    }

    /// Matrix of multiplication by the element with coordinates `x`.
    pub fn element_matrix(&self, x: &[Rational]) -> Matrix {
        let d = self.dim();
        x.iter().enumerate().fold(Matrix::zeros(d, d), |acc, (i, c)| {
            if c.is_zero() {
                acc
            } else {
                acc.add(&self.regular[i].scale(c))
            }
        })
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.element_matrix(x).mul_vec(y)
    }

    pub fn is_eigensystem(&self, lam: &Eigensystem) -> bool {
        let d = self.dim();
        lam.values.len() == d
            && lam.apply(&self.unit).is_one()
            && (0..d).all(|i| {
                (0..d).all(|j| lam.apply(&self.structure[i][j]) == &lam.values[i] * &lam.values[j])
            })
    }

    /// New basis `e'_j = Σ_i u[i][j] e_i`; `u` must be unimodular over `Z_(p)`.
    pub fn change_basis(&self, u: &Matrix) -> Result<Self> {
        if !is_unimodular(u, self.p) || u.rows() != self.dim() {
            return Err(invalid("basis change must be unimodular"));
        }
        let inv = u.inverse().expect("unimodular");
        let cols = u.columns();
        let d = self.dim();
        let mut structure = vec![vec![vec![Rational::zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                structure[i][j] = inv.mul_vec(&self.multiply(&cols[i], &cols[j]));
            }
        }
        Self::new(self.p, structure, inv.mul_vec(&self.unit))
    }

    /// Whether `m` is an algebra endomorphism (in basis coordinates).
    fn is_algebra_map(&self, m: &Matrix) -> bool {
        let d = self.dim();
        if m.rows() != d || m.cols() != d || m.mul_vec(&self.unit) != self.unit {
            return false;
        }
        let cols = m.columns();
        (0..d).all(|i| (0..d).all(|j| m.mul_vec(&self.structure[i][j]) == self.multiply(&cols[i], &cols[j])))
    }
}

impl Eigensystem {
    /// Transport along a basis change `e'_j = Σ_i u[i][j] e_i`.
    pub fn change_basis(&self, u: &Matrix) -> Self {
        Eigensystem { values: u.vec_mul(&self.values) }
    }
}

fn restrict(op: &Matrix, basis: &Matrix) -> Matrix {
    basis.solve(&op.mul(basis)).expect("subspace is invariant")
}

/// All algebra morphisms `T → Q`, sorted by their values; fails unless
/// `T ⊗ Q ≅ Q^d`.
pub fn split_spectrum(t: &DvrAlgebra) -> Result<Vec<Eigensystem>> {
    Ok(spectrum_with_idempotents(t)?.into_iter().map(|(l, _)| l).collect())
}

/// Eigensystems with their idempotents `e_λ ∈ T ⊗ Q` in basis coordinates.
pub fn spectrum_with_idempotents(t: &DvrAlgebra) -> Result<Vec<(Eigensystem, Vec<Rational>)>> {
    let d = t.dim();
    let mut spaces = vec![Matrix::identity(d)];
    for i in 0..d {
        let mut next = Vec::new();
        for w in spaces {
            let a = restrict(t.regular(i), &w);
            let k = a.rows();
            let roots = rational_roots(&a.charpoly());
            let mut total = 0;
            for mu in roots {
                let shifted = a.sub(&Matrix::identity(k).scale(&mu));
                let ker = shifted.nullspace();
                total += ker.len();
                let coords = Matrix::from_columns(k, &ker)?;
                next.push(w.mul(&coords));
            }
            if total != k {
                return Err(Error::NotSplit(format!("multiplication by basis element {} is not diagonalizable over Q", i)));
            }
        }
        spaces = next;
    }
    let mut out = Vec::with_capacity(d);
    for w in spaces {
        if w.cols() != 1 {
            return Err(Error::NotSplit("a common eigenspace has dimension above one; the algebra is not reduced".into()));
        }
        let v = w.column(0);
        let values: Vec<Rational> = (0..d)
            .map(|i| {
                let image = t.regular(i).mul_vec(&v);
                let j = v.iter().position(|x| !x.is_zero()).expect("nonzero eigenvector");
                &image[j] / &v[j]
            })
            .collect();
        let lam = Eigensystem { values };
        let scale = lam.apply(&v);
        if scale.is_zero() {
            return Err(Error::NotSplit("nilpotent element found".into()));
        }
        let e: Vec<Rational> = v.iter().map(|x| x / &scale).collect();
        out.push((lam, e));
    }
    out.sort();
    Ok(out)
}

fn idempotent(t: &DvrAlgebra, lam: &Eigensystem) -> Result<Vec<Rational>> {
    if !t.is_eigensystem(lam) {
        return Err(invalid("not an algebra morphism of the given algebra"));
    }
    if !lam.is_p_integral(t.p) {
        return Err(invalid("eigensystem is not p-integral"));
    }
    spectrum_with_idempotents(t)?
        .into_iter()
        .find(|(l, _)| l == lam)
        .map(|(_, e)| e)
        .ok_or_else(|| invalid("eigensystem is not in the spectrum"))
}

/// `p`-exponent of `η_λ = [e_λ T : T ∩ e_λ T_Q]`.
pub fn congruence_number(t: &DvrAlgebra, lam: &Eigensystem) -> Result<u32> {
    let e = idempotent(t, lam)?;
    // e_λ T = Z_(p) e_λ since λ(1) = 1 and λ is integral; T ∩ Q e_λ = p^k Z_(p) e_λ
    let worst = e.iter().filter_map(|x| valuation(x, t.p)).min().unwrap_or(0);
    Ok((-worst).max(0) as u32)
}

/// `true` when another integral eigensystem agrees with `λ` modulo `p` on every basis element.
pub fn congruence_exists(t: &DvrAlgebra, lam: &Eigensystem) -> Result<bool> {
    let spectrum = split_spectrum(t)?;
    if !spectrum.contains(lam) {
        return Err(invalid("eigensystem is not in the spectrum"));
    }
    Ok(spectrum.iter().any(|other| {
        other != lam
            && other.is_p_integral(t.p)
            && other.values.iter().zip(&lam.values).all(|(a, b)| valuation(&(a - b), t.p).is_none_or(|v| v >= 1))
    }))
}

/// A `T`-module free of rank `m` over `Z_(p)`, with one action matrix per basis element of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeModule {
    action: Vec<Matrix>,
}

impl HeckeModule {
    pub fn new(t: &DvrAlgebra, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != t.dim() {
            return Err(Error::Dimension("one action matrix per algebra basis element".into()));
        }
        let m = action.first().map_or(0, Matrix::rows);
        if action.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(Error::Dimension("action matrices must be square of equal size".into()));
        }
        for a in &action {
            check_p_integral(a, t.p, "action matrix")?;
        }
        let module = HeckeModule { action };
        if module.element_action(&t.unit) != Matrix::identity(m) {
            return Err(invalid("unit does not act as the identity"));
        }
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                if module.action[i].mul(&module.action[j]) != module.element_action(&t.structure[i][j]) {
                    return Err(invalid("action is not multiplicative"));
                }
            }
        }
        Ok(module)
    }

    pub fn regular(t: &DvrAlgebra) -> Self {
        HeckeModule { action: t.regular.clone() }
    }

    pub fn rank(&self) -> usize {
        self.action.first().map_or(0, Matrix::rows)
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn element_action(&self, x: &[Rational]) -> Matrix {
        let m = self.rank();
        x.iter().zip(&self.action).fold(Matrix::zeros(m, m), |acc, (c, a)| {
            if c.is_zero() {
                acc
            } else {
                acc.add(&a.scale(c))
            }
        })
    }

    pub fn direct_sum(parts: &[HeckeModule]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(invalid("empty direct sum"));
        };
        let d = first.action.len();
        if parts.iter().any(|m| m.action.len() != d) {
            return Err(Error::Dimension("summands over different algebras".into()));
        }
        let total: usize = parts.iter().map(HeckeModule::rank).sum();
        let action = (0..d)
            .map(|i| {
                let mut a = Matrix::zeros(total, total);
                let mut off = 0;
                for m in parts {
                    let r = m.rank();
                    for x in 0..r {
                        for y in 0..r {
                            a[(off + x, off + y)] = m.action[i][(x, y)].clone();
                        }
                    }
                    off += r;
                }
                a
            })
            .collect();
        Ok(HeckeModule { action })
    }

    /// The sublattice with basis the columns of `b` (full rank), which must be stable.
    pub fn sublattice(&self, t: &DvrAlgebra, b: &Matrix) -> Result<Self> {
        let inv = b.inverse().ok_or_else(|| invalid("sublattice basis must be invertible"))?;
        let action = self.action.iter().map(|a| inv.mul(&a.mul(b))).collect();
        Self::new(t, action).map_err(|_| invalid("sublattice is not stable under the algebra"))
    }

    /// Same module in the basis given by the columns of a unimodular `u`.
    pub fn change_basis(&self, t: &DvrAlgebra, u: &Matrix) -> Result<Self> {
        if !is_unimodular(u, t.p) {
            return Err(invalid("basis change must be unimodular"));
        }
        self.sublattice(t, u)
    }

    /// Same module viewed over an algebra in a new basis `e'_j = Σ_i u[i][j] e_i`.
    pub fn reindex_algebra(&self, u: &Matrix) -> Self {
        let cols = u.columns();
        HeckeModule { action: cols.iter().map(|c| self.element_action(c)).collect() }
    }

    /// `Hom(M, Z_(p))` in the dual basis: `(t·ψ)(m) = ψ(t·m)`.
    pub fn dual(&self) -> Self {
        HeckeModule { action: self.action.iter().map(Matrix::transpose).collect() }
    }
}

fn projector(t: &DvrAlgebra, m: &HeckeModule, lam: &Eigensystem) -> Result<Matrix> {
    if m.action.len() != t.dim() {
        return Err(Error::Dimension("module is over a different algebra".into()));
    }
    Ok(m.element_action(&idempotent(t, lam)?))
}

fn nonzero_sorted(mut v: Vec<i64>) -> Vec<u32> {
    v.retain(|&x| x != 0);
    v.sort_unstable();
    v.into_iter().map(|x| x as u32).collect()
}

fn fitting(sup: &Matrix, sub: &Matrix, p: u64) -> Result<u32> {
    Ok(relative_exponents(sup, sub, p)?.iter().sum::<i64>() as u32)
}

/// Elementary divisor exponents of `C_0^λ(M) = e_λ M / (M ∩ e_λ M_Q)`, nonzero ones only, ascending.
pub fn congruence_module_divisors(t: &DvrAlgebra, lam: &Eigensystem, m: &HeckeModule) -> Result<Vec<u32>> {
    let pr = projector(t, m, lam)?;
    Ok(nonzero_sorted(relative_exponents(&pr, &saturation(&pr, t.p), t.p)?))
}

/// `λ`-rank of `M`: the dimension of `e_λ M_Q`.
pub fn lambda_rank(t: &DvrAlgebra, lam: &Eigensystem, m: &HeckeModule) -> Result<usize> {
    Ok(projector(t, m, lam)?.rank())
}

/// A surjective algebra map `θ: T' → T`, as a `dim T × dim T'` matrix on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferData {
    source: DvrAlgebra,
    target: DvrAlgebra,
    theta: Matrix,
}

impl TransferData {
    pub fn new(source: DvrAlgebra, target: DvrAlgebra, theta: Matrix) -> Result<Self> {
        if source.p != target.p {
            return Err(invalid("source and target live over different primes"));
        }
        if theta.rows() != target.dim() || theta.cols() != source.dim() {
            return Err(Error::Dimension("theta must be dim T x dim T'".into()));
        }
        check_p_integral(&theta, source.p, "theta")?;
        if theta.mul_vec(&source.unit) != target.unit {
            return Err(invalid("theta does not preserve the unit"));
        }
        let cols = theta.columns();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                if theta.mul_vec(&source.structure[i][j]) != target.multiply(&cols[i], &cols[j]) {
                    return Err(invalid("theta is not multiplicative"));
                }
            }
        }
        let s = smith(&theta, source.p);
        if s.rank() != target.dim() || s.valuations.iter().any(|&v| v != 0) {
            return Err(invalid("theta is not surjective over Z_(p)"));
        }
        Ok(TransferData { source, target, theta })
    }

    pub fn source(&self) -> &DvrAlgebra {
        &self.source
    }

    pub fn target(&self) -> &DvrAlgebra {
        &self.target
    }

    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    /// `λ ∘ θ`.
    pub fn pullback(&self, lam: &Eigensystem) -> Eigensystem {
        Eigensystem { values: self.theta.vec_mul(&lam.values) }
    }

    /// The idempotent `e_θ ∈ T'_Q` cutting out the eigensystems that factor through `θ`.
    pub fn e_theta(&self) -> Result<Vec<Rational>> {
        let src = spectrum_with_idempotents(&self.source)?;
        let tgt = split_spectrum(&self.target)?;
        let mut e = vec![Rational::zero(); self.source.dim()];
        for nu in &tgt {
            let pulled = self.pullback(nu);
            let (_, idem) = src
                .iter()
                .find(|(l, _)| *l == pulled)
                .ok_or_else(|| invalid("pulled back eigensystem missing from the source spectrum"))?;
            for (a, b) in e.iter_mut().zip(idem) {
                *a += b;
            }
        }
        Ok(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransferExponents {
    /// `η_{λ'}(M)`.
    pub total: u32,
    /// `η_λ(M_T)` for the pushforward `M_T = M ∩ e_θ M_Q`.
    pub pushforward: u32,
    /// `η^#_λ(M)`.
    pub transfer: u32,
}

struct TransferLattices {
    /// Spanning set of `M^{λ'}`.
    upper: Matrix,
    /// Spanning set of `(M_T)^λ`.
    middle: Matrix,
    /// Basis of `M_{λ'}`.
    lower: Matrix,
}

fn transfer_lattices(td: &TransferData, lam: &Eigensystem, m: &HeckeModule) -> Result<(TransferLattices, Matrix)> {
    if !td.target.is_eigensystem(lam) {
        return Err(invalid("not an eigensystem of the target algebra"));
    }
    let lp = td.pullback(lam);
    let p_lam = projector(&td.source, m, &lp)?;
    let p_theta = m.element_action(&td.e_theta()?);
    let m_t = saturation(&p_theta, td.source.p);
    Ok((
        TransferLattices { upper: p_lam.clone(), middle: p_lam.mul(&m_t), lower: saturation(&p_lam, td.source.p) },
        p_theta,
    ))
}

/// The three exponents in `η_{λ'}(M) = η_λ(M_T) · η^#_λ(M)`.
pub fn transfer_congruence(td: &TransferData, lam: &Eigensystem, m: &HeckeModule) -> Result<TransferExponents> {
    let p = td.source.p;
    let (l, _) = transfer_lattices(td, lam, m)?;
    Ok(TransferExponents {
        total: fitting(&l.upper, &l.lower, p)?,
        pushforward: fitting(&l.middle, &l.lower, p)?,
        transfer: fitting(&l.upper, &l.middle, p)?,
    })
}

/// Involutions `ι_T` on the algebra and `ι_M` on a module with `ι_M A(t) = A(ι_T t) ι_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiLinearInvolution {
    algebra: Matrix,
    module: Matrix,
}

impl SemiLinearInvolution {
    pub fn new(t: &DvrAlgebra, m: &HeckeModule, algebra: Matrix, module: Matrix) -> Result<Self> {
        let inv = SemiLinearInvolution { algebra, module };
        if let Some(problem) = inv.problem(t, m) {
            return Err(invalid(problem));
        }
        Ok(inv)
    }

    /// Builds without validation; used for deliberately malformed test input.
    pub fn new_unchecked(algebra: Matrix, module: Matrix) -> Self {
        SemiLinearInvolution { algebra, module }
    }

    pub fn algebra(&self) -> &Matrix {
        &self.algebra
    }

    pub fn module(&self) -> &Matrix {
        &self.module
    }

    fn problem(&self, t: &DvrAlgebra, m: &HeckeModule) -> Option<String> {
        let d = t.dim();
        let r = m.rank();
        if self.algebra.rows() != d || self.algebra.cols() != d || self.module.rows() != r || self.module.cols() != r {
            return Some("involution has the wrong size".into());
        }
        if !self.algebra.entries().chain(self.module.entries()).all(|x| is_p_integral(x, t.p)) {
            return Some("involution is not p-integral".into());
        }
        if self.algebra.mul(&self.algebra) != Matrix::identity(d) || self.module.mul(&self.module) != Matrix::identity(r) {
            return Some("involution does not square to the identity".into());
        }
        if !t.is_algebra_map(&self.algebra) {
            return Some("algebra involution is not an algebra automorphism".into());
        }
        let cols = self.algebra.columns();
        for (i, a) in m.action.iter().enumerate() {
            if self.module.mul(a) != m.element_action(&cols[i]).mul(&self.module) {
                return Some("module involution is not semi-linear".into());
            }
        }
        None
    }

    /// `ι_N = ι_M^T` on the dual module.
    pub fn dual(&self) -> Self {
        SemiLinearInvolution { algebra: self.algebra.clone(), module: self.module.transpose() }
    }
}

fn is_invariant(lam: &Eigensystem, inv: &SemiLinearInvolution) -> bool {
    inv.algebra.vec_mul(&lam.values) == lam.values
}

fn half_projectors(iota: &Matrix) -> (Matrix, Matrix) {
    let id = Matrix::identity(iota.rows());
    let half = Rational::new(1.into(), 2.into());
    (id.add(iota).scale(&half), id.sub(iota).scale(&half))
}

fn signed_fitting(pi: &Matrix, sup: &Matrix, sub: &Matrix, p: u64) -> Result<u32> {
    fitting(&pi.mul(sup), &pi.mul(sub), p)
}

/// `(η_λ(M)[+], η_λ(M)[-])`: Fitting exponents of the `±1` eigenspaces of `ι` on `C_0^λ(M)`.
pub fn involution_parts(t: &DvrAlgebra, lam: &Eigensystem, m: &HeckeModule, inv: &SemiLinearInvolution) -> Result<(u32, u32)> {
    if let Some(problem) = inv.problem(t, m) {
        return Err(invalid(problem));
    }
    if !is_invariant(lam, inv) {
        return Err(invalid("eigensystem is not invariant under the involution"));
    }
    let pr = projector(t, m, lam)?;
    let sat = saturation(&pr, t.p);
    let (plus, minus) = half_projectors(&inv.module);
    Ok((signed_fitting(&plus, &pr, &sat, t.p)?, signed_fitting(&minus, &pr, &sat, t.p)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    PreconditionSkip(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingLemmaReport {
    pub verdict: Verdict,
    /// `(η_λ(M)[+], η_λ(M)[-])`.
    pub eta_m: Option<(u32, u32)>,
    /// `(η_λ(N)[+], η_λ(N)[-])`.
    pub eta_n: Option<(u32, u32)>,
    /// `(v(⟨m_+, n_-⟩), v(⟨m_-, n_+⟩))`.
    pub pairing_valuations: Option<(i64, i64)>,
}

impl PairingLemmaReport {
    fn skip(reason: impl Into<String>) -> Self {
        PairingLemmaReport { verdict: Verdict::PreconditionSkip(reason.into()), eta_m: None, eta_n: None, pairing_valuations: None }
    }
}

fn rank_one_generator(pi: &Matrix, sat: &Matrix, p: u64) -> Option<Vec<Rational>> {
    let b = lattice_basis(&pi.mul(sat), p);
    (b.cols() == 1).then(|| b.column(0))
}

/// Checks `η_λ(M)[±] = η_λ(N)[∓]` and, in `λ`-rank 2, `v(⟨m_±, n_∓⟩) = η_λ(M)[±]`
/// for a pairing `⟨m, n⟩ = mᵀ G n`.
pub fn verify_pairing_lemma(
    t: &DvrAlgebra,
    lam: &Eigensystem,
    m: &HeckeModule,
    n: &HeckeModule,
    pairing: &Matrix,
    inv_m: &SemiLinearInvolution,
    inv_n: &SemiLinearInvolution,
) -> Result<PairingLemmaReport> {
    let p = t.p;
    if pairing.rows() != m.rank() || pairing.cols() != n.rank() {
        return Err(Error::Dimension("pairing matrix must be rank(M) x rank(N)".into()));
    }
    if let Some(problem) = inv_m.problem(t, m).or_else(|| inv_n.problem(t, n)) {
        return Ok(PairingLemmaReport::skip(problem));
    }
    if inv_m.algebra != inv_n.algebra {
        return Ok(PairingLemmaReport::skip("M and N carry different algebra involutions"));
    }
    if !is_unimodular(pairing, p) {
        return Ok(PairingLemmaReport::skip("pairing is not perfect"));
    }
    for (a, b) in m.action.iter().zip(&n.action) {
        if a.transpose().mul(pairing) != pairing.mul(b) {
            return Ok(PairingLemmaReport::skip("pairing is not equivariant"));
        }
    }
    if inv_m.module.transpose().mul(pairing).mul(&inv_n.module) != pairing.neg() {
        return Ok(PairingLemmaReport::skip("pairing is not anti-equivariant for the involutions"));
    }
    if !is_invariant(lam, inv_m) {
        return Ok(PairingLemmaReport::skip("eigensystem is not invariant under the involution"));
    }
    let eta_m = involution_parts(t, lam, m, inv_m)?;
    let eta_n = involution_parts(t, lam, n, inv_n)?;
    let mut holds = eta_m.0 == eta_n.1 && eta_m.1 == eta_n.0;
    let pm = projector(t, m, lam)?;
    let pn = projector(t, n, lam)?;
    let mut pairing_valuations = None;
    if pm.rank() == 2 && pn.rank() == 2 {
        let sat_m = saturation(&pm, p);
        let sat_n = saturation(&pn, p);
        let (m_plus, m_minus) = half_projectors(&inv_m.module);
        let (n_plus, n_minus) = half_projectors(&inv_n.module);
        let gens = (
            rank_one_generator(&m_plus, &sat_m, p),
            rank_one_generator(&m_minus, &sat_m, p),
            rank_one_generator(&n_plus, &sat_n, p),
            rank_one_generator(&n_minus, &sat_n, p),
        );
        let (Some(mp), Some(mm), Some(np), Some(nm)) = gens else {
            return Ok(PairingLemmaReport::skip("involution acts trivially on a rank-2 eigenspace"));
        };
        let val = |x: &[Rational], y: &[Rational]| {
            let v = Matrix::from_columns(x.len(), &[x.to_vec()]).expect("column").transpose().mul(pairing).mul_vec(y);
            valuation(&v[0], p)
        };
        let (Some(a), Some(b)) = (val(&mp, &nm), val(&mm, &np)) else {
            return Ok(PairingLemmaReport {
                verdict: Verdict::Fail,
                eta_m: Some(eta_m),
                eta_n: Some(eta_n),
                pairing_valuations: None,
            });
        };
        holds &= a == eta_m.0 as i64 && b == eta_m.1 as i64;
        pairing_valuations = Some((a, b));
    }
    Ok(PairingLemmaReport {
        verdict: if holds { Verdict::Pass } else { Verdict::Fail },
        eta_m: Some(eta_m),
        eta_n: Some(eta_n),
        pairing_valuations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfLemmaReport {
    pub verdict: Verdict,
    /// `η^#_{λ'}(M^*)[±]`.
    pub bound: Option<u32>,
    /// `v(L(δ))` for the generator `δ` of `M_{λ'}[±]`; `None` when `L(δ) = 0`.
    pub value_valuation: Option<Option<i64>>,
}

impl LfLemmaReport {
    fn skip(reason: impl Into<String>) -> Self {
        LfLemmaReport { verdict: Verdict::PreconditionSkip(reason.into()), bound: None, value_valuation: None }
    }
}

/// `η^#_λ(N)[±]` for a module `N` over the source of `td`.
pub fn transfer_part_exponent(td: &TransferData, lam: &Eigensystem, n: &HeckeModule, iota_n: &Matrix, sign: Sign) -> Result<u32> {
    let (l, _) = transfer_lattices(td, lam, n)?;
    let (plus, minus) = half_projectors(iota_n);
    let pi = if sign == Sign::Plus { plus } else { minus };
    signed_fitting(&pi, &l.upper, &l.middle, td.source.p)
}

/// Checks `v(L(δ)) ≥ η^#_{λ'}(M^*)[±]` for the generator `δ` of `M_{λ'}[±]`.
pub fn verify_lf_lemma(
    td: &TransferData,
    lam: &Eigensystem,
    m: &HeckeModule,
    inv: &SemiLinearInvolution,
    sign: Sign,
    l: &[Rational],
) -> Result<LfLemmaReport> {
    let t = &td.source;
    let p = t.p;
    if l.len() != m.rank() {
        return Err(Error::Dimension("linear form has the wrong length".into()));
    }
    if let Some(problem) = inv.problem(t, m) {
        return Ok(LfLemmaReport::skip(problem));
    }
    if !l.iter().all(|x| is_p_integral(x, p)) {
        return Ok(LfLemmaReport::skip("linear form is not p-integral"));
    }
    let lp = td.pullback(lam);
    if !is_invariant(&lp, inv) {
        return Ok(LfLemmaReport::skip("eigensystem is not invariant under the involution"));
    }
    let eps = match sign {
        Sign::Plus => Rational::one(),
        Sign::Minus => -Rational::one(),
    };
    let l_iota = inv.module.vec_mul(l);
    if l_iota.iter().zip(l).any(|(a, b)| *a != b * &eps) {
        return Ok(LfLemmaReport::skip("linear form is not an eigenvector of the involution"));
    }
    let (lat, p_theta) = transfer_lattices(td, lam, m)?;
    let e_sharp = Matrix::identity(m.rank()).sub(&p_theta);
    if e_sharp.vec_mul(l).iter().any(|x| !x.is_zero()) {
        return Ok(LfLemmaReport::skip("linear form does not vanish on the complement of the transfer"));
    }
    if p_theta.mul(&inv.module) != inv.module.mul(&p_theta) {
        return Ok(LfLemmaReport::skip("involution does not preserve the transfer idempotent"));
    }
    if lat.upper.rank() != 2 {
        return Ok(LfLemmaReport::skip("lambda-rank is not 2"));
    }
    let (plus, minus) = half_projectors(&inv.module);
    let pi = if sign == Sign::Plus { plus.clone() } else { minus.clone() };
    if (plus.mul(&lat.lower)).rank() != 1 || (minus.mul(&lat.lower)).rank() != 1 {
        return Ok(LfLemmaReport::skip("involution acts trivially on the eigenspace"));
    }
    let delta = rank_one_generator(&pi, &lat.lower, p).expect("rank one");
    let dual = m.dual();
    let bound = transfer_part_exponent(td, lam, &dual, &inv.dual().module, sign)?;
    let value = l.iter().zip(&delta).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
    let v = valuation(&value, p);
    let holds = v.is_none_or(|v| v >= bound as i64);
    Ok(LfLemmaReport {
        verdict: if holds { Verdict::Pass } else { Verdict::Fail },
        bound: Some(bound),
        value_valuation: Some(v),
    })
}

/// A `Z_(p)`-basis (as columns) of `N_T[±]` for `N = M^*`, i.e. the linear
/// forms on `M` factoring through `e_θ` with `L ∘ ι = ±L`.
pub fn transfer_dual_forms(td: &TransferData, m: &HeckeModule, inv: &SemiLinearInvolution, sign: Sign) -> Result<Matrix> {
    let dual = m.dual();
    let p_theta = dual.element_action(&td.e_theta()?);
    let n_t = saturation(&p_theta, td.source.p);
    let (plus, minus) = half_projectors(&inv.module.transpose());
    let pi = if sign == Sign::Plus { plus } else { minus };
    Ok(lattice_basis(&pi.mul(&n_t), td.source.p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn order(p: u64, basis: &[&[i64]]) -> DvrAlgebra {
        DvrAlgebra::from_order(p, &basis.iter().map(|b| ints(b)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn spectrum_of_p_squared_order() {
        let t = order(3, &[&[1, 1], &[0, 9]]);
        let spectrum = split_spectrum(&t).unwrap();
        assert_eq!(spectrum, vec![Eigensystem::new(ints(&[1, 0])), Eigensystem::new(ints(&[1, 9]))]);
        assert_eq!(congruence_number(&t, &spectrum[0]).unwrap(), 2);
        assert_eq!(congruence_number(&t, &spectrum[1]).unwrap(), 2);
        assert!(congruence_exists(&t, &spectrum[0]).unwrap());
        let m = HeckeModule::regular(&t);
        assert_eq!(congruence_module_divisors(&t, &spectrum[0], &m).unwrap(), vec![2]);
        let mm = HeckeModule::direct_sum(&[m.clone(), m]).unwrap();
        assert_eq!(congruence_module_divisors(&t, &spectrum[0], &mm).unwrap(), vec![2, 2]);
    }

    #[test]
    fn maximal_order_has_no_congruences() {
        let t = order(5, &[&[1, 0], &[0, 1]]);
        for lam in split_spectrum(&t).unwrap() {
            assert_eq!(congruence_number(&t, &lam).unwrap(), 0);
            assert!(!congruence_exists(&t, &lam).unwrap());
            assert!(congruence_module_divisors(&t, &lam, &HeckeModule::regular(&t)).unwrap().is_empty());
        }
    }

    #[test]
    fn rank_one_algebra() {
        let t = DvrAlgebra::new(3, vec![vec![vec![int(1)]]], vec![int(1)]).unwrap();
        assert_eq!(split_spectrum(&t).unwrap(), vec![Eigensystem::new(vec![int(1)])]);
    }

    #[test]
    fn gaussian_integers_are_not_split() {
        // basis 1, i with i² = -1
        let c = vec![vec![ints(&[1, 0]), ints(&[0, 1])], vec![ints(&[0, 1]), ints(&[-1, 0])]];
        let t = DvrAlgebra::new(3, c, ints(&[1, 0])).unwrap();
        assert!(matches!(split_spectrum(&t), Err(Error::NotSplit(_))));
    }

    #[test]
    fn worked_transfer_example() {
        let src = order(3, &[&[1, 1, 1], &[0, 3, 0], &[0, 0, 9]]);
        let tgt = order(3, &[&[1, 1], &[0, 3]]);
        let theta = Matrix::from_rows(vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])]).unwrap();
        let td = TransferData::new(src.clone(), tgt.clone(), theta).unwrap();
        let lam = Eigensystem::new(ints(&[1, 0]));
        let ex = transfer_congruence(&td, &lam, &HeckeModule::regular(&src)).unwrap();
        assert_eq!((ex.total, ex.pushforward, ex.transfer), (2, 0, 2));
        assert_eq!(congruence_number(&src, &td.pullback(&lam)).unwrap(), 2);
    }

    #[test]
    fn swap_involution_splits_evenly() {
        let t = order(3, &[&[1, 1], &[0, 3]]);
        let lam = Eigensystem::new(ints(&[1, 0]));
        let n = HeckeModule::regular(&t);
        let m = HeckeModule::direct_sum(&[n.clone(), n]).unwrap();
        let mut swap = Matrix::zeros(4, 4);
        for (a, b) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
            swap[(a, b)] = int(1);
        }
        let inv = SemiLinearInvolution::new(&t, &m, Matrix::identity(2), swap).unwrap();
        assert_eq!(involution_parts(&t, &lam, &m, &inv).unwrap(), (1, 1));
        let id = SemiLinearInvolution::new(&t, &m, Matrix::identity(2), Matrix::identity(4)).unwrap();
        assert_eq!(involution_parts(&t, &lam, &m, &id).unwrap(), (2, 0));
    }

    #[test]
    fn pairing_lemma_on_self_dual_double() {
        let t = order(3, &[&[1, 1], &[0, 9]]);
        let lam = Eigensystem::new(ints(&[1, 0]));
        let r = HeckeModule::regular(&t);
        let m = HeckeModule::direct_sum(&[r.clone(), r]).unwrap();
        let n = m.dual();
        let iota = Matrix::diagonal(&ints(&[1, 1, -1, -1]));
        let inv_m = SemiLinearInvolution::new(&t, &m, Matrix::identity(2), iota.clone()).unwrap();
        let inv_n = SemiLinearInvolution::new(&t, &n, Matrix::identity(2), iota.neg()).unwrap();
        let rep = verify_pairing_lemma(&t, &lam, &m, &n, &Matrix::identity(4), &inv_m, &inv_n).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep);
        assert_eq!(rep.eta_m, Some((2, 2)));
        assert_eq!(rep.pairing_valuations, Some((2, 2)));
        let bad_n = SemiLinearInvolution::new(&t, &n, Matrix::identity(2), iota.clone()).unwrap();
        let rep = verify_pairing_lemma(&t, &lam, &m, &n, &Matrix::identity(4), &inv_m, &bad_n).unwrap();
        assert!(matches!(rep.verdict, Verdict::PreconditionSkip(_)));
    }

    #[test]
    fn lf_lemma_on_worked_instance() {
        let src = order(3, &[&[1, 1, 1], &[0, 3, 0], &[0, 0, 9]]);
        let tgt = order(3, &[&[1, 1], &[0, 3]]);
        let theta = Matrix::from_rows(vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])]).unwrap();
        let td = TransferData::new(src.clone(), tgt, theta).unwrap();
        let lam = Eigensystem::new(ints(&[1, 0]));
        let r = HeckeModule::regular(&src);
        let m = HeckeModule::direct_sum(&[r.clone(), r]).unwrap();
        let mut iota = Matrix::zeros(6, 6);
        for i in 0..3 {
            iota[(i, i + 3)] = int(1);
            iota[(i + 3, i)] = int(1);
        }
        let inv = SemiLinearInvolution::new(&src, &m, Matrix::identity(3), iota).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let zero = verify_lf_lemma(&td, &lam, &m, &inv, sign, &vec![Rational::zero(); 6]).unwrap();
            assert_eq!(zero.verdict, Verdict::Pass);
            let forms = transfer_dual_forms(&td, &m, &inv, sign).unwrap();
            let mut best = None;
            for col in forms.columns() {
                let rep = verify_lf_lemma(&td, &lam, &m, &inv, sign, &col).unwrap();
                assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep);
                if let Some(Some(v)) = rep.value_valuation {
                    best = Some(best.map_or(v, |b: i64| b.min(v)));
                }
                // the dual order splits its congruence as 1 + 1 across the transfer
                assert_eq!(rep.bound, Some(1));
            }
            assert_eq!(best, Some(1));
        }
    }
}
