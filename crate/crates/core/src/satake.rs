//! Local data at a finite place: inverse roots, conductors, modulus
//! characters, Hecke eigenvalues, and base change on Satake parameters.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Roots;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::rational::{int, is_prime_power, powi, Rational};
use crate::symfunc::{elementary, elementary_all, MultiPoly};

/// An element `a + b·u` of `Q[u] / (u² - 1/q)`, where `u` stands for `q^{-1/2}`.
///
/// When `q` is a perfect square `u` is rational and the `b` part is folded into
/// `a`, so equality of values is equality of real numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QHalfValue {
    q: u64,
    a: Rational,
    b: Rational,
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let r = q.sqrt();
    (r * r == q).then_some(r)
}

impl QHalfValue {
    pub fn new(q: u64, a: Rational, b: Rational) -> Self {
        assert!(q >= 2, "residue cardinality must be at least 2");
        match exact_sqrt(q) {
            Some(r) if !b.is_zero() => QHalfValue { q, a: a + b / int(r as i64), b: Rational::zero() },
            _ => QHalfValue { q, a, b },
        }
    }

    pub fn rational(q: u64, a: Rational) -> Self {
        Self::new(q, a, Rational::zero())
    }

    pub fn zero(q: u64) -> Self {
        Self::rational(q, Rational::zero())
    }

    pub fn one(q: u64) -> Self {
        Self::rational(q, Rational::one())
    }

    /// `coef · u^m`.
    pub fn monomial(q: u64, coef: Rational, m: i64) -> Self {
        let qq = int(q as i64);
        let scaled = coef * powi(&qq, -m.div_euclid(2));
        if m.rem_euclid(2) == 0 {
            Self::rational(q, scaled)
        } else {
            Self::new(q, Rational::zero(), scaled)
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn half_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    /// `Some((c, m))` with `m ∈ {0, 1}` when the value is `c · u^m`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        if self.b.is_zero() {
            Some((self.a.clone(), 0))
        } else if self.a.is_zero() {
            Some((self.b.clone(), 1))
        } else {
            None
        }
    }

    fn check_q(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixing half-power values over different q");
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QHalfValue { q: self.q, a: &self.a * c, b: &self.b * c }
    }

    pub fn inverse(&self) -> Result<Self> {
        let qq = int(self.q as i64);
        let norm = &self.a * &self.a - &self.b * &self.b / qq;
        if norm.is_zero() {
            return Err(invalid("zero has no inverse"));
        }
        Ok(QHalfValue { q: self.q, a: &self.a / &norm, b: -&self.b / &norm })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.q);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Reinterprets a value over `q_down²` as a value over `q_down`, using
    /// `q_up^{-1/2} = q_down^{-1}`.
    pub fn descend_square(&self, q_down: u64) -> Result<Self> {
        if q_down.checked_mul(q_down) != Some(self.q) {
            return Err(invalid(format!("{} is not the square of {}", self.q, q_down)));
        }
        let a = &self.a + &self.b / int(q_down as i64);
        Ok(Self::rational(q_down, a))
    }
}

impl Add<&QHalfValue> for &QHalfValue {
    type Output = QHalfValue;
    fn add(self, o: &QHalfValue) -> QHalfValue {
        self.check_q(o);
        QHalfValue { q: self.q, a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub<&QHalfValue> for &QHalfValue {
    type Output = QHalfValue;
    fn sub(self, o: &QHalfValue) -> QHalfValue {
        self.check_q(o);
        QHalfValue { q: self.q, a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul<&QHalfValue> for &QHalfValue {
    type Output = QHalfValue;
    fn mul(self, o: &QHalfValue) -> QHalfValue {
        self.check_q(o);
        let qq = int(self.q as i64);
        QHalfValue {
            q: self.q,
            a: &self.a * &o.a + &self.b * &o.b / qq,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QHalfValue {
    type Output = QHalfValue;
    fn neg(self) -> QHalfValue {
        QHalfValue { q: self.q, a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QHalfValue> for QHalfValue {
            type Output = QHalfValue;
            fn $m(self, o: QHalfValue) -> QHalfValue { (&self).$m(&o) }
        }
        impl $tr<&QHalfValue> for QHalfValue {
            type Output = QHalfValue;
            fn $m(self, o: &QHalfValue) -> QHalfValue { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for QHalfValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*{}^(-1/2)", self.b, self.q),
            (false, false) => write!(f, "{} + {}*{}^(-1/2)", self.a, self.b, self.q),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceType {
    Split,
    Inert,
    Ramified,
}

/// A local representation datum: rank, residue cardinality, the `r ≤ n`
/// inverse roots of the standard factor, and the conductor exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SatakeData {
    n: usize,
    q: u64,
    alphas: Vec<Rational>,
    conductor: u32,
}

impl SatakeData {
    pub fn new(n: usize, q: u64, alphas: Vec<Rational>, conductor: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("rank must be positive"));
        }
        if q < 2 || !is_prime_power(q) {
            return Err(invalid(format!("residue cardinality {} is not a prime power", q)));
        }
        if alphas.len() > n {
            return Err(invalid(format!("{} inverse roots exceed rank {}", alphas.len(), n)));
        }
        if (conductor == 0) != (alphas.len() == n) {
            return Err(invalid("conductor must vanish exactly when all n inverse roots are present"));
        }
        if alphas.iter().any(Zero::is_zero) {
            return Err(invalid("inverse roots must be nonzero"));
        }
        Ok(SatakeData { n, q, alphas, conductor })
    }

    pub fn unramified(q: u64, alphas: Vec<Rational>) -> Result<Self> {
        Self::new(alphas.len(), q, alphas, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_unramified(&self) -> bool {
        self.alphas.len() == self.n
    }

    /// The inverse roots followed by `n - r` zeros.
    pub fn padded_alphas(&self) -> Vec<Rational> {
        let mut v = self.alphas.clone();
        v.resize(self.n, Rational::zero());
        v
    }

    /// Contragredient: every inverse root inverted.
    pub fn dual(&self) -> Self {
        SatakeData {
            n: self.n,
            q: self.q,
            alphas: self.alphas.iter().map(Rational::recip).collect(),
            conductor: self.conductor,
        }
    }

    pub(crate) fn require_unramified(&self, what: &str) -> Result<()> {
        if self.is_unramified() {
            Ok(())
        } else {
            Err(invalid(format!("{} needs unramified data (r = n)", what)))
        }
    }
}

/// `δ_B^{1/2}(ϖ^f) = u^{Σ_i (n+1-2i) f_i}` with `u = q^{-1/2}`; missing trailing entries of `f` count as 0.
pub fn modulus_half(n: usize, q: u64, f: &[i64]) -> QHalfValue {
    QHalfValue::monomial(q, Rational::one(), modulus_half_exponent(n, f))
}

pub(crate) fn modulus_half_exponent(n: usize, f: &[i64]) -> i64 {
    f.iter().enumerate().map(|(i, &fi)| (n as i64 - 1 - 2 * i as i64) * fi).sum()
}

/// `q^{i(n-i)/2} σ_i(α)`, for `0 ≤ i ≤ n`.
pub fn hecke_eigenvalue(sd: &SatakeData, i: usize) -> Result<QHalfValue> {
    sd.require_unramified("hecke_eigenvalue")?;
    if i > sd.n {
        return Err(invalid(format!("Hecke index {} exceeds rank {}", i, sd.n)));
    }
    let k = (i * (sd.n - i)) as i64;
    Ok(QHalfValue::monomial(sd.q, elementary(i, &sd.alphas), -k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseChange {
    /// One datum at each of the two places above a split place.
    Pair(SatakeData, SatakeData),
    Single(SatakeData),
}

/// Local base change of unramified data to a quadratic extension.
pub fn bc_local(sd: &SatakeData, place: PlaceType) -> Result<BaseChange> {
    sd.require_unramified("bc_local")?;
    Ok(match place {
        PlaceType::Split => BaseChange::Pair(sd.clone(), sd.clone()),
        PlaceType::Ramified => BaseChange::Single(sd.clone()),
        PlaceType::Inert => {
            let q2 = sd.q.checked_mul(sd.q).ok_or_else(|| invalid("q² overflows"))?;
            let alphas = sd.alphas.iter().map(|a| a * a).collect();
            BaseChange::Single(SatakeData::unramified(q2, alphas)?)
        }
    })
}

/// Stable base change at a split place: `(π, π^∨)`.
pub fn sbc_local_split(sd: &SatakeData) -> (SatakeData, SatakeData) {
    (sd.clone(), sd.dual())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBcReport {
    pub holds: bool,
    /// Eigenvalue of the base change at the upstairs Hecke operator, over `q_v`.
    pub lhs: QHalfValue,
    /// The transfer formula evaluated on the downstairs eigenvalues.
    pub rhs: QHalfValue,
}

/// Compares `λ_Π(T_{w,i})` with `Σ_k (-q)^{(i-k)²} λ_π(T_k) λ_π(T_{2i-k})` at an inert place.
pub fn verify_theta_bc(n: usize, i: usize, sd: &SatakeData, q_v: u64) -> Result<ThetaBcReport> {
    sd.require_unramified("verify_theta_bc")?;
    if sd.n != n || sd.q != q_v {
        return Err(invalid("rank or residue cardinality does not match the data"));
    }
    if i == 0 || i > n {
        return Err(invalid(format!("Hecke index {} outside 1..={}", i, n)));
    }
    let big = match bc_local(sd, PlaceType::Inert)? {
        BaseChange::Single(b) => b,
        BaseChange::Pair(..) => return Err(Error::InvalidInput("unexpected split base change".into())),
    };
    let lhs = hecke_eigenvalue(&big, i)?.descend_square(q_v)?;
    let lo = (2 * i).saturating_sub(n);
    let hi = (2 * i).min(n);
    let minus_q = -int(q_v as i64);
    let mut rhs = QHalfValue::zero(q_v);
    for k in lo..=hi {
        let d = i.abs_diff(k) as i64;
        let c = QHalfValue::rational(q_v, powi(&minus_q, d * d));
        rhs = rhs + c * hecke_eigenvalue(sd, k)? * hecke_eigenvalue(sd, 2 * i - k)?;
    }
    Ok(ThetaBcReport { holds: lhs == rhs, lhs, rhs })
}

/// Checks `(-1)^i σ_i(X²) = Σ_k (-1)^k σ_k(X) σ_{2i-k}(X)` in `Z[X_1..X_n]` for every `i ≤ n`.
pub fn verify_square_elementary_identity(n: usize) -> bool {
    let sigma: Vec<MultiPoly> = (0..=n).map(|k| MultiPoly::elementary(n, k)).collect();
    (0..=n).all(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let lhs = sigma[i].power_variables(2).scale(sign);
        let rhs = (0..=2 * i).filter(|&k| k <= n && 2 * i - k <= n).fold(MultiPoly::zero(n), |acc, k| {
            let term = sigma[k].mul(&sigma[2 * i - k]);
            acc.add(&if k % 2 == 0 { term } else { term.scale(-1) })
        });
        lhs == rhs
    })
}

/// `σ_i(α)` for every `i`, reused by callers evaluating several eigenvalues.
pub fn elementary_values(sd: &SatakeData) -> Vec<Rational> {
    elementary_all(&sd.alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::vec;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(modulus_half(3, 7, &[1, 0, 0]), QHalfValue::rational(7, rat(1, 7)));
        assert_eq!(modulus_half(3, 7, &[1, 1, 1]), QHalfValue::one(7));
        assert_eq!(modulus_half(2, 7, &[1, 0]).as_monomial(), Some((int(1), 1)));
    }

    #[test]
    fn hecke_examples() {
        let sd = SatakeData::unramified(5, ints(&[1, 2, 3])).unwrap();
        assert_eq!(hecke_eigenvalue(&sd, 1).unwrap().to_rational(), Some(int(30)));
        assert_eq!(hecke_eigenvalue(&sd, 3).unwrap().to_rational(), Some(int(6)));
        // q^{1/2}·5 = 25·q^{-1/2}
        let sd2 = SatakeData::unramified(5, ints(&[2, 3])).unwrap();
        let v = hecke_eigenvalue(&sd2, 1).unwrap();
        assert_eq!(v.as_monomial(), Some((int(25), 1)));
        assert_eq!(&v * &v, QHalfValue::rational(5, int(125)));
    }

    #[test]
    fn theta_examples() {
        let sd = SatakeData::unramified(5, ints(&[2, 3])).unwrap();
        let r = verify_theta_bc(2, 1, &sd, 5).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs.to_rational(), Some(int(65)));
        let sd3 = SatakeData::unramified(5, ints(&[1, 2, 3])).unwrap();
        let r3 = verify_theta_bc(3, 3, &sd3, 5).unwrap();
        assert_eq!(r3.rhs.to_rational(), Some(int(36)));
        assert!(r3.holds);
        let sd1 = SatakeData::unramified(3, vec![rat(2, 7)]).unwrap();
        assert!(verify_theta_bc(1, 1, &sd1, 3).unwrap().holds);
    }

    #[test]
    fn base_change_shapes() {
        let sd = SatakeData::unramified(5, ints(&[2, 3])).unwrap();
        match bc_local(&sd, PlaceType::Inert).unwrap() {
            BaseChange::Single(b) => {
                assert_eq!(b.q(), 25);
                assert_eq!(b.alphas(), &ints(&[4, 9])[..]);
            }
            other => panic!("unexpected {:?}", other),
        }
        assert_eq!(bc_local(&sd, PlaceType::Split).unwrap(), BaseChange::Pair(sd.clone(), sd.clone()));
        let ram = SatakeData::new(3, 5, ints(&[2]), 1).unwrap();
        assert!(bc_local(&ram, PlaceType::Ramified).is_err());
        let (a, b) = sbc_local_split(&SatakeData::unramified(5, ints(&[2, 3, 5])).unwrap());
        assert_eq!(a.alphas(), &ints(&[2, 3, 5])[..]);
        assert_eq!(b.alphas(), &[rat(1, 2), rat(1, 3), rat(1, 5)][..]);
    }

    #[test]
    fn satake_invariants_enforced() {
        assert!(SatakeData::new(2, 6, ints(&[1, 2]), 0).is_err());
        assert!(SatakeData::new(2, 5, ints(&[1]), 0).is_err());
        assert!(SatakeData::new(2, 5, ints(&[1, 2]), 1).is_err());
        assert!(SatakeData::new(2, 5, ints(&[0, 2]), 0).is_err());
    }

    #[test]
    fn square_q_collapses_half_powers() {
        let v = QHalfValue::monomial(25, int(1), 1);
        assert_eq!(v.to_rational(), Some(rat(1, 5)));
    }

    #[test]
    fn polynomial_identity_small_ranks() {
        for n in 1..=4 {
            assert!(verify_square_elementary_identity(n));
        }
    }
}
