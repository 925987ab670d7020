//! Local Euler factors `1 / P(q^{-s})`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::rational::{int, powi, Rational};
use crate::satake::{PlaceType, SatakeData};
use crate::series::TruncatedSeries;

/// `P(T) = Σ c_k T^k` with `c_0 = 1`; `T` stands for `q^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerFactor {
    q: u64,
    coefficients: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorValue {
    Value(Rational),
    Pole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AsaiSign {
    Plus,
    Minus,
}

impl AsaiSign {
    /// `(-)^k`.
    pub fn power(k: usize) -> Self {
        if k.is_multiple_of(2) {
            AsaiSign::Plus
        } else {
            AsaiSign::Minus
        }
    }
}

impl EulerFactor {
    pub fn new(q: u64, mut coefficients: Vec<Rational>) -> Result<Self> {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        if coefficients.first() != Some(&Rational::one()) {
            return Err(invalid("an Euler factor polynomial must have constant term 1"));
        }
        Ok(EulerFactor { q, coefficients })
    }

    pub fn one(q: u64) -> Self {
        EulerFactor { q, coefficients: vec![Rational::one()] }
    }

    /// `1 - a T`.
    pub fn linear(q: u64, a: &Rational) -> Self {
        Self::binomial(q, a, 1)
    }

    /// `1 - a T^k`.
    pub fn binomial(q: u64, a: &Rational, k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[0] = Rational::one();
        c[k] = -a.clone();
        Self::new(q, c).expect("constant term is 1")
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    fn same_q(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(invalid(format!("factors over q = {} and q = {} cannot be combined", self.q, other.q)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        let mut c = vec![Rational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(self.q, c)
    }

    /// Exact quotient `self / divisor`; fails unless the remainder vanishes.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.same_q(divisor)?;
        let d = divisor.degree();
        let mut rem = self.coefficients.clone();
        if rem.len() <= d {
            return if d == 0 { Ok(self.clone()) } else { Err(Error::InexactDivision) };
        }
        let lead = divisor.coefficients[d].clone();
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coefficients.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Self::new(self.q, quot)
    }

    /// `P(T) -> P(T^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut c = vec![Rational::zero(); self.degree() * k + 1];
        for (i, x) in self.coefficients.iter().enumerate() {
            c[i * k] = x.clone();
        }
        EulerFactor { q: self.q, coefficients: c }
    }

    pub fn polynomial_at(&self, t: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Power series of `1 / P(T)` through degree `max_degree`.
    pub fn series(&self, max_degree: usize) -> TruncatedSeries {
        TruncatedSeries::inverse_of_polynomial(&self.coefficients, max_degree).expect("constant term is 1")
    }

    pub fn as_series_polynomial(&self, max_degree: usize) -> TruncatedSeries {
        TruncatedSeries::from_polynomial(&self.coefficients, max_degree)
    }
}

fn product(q: u64, roots: impl IntoIterator<Item = (Rational, usize)>) -> EulerFactor {
    roots.into_iter().fold(EulerFactor::one(q), |acc, (a, k)| {
        acc.mul(&EulerFactor::binomial(q, &a, k)).expect("same q")
    })
}

fn pairs(xs: &[Rational]) -> impl Iterator<Item = Rational> + '_ {
    (0..xs.len()).flat_map(move |j| (j + 1..xs.len()).map(move |k| &xs[j] * &xs[k]))
}

/// `∏_{i ≤ r} (1 - α_i T)`.
pub fn standard_factor(sd: &SatakeData) -> EulerFactor {
    product(sd.q(), sd.alphas().iter().map(|a| (a.clone(), 1)))
}

/// `∏_{i,j} (1 - α_i β_j T)` over the available inverse roots.
pub fn rankin_selberg_imprimitive(sd1: &SatakeData, sd2: &SatakeData) -> Result<EulerFactor> {
    if sd1.q() != sd2.q() {
        return Err(invalid("Rankin-Selberg inputs have different residue cardinalities"));
    }
    Ok(product(sd1.q(), sd1.alphas().iter().flat_map(|a| sd2.alphas().iter().map(move |b| (a * b, 1)))))
}

/// `L(π × π^∨) / ζ`: degree `n² - 1`.
pub fn adjoint_factor(sd: &SatakeData) -> Result<EulerFactor> {
    sd.require_unramified("adjoint_factor")?;
    let rs = rankin_selberg_imprimitive(sd, &sd.dual())?;
    rs.div_exact(&EulerFactor::linear(sd.q(), &Rational::one()))
}

/// Asai factor for unramified data at the place(s) above `v`.
///
/// The returned factor uses `T = q^{-s}` with `q` the residue cardinality
/// stored in `sd`; at inert places pass the downstairs one.
pub fn asai_factor(sd: &SatakeData, place: PlaceType, sign: AsaiSign, partner: Option<&SatakeData>) -> Result<EulerFactor> {
    sd.require_unramified("asai_factor")?;
    if let Some(p) = partner {
        p.require_unramified("asai_factor partner")?;
    }
    asai_imprimitive(sd, place, sign, partner)
}

/// Asai factor of the unramified standard module (the `r` available inverse roots).
pub fn asai_imprimitive(sd: &SatakeData, place: PlaceType, sign: AsaiSign, partner: Option<&SatakeData>) -> Result<EulerFactor> {
    let q = sd.q();
    let a = sd.alphas();
    match place {
        PlaceType::Split => {
            let p = partner.ok_or_else(|| invalid("a split place needs the partner datum"))?;
            rankin_selberg_imprimitive(sd, p)
        }
        PlaceType::Inert => {
            let eps = match sign {
                AsaiSign::Plus => Rational::one(),
                AsaiSign::Minus => -Rational::one(),
            };
            let linear = a.iter().map(|x| (x * &eps, 1));
            let quadratic = pairs(a).map(|x| (x, 2));
            Ok(product(q, linear.chain(quadratic).collect::<Vec<_>>()))
        }
        PlaceType::Ramified => {
            let squares: Vec<(Rational, usize)> = match sign {
                AsaiSign::Plus => a.iter().map(|x| (x * x, 1)).collect(),
                AsaiSign::Minus => Vec::new(),
            };
            let mixed = pairs(a).map(|x| (x, 1));
            Ok(product(q, squares.into_iter().chain(mixed).collect::<Vec<_>>()))
        }
    }
}

/// Input to the unitary adjoint factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitaryAdjointInput {
    /// The stable base change `(π, π^∨)` at a split place.
    Split(SatakeData, SatakeData),
    /// Data at the unique place above an inert or ramified place.
    NonSplit(SatakeData),
}

/// `L^{imp}(π, Ad)` (untwisted) or `L^{imp}(π, Ad ⊗ χ)` (twisted) as quotients of Asai factors.
pub fn unitary_adjoint_imprimitive(input: &UnitaryAdjointInput, place: PlaceType, twisted: bool) -> Result<EulerFactor> {
    let (sd, partner) = match (input, place) {
        (UnitaryAdjointInput::Split(a, b), PlaceType::Split) => {
            if a.q() != b.q() || a.n() != b.n() || !same_multiset(b.alphas(), a.dual().alphas()) {
                return Err(invalid("split input must be a datum paired with its dual"));
            }
            (a, Some(b))
        }
        (UnitaryAdjointInput::NonSplit(a), PlaceType::Inert | PlaceType::Ramified) => (a, None),
        _ => return Err(invalid("input shape does not match the place type")),
    };
    let n = sd.n();
    let q = sd.q();
    let (sign, chi) = if twisted {
        (AsaiSign::power(n + 1), Some(Rational::one()))
    } else {
        let chi = match place {
            PlaceType::Split => Some(Rational::one()),
            PlaceType::Inert => Some(-Rational::one()),
            PlaceType::Ramified => None,
        };
        (AsaiSign::power(n), chi)
    };
    let asai = asai_imprimitive(sd, place, sign, partner)?;
    match chi {
        Some(c) => asai.div_exact(&EulerFactor::linear(q, &c)).map_err(|_| {
            invalid("Asai factor is not divisible by the character factor; parameters are not of base change shape")
        }),
        None => Ok(asai),
    }
}

fn same_multiset(a: &[Rational], b: &[Rational]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort();
    y.sort();
    x == y
}

/// `1 / P(q^{-s})`.
pub fn evaluate(f: &EulerFactor, s: i64) -> FactorValue {
    let t = powi(&int(f.q as i64), -s);
    let v = f.polynomial_at(&t);
    if v.is_zero() {
        FactorValue::Pole
    } else {
        FactorValue::Value(v.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn poly(q: u64, c: &[Rational]) -> EulerFactor {
        EulerFactor::new(q, c.to_vec()).unwrap()
    }

    fn lin(q: u64, a: Rational) -> EulerFactor {
        EulerFactor::linear(q, &a)
    }

    #[test]
    fn standard_examples() {
        assert_eq!(standard_factor(&SatakeData::new(2, 5, vec![], 1).unwrap()), EulerFactor::one(5));
        assert_eq!(standard_factor(&SatakeData::unramified(5, ints(&[2])).unwrap()), lin(5, int(2)));
        assert_eq!(
            standard_factor(&SatakeData::unramified(5, ints(&[1, 2, 3])).unwrap()).coefficients(),
            &ints(&[1, -6, 11, -6])[..]
        );
    }

    #[test]
    fn adjoint_examples() {
        let sd = SatakeData::unramified(5, vec![int(2), rat(1, 2)]).unwrap();
        let expect = lin(5, int(1)).mul(&lin(5, int(4))).unwrap().mul(&lin(5, rat(1, 4))).unwrap();
        assert_eq!(adjoint_factor(&sd).unwrap(), expect);
        assert_eq!(evaluate(&expect, 1), FactorValue::Value(rat(125, 19)));
        let gl1 = SatakeData::unramified(5, vec![rat(3, 7)]).unwrap();
        assert_eq!(adjoint_factor(&gl1).unwrap(), EulerFactor::one(5));
    }

    #[test]
    fn asai_examples() {
        let sd = SatakeData::unramified(5, ints(&[2, 3])).unwrap();
        let inert = asai_factor(&sd, PlaceType::Inert, AsaiSign::Plus, None).unwrap();
        let expect = lin(5, int(2)).mul(&lin(5, int(3))).unwrap().mul(&EulerFactor::binomial(5, &int(6), 2)).unwrap();
        assert_eq!(inert, expect);
        let ram = asai_factor(&sd, PlaceType::Ramified, AsaiSign::Plus, None).unwrap();
        let expect = lin(5, int(4)).mul(&lin(5, int(9))).unwrap().mul(&lin(5, int(6))).unwrap();
        assert_eq!(ram, expect);
        let a = SatakeData::unramified(5, ints(&[2])).unwrap();
        let b = SatakeData::unramified(5, ints(&[3])).unwrap();
        assert_eq!(asai_factor(&a, PlaceType::Split, AsaiSign::Plus, Some(&b)).unwrap(), lin(5, int(6)));
        assert!(asai_factor(&a, PlaceType::Split, AsaiSign::Plus, None).is_err());
    }

    #[test]
    fn imprimitive_asai_examples() {
        let sd = SatakeData::new(3, 5, ints(&[2]), 2).unwrap();
        assert_eq!(asai_imprimitive(&sd, PlaceType::Inert, AsaiSign::Plus, None).unwrap(), lin(5, int(2)));
        let sd = SatakeData::new(3, 5, ints(&[2, 3]), 1).unwrap();
        let expect = lin(5, int(4)).mul(&lin(5, int(9))).unwrap().mul(&lin(5, int(6))).unwrap();
        assert_eq!(asai_imprimitive(&sd, PlaceType::Ramified, AsaiSign::Plus, None).unwrap(), expect);
    }

    #[test]
    fn unitary_adjoint_examples() {
        let sd = SatakeData::unramified(5, vec![int(2), rat(1, 2)]).unwrap();
        let (a, b) = crate::satake::sbc_local_split(&sd);
        let input = UnitaryAdjointInput::Split(a, b);
        let untwisted = unitary_adjoint_imprimitive(&input, PlaceType::Split, false).unwrap();
        assert_eq!(untwisted, adjoint_factor(&sd).unwrap());
        assert_eq!(untwisted, unitary_adjoint_imprimitive(&input, PlaceType::Split, true).unwrap());
        let inert = UnitaryAdjointInput::NonSplit(sd.clone());
        let ad = unitary_adjoint_imprimitive(&inert, PlaceType::Inert, false).unwrap();
        let adx = unitary_adjoint_imprimitive(&inert, PlaceType::Inert, true).unwrap();
        let plus = asai_factor(&sd, PlaceType::Inert, AsaiSign::Plus, None).unwrap();
        let minus = asai_factor(&sd, PlaceType::Inert, AsaiSign::Minus, None).unwrap();
        let both = plus.mul(&minus).unwrap();
        assert!(both.div_exact(&ad.mul(&adx).unwrap()).is_ok());
        let other = SatakeData::unramified(5, ints(&[2, 3])).unwrap();
        let bad = UnitaryAdjointInput::Split(other.clone(), other);
        assert!(unitary_adjoint_imprimitive(&bad, PlaceType::Split, false).is_err());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(evaluate(&lin(5, int(6)), 1), FactorValue::Value(int(-5)));
        assert_eq!(evaluate(&lin(5, int(5)), 1), FactorValue::Pole);
        assert_eq!(evaluate(&EulerFactor::one(5), 3), FactorValue::Value(int(1)));
    }

    #[test]
    fn division_rejects_remainders() {
        let p = poly(5, &ints(&[1, -3, 2]));
        assert!(p.div_exact(&lin(5, int(1))).is_ok());
        assert_eq!(p.div_exact(&lin(5, int(3))), Err(Error::InexactDivision));
    }
}
