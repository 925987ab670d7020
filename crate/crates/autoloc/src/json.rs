//! JSON records for the core types.
//!
//! Rationals are `[num, den]` with `den > 0` in lowest terms. Integers that fit
//! in 64 bits are JSON numbers, larger ones decimal strings.

use std::fmt;

use autoloc_core::congalg::{DvrAlgebra, Eigensystem, HeckeModule, SemiLinearInvolution, TransferData};
use autoloc_core::lfactors::{EulerFactor, FactorValue};
use autoloc_core::repmodels::{BiHomPolynomial, WeightTriple};
use autoloc_core::satake::{PlaceType, QHalfValue, SatakeData};
use autoloc_core::{Matrix, Rational, TruncatedSeries};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

/// An arbitrary-size integer on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => match self.0.to_u64() {
                Some(v) => s.serialize_u64(v),
                None => s.serialize_str(&self.0.to_string()),
            },
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        let digits = v.strip_prefix('-').unwrap_or(v);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(E::invalid_value(de::Unexpected::Str(v), &self));
        }
        v.parse::<BigInt>().map(Int).map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// A rational number on the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Int(self.0.numer().clone()))?;
        seq.serialize_element(&Int(self.0.denom().clone()))?;
        seq.end()
    }
}

struct QVisitor;

impl<'de> Visitor<'de> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational [num, den] with den > 0")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Q, A::Error> {
        let num: Int = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
        let den: Int = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
        if seq.next_element::<de::IgnoredAny>()?.is_some() {
            return Err(de::Error::invalid_length(3, &self));
        }
        if !den.0.is_positive() {
            return Err(de::Error::custom("denominator must be positive"));
        }
        Ok(Q(Rational::new(num.0, den.0)))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_seq(QVisitor)
    }
}

pub fn q(x: &Rational) -> Value {
    serde_json::to_value(Q(x.clone())).expect("rationals serialize")
}

pub fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

pub fn unwrap_qs(xs: &[Q]) -> Vec<Rational> {
    xs.iter().map(|x| x.0.clone()).collect()
}

pub type MatrixJson = Vec<Vec<Q>>;

pub fn matrix_from_json(m: &MatrixJson) -> autoloc_core::Result<Matrix> {
    Matrix::from_rows(m.iter().map(|r| unwrap_qs(r)).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| qs(r)).collect())
}

pub fn series_json(s: &TruncatedSeries) -> Value {
    qs(s.coefficients())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatakeJson {
    pub n: usize,
    pub q: u64,
    pub alphas: Vec<Q>,
    #[serde(default)]
    pub conductor: u32,
}

impl SatakeJson {
    pub fn to_core(&self) -> autoloc_core::Result<SatakeData> {
        SatakeData::new(self.n, self.q, unwrap_qs(&self.alphas), self.conductor)
    }

    pub fn from_core(sd: &SatakeData) -> Self {
        SatakeJson { n: sd.n(), q: sd.q(), alphas: sd.alphas().iter().cloned().map(Q).collect(), conductor: sd.conductor() }
    }
}

pub fn satake_json(sd: &SatakeData) -> Value {
    serde_json::to_value(SatakeJson::from_core(sd)).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerFactorJson {
    pub q: u64,
    pub coefficients: Vec<Q>,
}

impl EulerFactorJson {
    pub fn to_core(&self) -> autoloc_core::Result<EulerFactor> {
        EulerFactor::new(self.q, unwrap_qs(&self.coefficients))
    }
}

pub fn factor_json(f: &EulerFactor) -> Value {
    json!({ "q": f.q(), "coefficients": qs(f.coefficients()) })
}

pub fn factor_value_json(v: &FactorValue) -> Value {
    match v {
        FactorValue::Value(x) => json!({ "value": q(x) }),
        FactorValue::Pole => json!({ "pole": true }),
    }
}

/// `rational + half · q^{-1/2}`.
pub fn qhalf_json(v: &QHalfValue) -> Value {
    json!({ "q": v.q(), "rational": q(v.rational_part()), "half": q(v.half_part()) })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceJson {
    Split,
    Inert,
    Ramified,
}

impl From<PlaceJson> for PlaceType {
    fn from(p: PlaceJson) -> Self {
        match p {
            PlaceJson::Split => PlaceType::Split,
            PlaceJson::Inert => PlaceType::Inert,
            PlaceJson::Ramified => PlaceType::Ramified,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub p: u64,
    pub dim: usize,
    pub structure: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
}

impl AlgebraJson {
    pub fn to_core(&self) -> autoloc_core::Result<DvrAlgebra> {
        if self.dim != self.unit.len() {
            return Err(autoloc_core::Error::Dimension(format!("dim {} but unit has {} entries", self.dim, self.unit.len())));
        }
        let structure = self.structure.iter().map(|a| a.iter().map(|b| unwrap_qs(b)).collect()).collect();
        DvrAlgebra::new(self.p, structure, unwrap_qs(&self.unit))
    }

    pub fn from_core(t: &DvrAlgebra) -> Self {
        AlgebraJson {
            p: t.p(),
            dim: t.dim(),
            structure: t
                .structure()
                .iter()
                .map(|a| a.iter().map(|b| b.iter().cloned().map(Q).collect()).collect())
                .collect(),
            unit: t.unit().iter().cloned().map(Q).collect(),
        }
    }
}

pub fn algebra_json(t: &DvrAlgebra) -> Value {
    serde_json::to_value(AlgebraJson::from_core(t)).expect("serializable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub rank: usize,
    pub action: Vec<MatrixJson>,
}

impl ModuleJson {
    pub fn to_core(&self, t: &DvrAlgebra) -> autoloc_core::Result<HeckeModule> {
        let action = self.action.iter().map(matrix_from_json).collect::<autoloc_core::Result<Vec<_>>>()?;
        if action.iter().any(|a| a.rows() != self.rank) {
            return Err(autoloc_core::Error::Dimension(format!("action matrices must be {} x {}", self.rank, self.rank)));
        }
        HeckeModule::new(t, action)
    }
}

pub fn module_json(m: &HeckeModule) -> Value {
    json!({ "rank": m.rank(), "action": m.action().iter().map(matrix_json).collect::<Vec<_>>() })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionJson {
    pub algebra: MatrixJson,
    pub module: MatrixJson,
}

impl InvolutionJson {
    pub fn to_core(&self, t: &DvrAlgebra, m: &HeckeModule) -> autoloc_core::Result<SemiLinearInvolution> {
        SemiLinearInvolution::new(t, m, matrix_from_json(&self.algebra)?, matrix_from_json(&self.module)?)
    }

    /// Without the semi-linearity checks, for callers that report failed hypotheses themselves.
    pub fn to_core_unchecked(&self) -> autoloc_core::Result<SemiLinearInvolution> {
        Ok(SemiLinearInvolution::new_unchecked(matrix_from_json(&self.algebra)?, matrix_from_json(&self.module)?))
    }
}

pub fn involution_json(inv: &SemiLinearInvolution) -> Value {
    json!({ "algebra": matrix_json(inv.algebra()), "module": matrix_json(inv.module()) })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferJson {
    pub source: AlgebraJson,
    pub target: AlgebraJson,
    pub theta: MatrixJson,
}

impl TransferJson {
    pub fn to_core(&self) -> autoloc_core::Result<TransferData> {
        TransferData::new(self.source.to_core()?, self.target.to_core()?, matrix_from_json(&self.theta)?)
    }
}

pub fn transfer_json(td: &TransferData) -> Value {
    json!({ "source": algebra_json(td.source()), "target": algebra_json(td.target()), "theta": matrix_json(td.theta()) })
}

pub fn eigensystem_json(l: &Eigensystem) -> Value {
    qs(l.values())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub x: [u32; 3],
    pub a: [u32; 3],
    pub coef: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub weight: (u32, u32, i64),
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn to_core(&self) -> autoloc_core::Result<BiHomPolynomial> {
        let (a, b, v) = self.weight;
        BiHomPolynomial::from_terms(WeightTriple::new(a, b, v), self.terms.iter().map(|t| ((t.x, t.a), t.coef.0.clone())))
    }

    pub fn from_core(p: &BiHomPolynomial) -> Self {
        let w = p.weight();
        PolynomialJson {
            weight: (w.n_plus, w.n_minus, w.v),
            terms: p
                .terms()
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((x, a), c)| TermJson { x: *x, a: *a, coef: Q(c.clone()) })
                .collect(),
        }
    }
}

pub fn polynomial_json(p: &BiHomPolynomial) -> Value {
    serde_json::to_value(PolynomialJson::from_core(p)).expect("serializable")
}

pub fn weight_json(w: WeightTriple) -> Value {
    json!([w.n_plus, w.n_minus, w.v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use autoloc_core::rational::{int, rat};

    #[test]
    fn rationals_round_trip() {
        for x in [rat(-3, 4), int(0), int(7)] {
            let s = serde_json::to_string(&Q(x.clone())).unwrap();
            assert_eq!(serde_json::from_str::<Q>(&s).unwrap().0, x);
        }
        assert_eq!(serde_json::to_string(&Q(rat(6, -4))).unwrap(), "[-3,2]");
        let huge = Rational::from_integer(BigInt::from(10).pow(30));
        let s = serde_json::to_string(&Q(huge.clone())).unwrap();
        assert_eq!(s, "[\"1000000000000000000000000000000\",1]");
        assert_eq!(serde_json::from_str::<Q>(&s).unwrap().0, huge);
    }

    #[test]
    fn rejects_bad_rationals() {
        for bad in ["[1,0]", "[1,-2]", "[1]", "[1,2,3]", "[\"x\",1]", "3"] {
            assert!(serde_json::from_str::<Q>(bad).is_err(), "{}", bad);
        }
        assert_eq!(serde_json::from_str::<Q>("[4,6]").unwrap().0, rat(2, 3));
    }

    #[test]
    fn polynomial_round_trip() {
        let w = WeightTriple::new(1, 1, 0);
        let p = BiHomPolynomial::highest_weight_vector(w);
        let j = polynomial_json(&p);
        assert_eq!(j, json!({"weight": [1, 1, 0], "terms": [{"x": [1, 0, 0], "a": [0, 0, 1], "coef": [1, 1]}]}));
        let back: PolynomialJson = serde_json::from_value(j).unwrap();
        assert_eq!(back.to_core().unwrap(), p);
    }
}
