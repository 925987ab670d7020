//! Single-operation dispatch for `autoloc compute`.
//!
//! A request is a JSON object with an `"op"` field naming the operation and
//! its inputs alongside. The response is `{"op", "inputs", "output"}`.

use autoloc_core::congalg::{self, Eigensystem, HeckeModule, Sign, Verdict};
use autoloc_core::lfactors::{self, AsaiSign, UnitaryAdjointInput};
use autoloc_core::repmodels::{self, ActionVariant, TensorInvolution, WeightTriple};
use autoloc_core::satake::{self, BaseChange};
use autoloc_core::symfunc::{self, DominantWeight};
use autoloc_core::whittaker;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::json::*;

fn parse<T: DeserializeOwned>(op: &str, v: &Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(v).map_err(|e| CliError::Schema {
        path: format!("{}.{}", op, e.path()),
        message: e.inner().to_string(),
    })
}

type Handler = fn(&str, &Value) -> Result<Value, CliError>;

macro_rules! handlers {
    ($($name:literal => $f:ident),* $(,)?) => {
        const OPS: &[(&str, Handler)] = &[$(($name, $f)),*];
    };
}

handlers! {
    "schur" => schur,
    "schur_laurent" => schur_laurent,
    "bialternant" => bialternant,
    "elementary" => elementary,
    "complete" => complete,
    "partitions" => partitions,
    "cauchy_series" => cauchy_series,
    "cauchy_product_series" => cauchy_product_series,
    "littlewood_even_series" => littlewood_even_series,
    "littlewood_product_series" => littlewood_product_series,
    "modulus_half" => modulus_half,
    "hecke_eigenvalue" => hecke_eigenvalue,
    "bc_local" => bc_local,
    "sbc_local_split" => sbc_local_split,
    "verify_theta_bc" => verify_theta_bc,
    "verify_square_elementary_identity" => verify_square_elementary_identity,
    "standard_factor" => standard_factor,
    "rankin_selberg_imprimitive" => rankin_selberg_imprimitive,
    "adjoint_factor" => adjoint_factor,
    "asai_factor" => asai_factor,
    "asai_imprimitive" => asai_imprimitive,
    "unitary_adjoint_imprimitive" => unitary_adjoint_imprimitive,
    "evaluate" => evaluate,
    "series" => series,
    "essential_value" => essential_value,
    "spherical_value" => spherical_value,
    "transposed_normalizer" => transposed_normalizer,
    "pairing_series" => pairing_series,
    "transposed_pairing_series" => transposed_pairing_series,
    "asai_ramified_zeta_series" => asai_ramified_zeta_series,
    "split_spectrum" => split_spectrum,
    "congruence_number" => congruence_number,
    "congruence_exists" => congruence_exists,
    "congruence_module_divisors" => congruence_module_divisors,
    "lambda_rank" => lambda_rank,
    "transfer_congruence" => transfer_congruence,
    "involution_parts" => involution_parts,
    "verify_pairing_lemma" => verify_pairing_lemma,
    "verify_lf_lemma" => verify_lf_lemma,
    "transfer_dual_forms" => transfer_dual_forms,
    "dimension" => dimension,
    "contraction" => contraction,
    "kernel_basis" => kernel_basis,
    "pair" => pair,
    "vee" => vee,
    "act" => act,
    "highest_weight_pairing" => highest_weight_pairing,
    "gram_divisors" => gram_divisors,
    "tensor_involution" => tensor_involution,
}

pub fn operation_names() -> impl Iterator<Item = &'static str> {
    OPS.iter().map(|(n, _)| *n)
}

/// Runs one request and wraps the result with the operation name and inputs.
pub fn compute(request: &Value) -> Result<Value, CliError> {
    let obj = request.as_object().ok_or_else(|| CliError::Schema { path: ".".into(), message: "request must be a JSON object".into() })?;
    let op = match obj.get("op") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(CliError::Schema { path: "op".into(), message: "must be a string".into() }),
        None => return Err(CliError::Schema { path: "op".into(), message: "missing field".into() }),
    };
    let (_, handler) = OPS.iter().find(|(n, _)| *n == op).ok_or_else(|| CliError::UnknownOperation(op.to_string()))?;
    let inputs: Map<String, Value> = obj.iter().filter(|(k, _)| *k != "op").map(|(k, v)| (k.clone(), v.clone())).collect();
    let inputs = Value::Object(inputs);
    let output = handler(op, &inputs)?;
    Ok(json!({ "op": op, "inputs": inputs, "output": output }))
}

fn weight(w: (u32, u32, i64)) -> WeightTriple {
    WeightTriple::new(w.0, w.1, w.2)
}

fn dominant(parts: Vec<i64>) -> Result<DominantWeight, CliError> {
    Ok(DominantWeight::new(parts)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchurReq {
    lambda: Vec<i64>,
    xs: Vec<Q>,
}

fn schur(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SchurReq = parse(op, v)?;
    Ok(json!({ "value": q(&symfunc::schur(&dominant(r.lambda)?, &unwrap_qs(&r.xs))?) }))
}

fn schur_laurent(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SchurReq = parse(op, v)?;
    Ok(json!({ "value": q(&symfunc::schur_laurent(&dominant(r.lambda)?, &unwrap_qs(&r.xs))?) }))
}

fn bialternant(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SchurReq = parse(op, v)?;
    Ok(json!({ "value": q(&symfunc::bialternant(&dominant(r.lambda)?, &unwrap_qs(&r.xs))?) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexedReq {
    k: usize,
    xs: Vec<Q>,
}

fn elementary(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: IndexedReq = parse(op, v)?;
    Ok(json!({ "value": q(&symfunc::elementary(r.k, &unwrap_qs(&r.xs))) }))
}

fn complete(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: IndexedReq = parse(op, v)?;
    Ok(json!({ "value": q(&symfunc::complete(r.k, &unwrap_qs(&r.xs))) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionsReq {
    d: usize,
    max_len: usize,
}

fn partitions(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PartitionsReq = parse(op, v)?;
    let all = symfunc::partitions(r.d, r.max_len);
    Ok(json!({ "partitions": all.iter().map(|w| w.parts().to_vec()).collect::<Vec<_>>() }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CauchyReq {
    xs: Vec<Q>,
    ys: Vec<Q>,
    #[serde(default)]
    max_length: Option<usize>,
    max_degree: usize,
}

fn cauchy_series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: CauchyReq = parse(op, v)?;
    let s = symfunc::cauchy_series(&unwrap_qs(&r.xs), &unwrap_qs(&r.ys), r.max_length, r.max_degree);
    Ok(json!({ "series": series_json(&s) }))
}

fn cauchy_product_series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: CauchyReq = parse(op, v)?;
    let s = symfunc::cauchy_product_series(&unwrap_qs(&r.xs), &unwrap_qs(&r.ys), r.max_degree);
    Ok(json!({ "series": series_json(&s) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LittlewoodReq {
    xs: Vec<Q>,
    max_degree: usize,
}

fn littlewood_even_series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: LittlewoodReq = parse(op, v)?;
    Ok(json!({ "series": series_json(&symfunc::littlewood_even_series(&unwrap_qs(&r.xs), r.max_degree)) }))
}

fn littlewood_product_series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: LittlewoodReq = parse(op, v)?;
    Ok(json!({ "series": series_json(&symfunc::littlewood_product_series(&unwrap_qs(&r.xs), r.max_degree)) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModulusReq {
    n: usize,
    q: u64,
    f: Vec<i64>,
}

fn modulus_half(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: ModulusReq = parse(op, v)?;
    Ok(qhalf_json(&satake::modulus_half(r.n, r.q, &r.f)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HeckeReq {
    satake: SatakeJson,
    i: usize,
}

fn hecke_eigenvalue(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: HeckeReq = parse(op, v)?;
    Ok(qhalf_json(&satake::hecke_eigenvalue(&r.satake.to_core()?, r.i)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaceReq {
    satake: SatakeJson,
    place: PlaceJson,
}

fn bc_local(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PlaceReq = parse(op, v)?;
    Ok(match satake::bc_local(&r.satake.to_core()?, r.place.into())? {
        BaseChange::Pair(a, b) => json!({ "pair": [satake_json(&a), satake_json(&b)] }),
        BaseChange::Single(a) => json!({ "single": satake_json(&a) }),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SatakeReq {
    satake: SatakeJson,
}

fn sbc_local_split(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SatakeReq = parse(op, v)?;
    let (a, b) = satake::sbc_local_split(&r.satake.to_core()?);
    Ok(json!({ "pair": [satake_json(&a), satake_json(&b)] }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaReq {
    n: usize,
    i: usize,
    satake: SatakeJson,
    q_v: u64,
}

fn verify_theta_bc(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: ThetaReq = parse(op, v)?;
    let rep = satake::verify_theta_bc(r.n, r.i, &r.satake.to_core()?, r.q_v)?;
    Ok(json!({ "holds": rep.holds, "lhs": qhalf_json(&rep.lhs), "rhs": qhalf_json(&rep.rhs) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RankReq {
    n: usize,
}

fn verify_square_elementary_identity(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: RankReq = parse(op, v)?;
    Ok(json!({ "holds": satake::verify_square_elementary_identity(r.n) }))
}

fn standard_factor(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SatakeReq = parse(op, v)?;
    Ok(factor_json(&lfactors::standard_factor(&r.satake.to_core()?)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairReq {
    satake: SatakeJson,
    other: SatakeJson,
}

fn rankin_selberg_imprimitive(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PairReq = parse(op, v)?;
    Ok(factor_json(&lfactors::rankin_selberg_imprimitive(&r.satake.to_core()?, &r.other.to_core()?)?))
}

fn adjoint_factor(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SatakeReq = parse(op, v)?;
    Ok(factor_json(&lfactors::adjoint_factor(&r.satake.to_core()?)?))
}

#[derive(Clone, Copy, Deserialize)]
enum SignJson {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AsaiReq {
    satake: SatakeJson,
    place: PlaceJson,
    sign: SignJson,
    #[serde(default)]
    partner: Option<SatakeJson>,
}

fn asai_parts(r: &AsaiReq) -> Result<(autoloc_core::satake::SatakeData, Option<autoloc_core::satake::SatakeData>, AsaiSign), CliError> {
    let partner = r.partner.as_ref().map(SatakeJson::to_core).transpose()?;
    let sign = match r.sign {
        SignJson::Plus => AsaiSign::Plus,
        SignJson::Minus => AsaiSign::Minus,
    };
    Ok((r.satake.to_core()?, partner, sign))
}

fn asai_factor(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: AsaiReq = parse(op, v)?;
    let (sd, partner, sign) = asai_parts(&r)?;
    Ok(factor_json(&lfactors::asai_factor(&sd, r.place.into(), sign, partner.as_ref())?))
}

fn asai_imprimitive(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: AsaiReq = parse(op, v)?;
    let (sd, partner, sign) = asai_parts(&r)?;
    Ok(factor_json(&lfactors::asai_imprimitive(&sd, r.place.into(), sign, partner.as_ref())?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitaryAdjointReq {
    satake: SatakeJson,
    #[serde(default)]
    partner: Option<SatakeJson>,
    place: PlaceJson,
    twisted: bool,
}

fn unitary_adjoint_imprimitive(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: UnitaryAdjointReq = parse(op, v)?;
    let sd = r.satake.to_core()?;
    let input = match &r.partner {
        Some(p) => UnitaryAdjointInput::Split(sd, p.to_core()?),
        None => UnitaryAdjointInput::NonSplit(sd),
    };
    Ok(factor_json(&lfactors::unitary_adjoint_imprimitive(&input, r.place.into(), r.twisted)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateReq {
    factor: EulerFactorJson,
    s: i64,
}

fn evaluate(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: EvaluateReq = parse(op, v)?;
    Ok(factor_value_json(&lfactors::evaluate(&r.factor.to_core()?, r.s)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesReq {
    factor: EulerFactorJson,
    max_degree: usize,
}

fn series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SeriesReq = parse(op, v)?;
    Ok(json!({ "series": series_json(&r.factor.to_core()?.series(r.max_degree)) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EssentialReq {
    satake: SatakeJson,
    f: Vec<i64>,
}

fn essential_value(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: EssentialReq = parse(op, v)?;
    Ok(qhalf_json(&whittaker::essential_value(&r.satake.to_core()?, &r.f)?))
}

fn spherical_value(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: EssentialReq = parse(op, v)?;
    Ok(qhalf_json(&whittaker::spherical_value(&r.satake.to_core()?, &r.f)?))
}

fn transposed_normalizer(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: SatakeReq = parse(op, v)?;
    Ok(qhalf_json(&whittaker::transposed_normalizer(&r.satake.to_core()?)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairingReq {
    satake: SatakeJson,
    dual: SatakeJson,
    max_degree: usize,
}

fn pairing_series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PairingReq = parse(op, v)?;
    let s = whittaker::pairing_series(&r.satake.to_core()?, &r.dual.to_core()?, r.max_degree)?;
    Ok(json!({ "series": series_json(&s) }))
}

fn transposed_pairing_series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PairingReq = parse(op, v)?;
    let (a, b) = (r.satake.to_core()?, r.dual.to_core()?);
    let s = whittaker::transposed_pairing_series(&a, &b, r.max_degree)?;
    let mut out = json!({ "series": series_json(&s) });
    if a.n() != 3 {
        out["note"] = json!("general-n criterion r = n - 1");
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZetaReq {
    satake: SatakeJson,
    max_degree: usize,
}

fn asai_ramified_zeta_series(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: ZetaReq = parse(op, v)?;
    Ok(json!({ "series": series_json(&whittaker::asai_ramified_zeta_series(&r.satake.to_core()?, r.max_degree)?) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraReq {
    algebra: AlgebraJson,
}

fn split_spectrum(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: AlgebraReq = parse(op, v)?;
    let t = r.algebra.to_core()?;
    let spectrum = congalg::spectrum_with_idempotents(&t)?;
    let out: Vec<Value> =
        spectrum.iter().map(|(l, e)| json!({ "eigensystem": eigensystem_json(l), "idempotent": qs(e) })).collect();
    Ok(json!({ "spectrum": out }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaReq {
    algebra: AlgebraJson,
    lambda: Vec<Q>,
}

fn eigensystem(t: &autoloc_core::congalg::DvrAlgebra, values: &[Q]) -> Result<Eigensystem, CliError> {
    let lam = Eigensystem::new(unwrap_qs(values));
    if !t.is_eigensystem(&lam) {
        return Err(autoloc_core::Error::InvalidInput("lambda is not an algebra morphism".into()).into());
    }
    Ok(lam)
}

fn congruence_number(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: LambdaReq = parse(op, v)?;
    let t = r.algebra.to_core()?;
    let lam = eigensystem(&t, &r.lambda)?;
    Ok(json!({ "exponent": congalg::congruence_number(&t, &lam)? }))
}

fn congruence_exists(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: LambdaReq = parse(op, v)?;
    let t = r.algebra.to_core()?;
    let lam = eigensystem(&t, &r.lambda)?;
    Ok(json!({ "exists": congalg::congruence_exists(&t, &lam)? }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleReq {
    algebra: AlgebraJson,
    lambda: Vec<Q>,
    module: ModuleJson,
}

fn module_parts(r: &ModuleReq) -> Result<(autoloc_core::congalg::DvrAlgebra, Eigensystem, HeckeModule), CliError> {
    let t = r.algebra.to_core()?;
    let lam = eigensystem(&t, &r.lambda)?;
    let m = r.module.to_core(&t)?;
    Ok((t, lam, m))
}

fn congruence_module_divisors(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: ModuleReq = parse(op, v)?;
    let (t, lam, m) = module_parts(&r)?;
    Ok(json!({ "divisors": congalg::congruence_module_divisors(&t, &lam, &m)? }))
}

fn lambda_rank(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: ModuleReq = parse(op, v)?;
    let (t, lam, m) = module_parts(&r)?;
    Ok(json!({ "rank": congalg::lambda_rank(&t, &lam, &m)? }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TransferReq {
    transfer: TransferJson,
    lambda: Vec<Q>,
    module: ModuleJson,
}

fn transfer_congruence(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: TransferReq = parse(op, v)?;
    let td = r.transfer.to_core()?;
    let lam = eigensystem(td.target(), &r.lambda)?;
    let m = r.module.to_core(td.source())?;
    let ex = congalg::transfer_congruence(&td, &lam, &m)?;
    Ok(json!({ "total": ex.total, "pushforward": ex.pushforward, "transfer": ex.transfer }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvolutionReq {
    algebra: AlgebraJson,
    lambda: Vec<Q>,
    module: ModuleJson,
    involution: InvolutionJson,
}

fn involution_parts(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: InvolutionReq = parse(op, v)?;
    let t = r.algebra.to_core()?;
    let lam = eigensystem(&t, &r.lambda)?;
    let m = r.module.to_core(&t)?;
    let inv = r.involution.to_core(&t, &m)?;
    let (plus, minus) = congalg::involution_parts(&t, &lam, &m, &inv)?;
    Ok(json!({ "plus": plus, "minus": minus }))
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Pass => json!("pass"),
        Verdict::Fail => json!("fail"),
        Verdict::PreconditionSkip(why) => json!({ "precondition-skip": why }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairingLemmaReq {
    algebra: AlgebraJson,
    lambda: Vec<Q>,
    m: ModuleJson,
    n: ModuleJson,
    pairing: MatrixJson,
    inv_m: InvolutionJson,
    inv_n: InvolutionJson,
}

fn verify_pairing_lemma(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PairingLemmaReq = parse(op, v)?;
    let t = r.algebra.to_core()?;
    let lam = eigensystem(&t, &r.lambda)?;
    let m = r.m.to_core(&t)?;
    let n = r.n.to_core(&t)?;
    let g = matrix_from_json(&r.pairing)?;
    let rep = congalg::verify_pairing_lemma(&t, &lam, &m, &n, &g, &r.inv_m.to_core_unchecked()?, &r.inv_n.to_core_unchecked()?)?;
    Ok(json!({
        "verdict": verdict_json(&rep.verdict),
        "eta_m": rep.eta_m,
        "eta_n": rep.eta_n,
        "pairing_valuations": rep.pairing_valuations,
    }))
}

fn sign(s: SignJson) -> Sign {
    match s {
        SignJson::Plus => Sign::Plus,
        SignJson::Minus => Sign::Minus,
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LfLemmaReq {
    transfer: TransferJson,
    lambda: Vec<Q>,
    module: ModuleJson,
    involution: InvolutionJson,
    sign: SignJson,
    form: Vec<Q>,
}

fn verify_lf_lemma(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: LfLemmaReq = parse(op, v)?;
    let td = r.transfer.to_core()?;
    let lam = eigensystem(td.target(), &r.lambda)?;
    let m = r.module.to_core(td.source())?;
    let inv = r.involution.to_core_unchecked()?;
    let rep = congalg::verify_lf_lemma(&td, &lam, &m, &inv, sign(r.sign), &unwrap_qs(&r.form))?;
    Ok(json!({
        "verdict": verdict_json(&rep.verdict),
        "bound": rep.bound,
        "value_valuation": rep.value_valuation,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DualFormsReq {
    transfer: TransferJson,
    module: ModuleJson,
    involution: InvolutionJson,
    sign: SignJson,
}

fn transfer_dual_forms(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: DualFormsReq = parse(op, v)?;
    let td = r.transfer.to_core()?;
    let m = r.module.to_core(td.source())?;
    let inv = r.involution.to_core(td.source(), &m)?;
    let b = congalg::transfer_dual_forms(&td, &m, &inv, sign(r.sign))?;
    Ok(json!({ "forms": b.columns().iter().map(|c| qs(c)).collect::<Vec<_>>() }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightReq {
    weight: (u32, u32, i64),
}

fn dimension(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: WeightReq = parse(op, v)?;
    Ok(json!({ "dimension": weight(r.weight).dimension() }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyReq {
    poly: PolynomialJson,
}

fn contraction(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PolyReq = parse(op, v)?;
    Ok(json!({ "poly": polynomial_json(&repmodels::contraction(&r.poly.to_core()?)) }))
}

fn kernel_basis(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: WeightReq = parse(op, v)?;
    let b = repmodels::kernel_basis(weight(r.weight));
    Ok(json!({ "basis": b.iter().map(polynomial_json).collect::<Vec<_>>() }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoPolyReq {
    p: PolynomialJson,
    q: PolynomialJson,
}

fn pair(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: TwoPolyReq = parse(op, v)?;
    Ok(json!({ "value": q(&repmodels::pair(&r.p.to_core()?, &r.q.to_core()?)?) }))
}

fn vee(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: PolyReq = parse(op, v)?;
    Ok(json!({ "poly": polynomial_json(&repmodels::vee(&r.poly.to_core()?)) }))
}

#[derive(Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum VariantJson {
    Standard,
    Dual,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActReq {
    g: MatrixJson,
    poly: PolynomialJson,
    #[serde(default = "standard_variant")]
    variant: VariantJson,
}

fn standard_variant() -> VariantJson {
    VariantJson::Standard
}

fn act(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: ActReq = parse(op, v)?;
    let variant = match r.variant {
        VariantJson::Standard => ActionVariant::Standard,
        VariantJson::Dual => ActionVariant::Dual,
    };
    let out = repmodels::act(&matrix_from_json(&r.g)?, &r.poly.to_core()?, variant)?;
    Ok(json!({ "poly": polynomial_json(&out) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HighestReq {
    weight: (u32, u32, i64),
    #[serde(default)]
    g: Option<MatrixJson>,
}

fn highest_weight_pairing(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: HighestReq = parse(op, v)?;
    let g = match &r.g {
        Some(g) => matrix_from_json(g)?,
        None => repmodels::longest_weyl_element(),
    };
    Ok(json!({ "value": q(&repmodels::highest_weight_pairing(weight(r.weight), &g)?) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GramReq {
    weight: (u32, u32, i64),
    p: u64,
}

fn gram_divisors(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: GramReq = parse(op, v)?;
    if !autoloc_core::rational::is_prime(r.p) {
        return Err(autoloc_core::Error::InvalidInput(format!("{} is not prime", r.p)).into());
    }
    let divs = repmodels::gram_divisors(weight(r.weight), r.p);
    let degenerate = divs.contains(&i64::MAX);
    let shown: Vec<Value> = divs.iter().map(|&d| if d == i64::MAX { Value::Null } else { json!(d) }).collect();
    Ok(json!({ "divisors": shown, "degenerate": degenerate, "unimodular": divs.iter().all(|&d| d == 0) }))
}

#[derive(Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum InvolutionKind {
    Sigma,
    Vee,
    Epsilon,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorReq {
    kind: InvolutionKind,
    p: PolynomialJson,
    q: PolynomialJson,
}

fn tensor_involution(op: &str, v: &Value) -> Result<Value, CliError> {
    let r: TensorReq = parse(op, v)?;
    let kind = match r.kind {
        InvolutionKind::Sigma => TensorInvolution::Sigma,
        InvolutionKind::Vee => TensorInvolution::Vee,
        InvolutionKind::Epsilon => TensorInvolution::Epsilon,
    };
    let (a, b) = repmodels::tensor_involution(kind, (&r.p.to_core()?, &r.q.to_core()?))?;
    Ok(json!({ "p": polynomial_json(&a), "q": polynomial_json(&b) }))
}
