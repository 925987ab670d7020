//! Verification suites run by `autoloc check`.

use autoloc_core::congalg::{self, HeckeModule, Sign};
use autoloc_core::lfactors::{self, AsaiSign, EulerFactor, UnitaryAdjointInput};
use autoloc_core::rational::{int, is_prime, powi, rat, valuation};
use autoloc_core::repmodels::{self, ActionVariant, BiHomPolynomial, WeightTriple};
use autoloc_core::satake::{self, modulus_half, PlaceType, QHalfValue, SatakeData};
use autoloc_core::symfunc::{self, DominantWeight};
use autoloc_core::{whittaker, Matrix, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::gen;
use crate::json::*;
use crate::report::{Check, Record, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub suite: String,
    pub max_degree: usize,
    pub seed: u64,
    pub instance_count: usize,
    pub primes: Vec<u64>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { suite: String::new(), max_degree: 12, seed: 0, instance_count: 100, primes: vec![3, 5, 7] }
    }
}

type Fixed = fn(&CheckConfig) -> Vec<Check>;
type Instance = fn(&CheckConfig, &mut ChaCha8Rng) -> Vec<Check>;

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    fixed: Option<Fixed>,
    instance: Option<Instance>,
    odd_primes: bool,
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "schur",
        description: "Jacobi-Trudi against the bialternant, Laurent shifts, homogeneity, zero padding",
        fixed: None,
        instance: Some(schur_instance),
        odd_primes: false,
    },
    Suite {
        name: "cauchy",
        description: "Cauchy and even Littlewood sums against their product expansions",
        fixed: None,
        instance: Some(cauchy_instance),
        odd_primes: false,
    },
    Suite {
        name: "theta-bc",
        description: "inert base change transfer of Hecke eigenvalues and the squared elementary identity",
        fixed: Some(theta_fixed),
        instance: Some(theta_instance),
        odd_primes: false,
    },
    Suite {
        name: "asai",
        description: "Asai zeta series, inert Asai products and unitary adjoint quotients",
        fixed: None,
        instance: Some(asai_instance),
        odd_primes: false,
    },
    Suite {
        name: "essential-pairing",
        description: "pairing of essential vectors against the imprimitive Rankin-Selberg series",
        fixed: None,
        instance: Some(essential_pairing_instance),
        odd_primes: false,
    },
    Suite {
        name: "transposed-pairing",
        description: "pairing with the transposed essential vector: L-series when r = n-1, zero otherwise",
        fixed: None,
        instance: Some(transposed_pairing_instance),
        odd_primes: false,
    },
    Suite {
        name: "newvector",
        description: "essential vector normalization, dominance vanishing, padded Schur values, transposed normalizer",
        fixed: None,
        instance: Some(newvector_instance),
        odd_primes: false,
    },
    Suite {
        name: "congruence",
        description: "congruence criterion, cyclicity of the regular module, basis independence",
        fixed: None,
        instance: Some(congruence_instance),
        odd_primes: true,
    },
    Suite {
        name: "transfer",
        description: "additivity of congruence exponents across a transfer",
        fixed: Some(transfer_fixed),
        instance: Some(transfer_instance),
        odd_primes: true,
    },
    Suite {
        name: "involution",
        description: "plus and minus parts of congruence modules add up",
        fixed: None,
        instance: Some(involution_instance),
        odd_primes: true,
    },
    Suite {
        name: "pairing-lemma",
        description: "plus/minus exchange of congruence exponents under an anti-equivariant perfect pairing",
        fixed: None,
        instance: Some(pairing_lemma_instance),
        odd_primes: true,
    },
    Suite {
        name: "lf-lemma",
        description: "valuation bound for linear forms factoring through the transfer",
        fixed: None,
        instance: Some(lf_lemma_instance),
        odd_primes: true,
    },
    Suite {
        name: "repmodels",
        description: "kernel dimensions, equivariance of contraction and pairing, highest weight pairing constants",
        fixed: Some(repmodels_fixed),
        instance: Some(repmodels_instance),
        odd_primes: false,
    },
    Suite {
        name: "gram-p-small",
        description: "perfectness of the integral pairing for every p > max(n+, n-), n+, n- <= 4",
        fixed: Some(gram_fixed),
        instance: None,
        odd_primes: false,
    },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

/// Runs the configured suite. Independent instances run in parallel and are
/// assembled in instance order, so the report depends only on the configuration.
pub fn run_suite(cfg: &CheckConfig) -> Result<Report, CliError> {
    let suite = find_suite(&cfg.suite).ok_or_else(|| CliError::UnknownSuite(cfg.suite.clone()))?;
    if cfg.instance_count == 0 {
        return Err(CliError::Usage("instance count must be at least 1".into()));
    }
    if cfg.primes.is_empty() {
        return Err(CliError::Usage("the prime set is empty".into()));
    }
    if let Some(p) = cfg.primes.iter().find(|&&p| !is_prime(p)) {
        return Err(CliError::Usage(format!("{} is not prime", p)));
    }
    let mut cfg = cfg.clone();
    if suite.odd_primes {
        cfg.primes.retain(|&p| p != 2);
        if cfg.primes.is_empty() {
            return Err(CliError::Usage(format!("suite {} needs an odd prime", suite.name)));
        }
    }
    let mut records: Vec<Record> = match suite.fixed {
        Some(f) => f(&cfg).into_iter().map(|c| Record::from_check(c, None, None)).collect(),
        None => Vec::new(),
    };
    if let Some(f) = suite.instance {
        let per_instance: Vec<Vec<Record>> = (0..cfg.instance_count)
            .into_par_iter()
            .map(|i| {
                let mut rng = gen::instance_rng(cfg.seed, suite.name, i);
                f(&cfg, &mut rng).into_iter().map(|c| Record::from_check(c, Some(i), Some(cfg.seed))).collect()
            })
            .collect();
        records.extend(per_instance.into_iter().flatten());
    }
    Ok(Report::new(suite.name, cfg.seed, cfg.max_degree, cfg.instance_count, cfg.primes.clone(), records))
}

/// Wraps a fallible comparison; computation errors become failures with the message as reason.
fn eval(name: impl Into<String>, inputs: Value, f: impl FnOnce() -> autoloc_core::Result<(bool, Value)>) -> Check {
    let name = name.into();
    match f() {
        Ok((ok, w)) => Check::new(name, inputs, ok, w),
        Err(e) => Check::error(name, inputs, e),
    }
}

fn series_pair(lhs: &autoloc_core::TruncatedSeries, rhs: &autoloc_core::TruncatedSeries) -> (bool, Value) {
    (lhs == rhs, json!({ "lhs": series_json(lhs), "rhs": series_json(rhs) }))
}

fn distinct(xs: &[Rational]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| xs[i] != xs[j]))
}

fn schur_instance(_: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let n = rng.gen_range(1..=4);
    let lam = gen::partition(rng, n, 4);
    let xs = gen::nonzero_rationals(rng, n, 9);
    let c = rng.gen_range(-2..=2i64);
    let t = gen::nonzero_rational(rng, 5);
    let inputs = json!({ "lambda": lam, "xs": qs(&xs), "shift": c, "scale": q(&t) });
    let w = DominantWeight::partition(lam.clone()).expect("partition");
    let mut out = Vec::new();
    if distinct(&xs) {
        out.push(eval("schur/jacobi-trudi-vs-bialternant", inputs.clone(), || {
            let a = symfunc::schur(&w, &xs)?;
            let b = symfunc::bialternant(&w, &xs)?;
            Ok((a == b, json!({ "jacobi_trudi": q(&a), "bialternant": q(&b) })))
        }));
    } else {
        out.push(Check::skip("schur/jacobi-trudi-vs-bialternant", inputs.clone(), "parameters are not distinct"));
    }
    out.push(eval("schur/laurent-shift", inputs.clone(), || {
        let shifted = DominantWeight::new(lam.iter().map(|x| x + c).collect())?;
        let lhs = symfunc::schur_laurent(&shifted, &xs)?;
        let prod: Rational = xs.iter().product();
        let rhs = powi(&prod, c) * symfunc::schur(&w, &xs)?;
        Ok((lhs == rhs, json!({ "lhs": q(&lhs), "rhs": q(&rhs) })))
    }));
    out.push(eval("schur/homogeneity", inputs.clone(), || {
        let scaled: Vec<Rational> = xs.iter().map(|x| x * &t).collect();
        let lhs = symfunc::schur(&w, &scaled)?;
        let rhs = powi(&t, w.size()) * symfunc::schur(&w, &xs)?;
        Ok((lhs == rhs, json!({ "lhs": q(&lhs), "rhs": q(&rhs) })))
    }));
    out.push(eval("schur/zero-padding", inputs, || {
        let mut padded = xs.clone();
        padded.push(Rational::zero());
        let lhs = symfunc::schur(&w, &padded)?;
        let rhs = symfunc::schur(&w, &xs)?;
        Ok((lhs == rhs, json!({ "lhs": q(&lhs), "rhs": q(&rhs) })))
    }));
    out
}

fn cauchy_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=4);
    let xs = gen::rationals(rng, n, 9);
    let ys = gen::rationals(rng, m, 9);
    let d = cfg.max_degree;
    let inputs = json!({ "xs": qs(&xs), "ys": qs(&ys), "max_degree": d });
    vec![
        eval("cauchy/sum-vs-product", inputs.clone(), || {
            Ok(series_pair(&symfunc::cauchy_series(&xs, &ys, None, d), &symfunc::cauchy_product_series(&xs, &ys, d)))
        }),
        eval("cauchy/even-littlewood", inputs, || {
            Ok(series_pair(&symfunc::littlewood_even_series(&xs, d), &symfunc::littlewood_product_series(&xs, d)))
        }),
    ]
}

fn theta_fixed(_: &CheckConfig) -> Vec<Check> {
    (1..=5)
        .map(|n| {
            Check::new(format!("theta-bc/square-elementary-identity/n={}", n), json!({ "n": n }), satake::verify_square_elementary_identity(n), Value::Null)
        })
        .collect()
}

fn theta_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let n = rng.gen_range(2..=5);
    let q = *gen::pick(rng, &cfg.primes);
    let sd = gen::unramified(rng, n, q);
    (1..=n)
        .map(|i| {
            let inputs = json!({ "n": n, "i": i, "q_v": q, "satake": satake_json(&sd) });
            eval(format!("theta-bc/eigenvalue/i={}", i), inputs, || {
                let rep = satake::verify_theta_bc(n, i, &sd, q)?;
                Ok((rep.holds, json!({ "lhs": qhalf_json(&rep.lhs), "rhs": qhalf_json(&rep.rhs) })))
            })
        })
        .collect()
}

/// Inverse roots closed under inversion, with `1` added in odd rank.
fn base_change_shaped<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let mut a = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        let b = gen::nonzero_rational(rng, 9);
        a.push(b.recip());
        a.push(b);
    }
    if n % 2 == 1 {
        a.push(Rational::one());
    }
    a
}

fn asai_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let n = rng.gen_range(1..=4);
    let q = *gen::pick(rng, &cfg.primes);
    let d = cfg.max_degree;
    let sd = gen::unramified(rng, n, q);
    let shaped = SatakeData::unramified(q, base_change_shaped(rng, n)).expect("nonzero roots");
    let inputs = json!({ "satake": satake_json(&sd), "max_degree": d });
    let mut out = vec![
        eval("asai/zeta-vs-ramified-factor", inputs.clone(), || {
            let zeta = whittaker::asai_ramified_zeta_series(&sd, d)?;
            let l = lfactors::asai_factor(&sd, PlaceType::Ramified, AsaiSign::Plus, None)?.series(d);
            Ok(series_pair(&zeta, &l))
        }),
        eval("asai/inert-plus-times-minus", inputs.clone(), || {
            let plus = lfactors::asai_factor(&sd, PlaceType::Inert, AsaiSign::Plus, None)?;
            let minus = lfactors::asai_factor(&sd, PlaceType::Inert, AsaiSign::Minus, None)?;
            let lhs = plus.mul(&minus)?;
            let rhs = lfactors::rankin_selberg_imprimitive(&sd, &sd)?.substitute_power(2);
            Ok((lhs == rhs, json!({ "lhs": factor_json(&lhs), "rhs": factor_json(&rhs) })))
        }),
    ];
    for twisted in [false, true] {
        let shaped_inputs = json!({ "satake": satake_json(&shaped), "twisted": twisted });
        out.push(eval(format!("asai/unitary-adjoint-inert/twisted={}", twisted), shaped_inputs, || {
            let sign = AsaiSign::power(if twisted { n + 1 } else { n });
            let chi = if twisted { Rational::one() } else { -Rational::one() };
            let asai = lfactors::asai_factor(&shaped, PlaceType::Inert, sign, None)?;
            let quot = lfactors::unitary_adjoint_imprimitive(&UnitaryAdjointInput::NonSplit(shaped.clone()), PlaceType::Inert, twisted)?;
            let back = quot.mul(&EulerFactor::linear(q, &chi))?;
            Ok((back == asai, json!({ "quotient": factor_json(&quot), "asai": factor_json(&asai) })))
        }));
        let split_inputs = json!({ "satake": satake_json(&sd), "twisted": twisted });
        out.push(eval(format!("asai/unitary-adjoint-split/twisted={}", twisted), split_inputs, || {
            let (a, b) = satake::sbc_local_split(&sd);
            let rs = lfactors::rankin_selberg_imprimitive(&a, &b)?;
            let quot = lfactors::unitary_adjoint_imprimitive(&UnitaryAdjointInput::Split(a, b), PlaceType::Split, twisted)?;
            let back = quot.mul(&EulerFactor::linear(q, &Rational::one()))?;
            Ok((back == rs, json!({ "quotient": factor_json(&quot), "rankin_selberg": factor_json(&rs) })))
        }));
    }
    out
}

fn essential_pairing_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let n = rng.gen_range(2..=4);
    let q = *gen::pick(rng, &cfg.primes);
    let (r1, r2) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let a = gen::ramified(rng, n, r1, q);
    let b = gen::ramified(rng, n, r2, q);
    let d = cfg.max_degree;
    let inputs = json!({ "satake": satake_json(&a), "dual": satake_json(&b), "max_degree": d });
    vec![eval("essential-pairing/series-vs-rankin-selberg", inputs, || {
        let lhs = whittaker::pairing_series(&a, &b, d)?;
        let rhs = lfactors::rankin_selberg_imprimitive(&a, &b)?.series(d);
        Ok(series_pair(&lhs, &rhs))
    })]
}

fn transposed_pairing_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let n = rng.gen_range(2..=4);
    let q = *gen::pick(rng, &cfg.primes);
    let r1 = rng.gen_range(0..n);
    let r2 = if rng.gen_bool(0.5) { n - 1 } else { rng.gen_range(0..n) };
    let a = gen::ramified(rng, n, r1, q);
    let b = gen::ramified(rng, n, r2, q);
    let d = cfg.max_degree;
    let inputs = json!({ "satake": satake_json(&a), "dual": satake_json(&b), "max_degree": d });
    let check = eval("transposed-pairing/dichotomy", inputs, || {
        let lhs = whittaker::transposed_pairing_series(&a, &b, d)?;
        if r2 + 1 == n {
            let rhs = lfactors::rankin_selberg_imprimitive(&a, &b)?.series(d);
            Ok(series_pair(&lhs, &rhs))
        } else {
            Ok((lhs.is_zero(), json!({ "lhs": series_json(&lhs), "expected": "zero" })))
        }
    });
    if n != 3 {
        vec![check.with_reason("general-n criterion r = n - 1")]
    } else {
        vec![check]
    }
}

fn is_partition(f: &[i64]) -> bool {
    f.windows(2).all(|w| w[0] >= w[1]) && f.iter().all(|&x| x >= 0)
}

fn newvector_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let n = rng.gen_range(2..=4);
    let q = *gen::pick(rng, &cfg.primes);
    let r = rng.gen_range(0..=n);
    let sd = if r == n { gen::unramified(rng, n, q) } else { gen::ramified(rng, n, r, q) };
    let f = gen::partition(rng, n - 1, 4);
    let bad: Vec<i64> = loop {
        let v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=4)).collect();
        if !is_partition(&v) {
            break v;
        }
    };
    let base = json!({ "satake": satake_json(&sd) });
    let mut out = vec![
        eval("newvector/normalization", base.clone(), || {
            let v = whittaker::essential_value(&sd, &vec![0; n - 1])?;
            Ok((v == QHalfValue::one(q), qhalf_json(&v)))
        }),
        eval("newvector/dominance-vanishing", json!({ "satake": satake_json(&sd), "f": bad }), || {
            let v = whittaker::essential_value(&sd, &bad)?;
            Ok((v.is_zero(), qhalf_json(&v)))
        }),
        eval("newvector/padded-schur", json!({ "satake": satake_json(&sd), "f": f }), || {
            let v = whittaker::essential_value(&sd, &f)?;
            let len = f.iter().filter(|&&x| x > 0).count();
            let expect = if len > r {
                QHalfValue::zero(q)
            } else {
                let w = DominantWeight::partition(f[..r.min(n - 1)].to_vec())?;
                let s = if distinct(sd.alphas()) {
                    symfunc::bialternant(&w, sd.alphas())?
                } else {
                    symfunc::schur(&w, sd.alphas())?
                };
                let mut full = f.clone();
                full.push(0);
                modulus_half(n, q, &full).scale(&s)
            };
            Ok((v == expect, json!({ "value": qhalf_json(&v), "expected": qhalf_json(&expect) })))
        }),
    ];
    if r == n {
        let mut full = f.clone();
        full.push(0);
        out.push(eval("newvector/spherical-agrees", json!({ "satake": satake_json(&sd), "f": f }), || {
            let a = whittaker::essential_value(&sd, &f)?;
            let b = whittaker::spherical_value(&sd, &full)?;
            Ok((a == b, json!({ "essential": qhalf_json(&a), "spherical": qhalf_json(&b) })))
        }));
    } else {
        out.push(eval("newvector/transposed-normalizer", base, || {
            let v = whittaker::transposed_normalizer(&sd)?;
            let c = sd.conductor() as i64;
            let expect = if r + 1 == n {
                let mut shift = vec![c; n - 1];
                shift.push(0);
                let prod: Rational = sd.alphas().iter().product();
                modulus_half(n, q, &shift).scale(&powi(&prod, c))
            } else {
                QHalfValue::zero(q)
            };
            let ok = v == expect && (v.is_zero() != (r + 1 == n));
            Ok((ok, json!({ "value": qhalf_json(&v), "expected": qhalf_json(&expect) })))
        }));
    }
    out
}

/// Smallest `k ≥ 0` with `p^k e ∈ T`, read off the idempotent's coordinates.
fn idempotent_exponent(e: &[Rational], p: u64) -> u32 {
    let min = e.iter().filter_map(|x| valuation(x, p)).min().unwrap_or(0);
    (-min).max(0) as u32
}

fn congruence_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let p = *gen::pick(rng, &cfg.primes);
    let d = rng.gen_range(1..=4);
    let t = gen::order(rng, p, d);
    let u = gen::unimodular(rng, d);
    let inputs = json!({ "algebra": algebra_json(&t), "basis_change": matrix_json(&u) });
    let spectrum = match congalg::spectrum_with_idempotents(&t) {
        Ok(s) => s,
        Err(e) => return vec![Check::error("congruence/spectrum", inputs, e)],
    };
    let regular = HeckeModule::regular(&t);
    let mut out = Vec::new();
    for (k, (lam, e)) in spectrum.iter().enumerate() {
        out.push(eval(format!("congruence/criterion/lambda={}", k), inputs.clone(), || {
            let eta = congalg::congruence_number(&t, lam)?;
            let exists = congalg::congruence_exists(&t, lam)?;
            let oracle = idempotent_exponent(e, p);
            Ok((exists == (eta >= 1) && eta == oracle, json!({ "exponent": eta, "exists": exists, "idempotent_exponent": oracle })))
        }));
        out.push(eval(format!("congruence/regular-cyclic/lambda={}", k), inputs.clone(), || {
            let eta = congalg::congruence_number(&t, lam)?;
            let divs = congalg::congruence_module_divisors(&t, lam, &regular)?;
            let expect = if eta == 0 { vec![] } else { vec![eta] };
            Ok((divs == expect, json!({ "divisors": divs, "exponent": eta })))
        }));
        out.push(eval(format!("congruence/basis-change/lambda={}", k), inputs.clone(), || {
            let t2 = t.change_basis(&u)?;
            let a = congalg::congruence_number(&t, lam)?;
            let b = congalg::congruence_number(&t2, &lam.change_basis(&u))?;
            Ok((a == b, json!({ "before": a, "after": b })))
        }));
    }
    out
}

fn transfer_fixed(_: &CheckConfig) -> Vec<Check> {
    let order = |rows: &[&[i64]]| {
        let basis: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        congalg::DvrAlgebra::from_order(3, &basis).expect("an order")
    };
    let src = order(&[&[1, 1, 1], &[0, 3, 0], &[0, 0, 9]]);
    let tgt = order(&[&[1, 1], &[0, 3]]);
    let theta = Matrix::from_rows(vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]).expect("2 x 3");
    let inputs = json!({ "source": algebra_json(&src), "target": algebra_json(&tgt), "theta": matrix_json(&theta), "lambda": [[1, 1], [0, 1]] });
    vec![eval("transfer/worked-example", inputs, || {
        let td = congalg::TransferData::new(src.clone(), tgt, theta)?;
        let lam = congalg::Eigensystem::new(vec![int(1), int(0)]);
        let ex = congalg::transfer_congruence(&td, &lam, &HeckeModule::regular(&src))?;
        let got = (ex.total, ex.pushforward, ex.transfer);
        Ok((got == (2, 0, 2), json!({ "total": got.0, "pushforward": got.1, "transfer": got.2 })))
    })]
}

fn transfer_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let td = gen::transfer(rng, &cfg.primes);
    let m = gen::module(rng, td.source());
    let inputs = json!({ "transfer": transfer_json(&td), "module": module_json(&m) });
    let spectrum = match congalg::split_spectrum(td.target()) {
        Ok(s) => s,
        Err(e) => return vec![Check::error("transfer/spectrum", inputs, e)],
    };
    spectrum.iter()
        .enumerate()
        .map(|(k, lam)| {
            eval(format!("transfer/additivity/lambda={}", k), inputs.clone(), || {
                let ex = congalg::transfer_congruence(&td, lam, &m)?;
                let total: u32 = congalg::congruence_module_divisors(td.source(), &td.pullback(lam), &m)?.iter().sum();
                let ok = ex.total == ex.pushforward + ex.transfer && ex.total == total;
                Ok((ok, json!({ "total": ex.total, "pushforward": ex.pushforward, "transfer": ex.transfer, "fitting": total })))
            })
        })
        .collect()
}

fn involution_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let p = *gen::pick(rng, &cfg.primes);
    let d = rng.gen_range(1..=3);
    let t = gen::order(rng, p, d);
    let base = gen::module(rng, &t);
    let (m, inv) = gen::swap_involution(rng, &t, &base);
    let inputs = json!({ "algebra": algebra_json(&t), "module": module_json(&m), "involution": involution_json(&inv) });
    let spectrum = match congalg::split_spectrum(&t) {
        Ok(s) => s,
        Err(e) => return vec![Check::error("involution/spectrum", inputs, e)],
    };
    spectrum.iter()
        .enumerate()
        .map(|(k, lam)| {
            eval(format!("involution/parts-add-up/lambda={}", k), inputs.clone(), || {
                let (a, b) = congalg::involution_parts(&t, lam, &m, &inv)?;
                let total: u32 = congalg::congruence_module_divisors(&t, lam, &m)?.iter().sum();
                Ok((a + b == total, json!({ "plus": a, "minus": b, "total": total })))
            })
        })
        .collect()
}

fn verdict_check(name: String, inputs: Value, v: &congalg::Verdict, witness: Value) -> Check {
    match v {
        congalg::Verdict::Pass => Check::new(name, inputs, true, witness),
        congalg::Verdict::Fail => Check::new(name, inputs, false, witness),
        congalg::Verdict::PreconditionSkip(why) => Check::skip(name, inputs, why.clone()),
    }
}

fn pairing_lemma_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let inst = gen::pairing_instance(rng, &cfg.primes);
    let inputs = json!({
        "algebra": algebra_json(&inst.t),
        "m": module_json(&inst.m),
        "n": module_json(&inst.n),
        "pairing": matrix_json(&inst.pairing),
        "inv_m": involution_json(&inst.inv_m),
        "inv_n": involution_json(&inst.inv_n),
    });
    let spectrum = match congalg::split_spectrum(&inst.t) {
        Ok(s) => s,
        Err(e) => return vec![Check::error("pairing-lemma/spectrum", inputs, e)],
    };
    spectrum.iter()
        .enumerate()
        .map(|(k, lam)| {
            let name = format!("pairing-lemma/lambda={}", k);
            match congalg::verify_pairing_lemma(&inst.t, lam, &inst.m, &inst.n, &inst.pairing, &inst.inv_m, &inst.inv_n) {
                Ok(rep) => {
                    let w = json!({ "eta_m": rep.eta_m, "eta_n": rep.eta_n, "pairing_valuations": rep.pairing_valuations });
                    verdict_check(name, inputs.clone(), &rep.verdict, w)
                }
                Err(e) => Check::error(name, inputs.clone(), e),
            }
        })
        .collect()
}

fn lf_lemma_instance(cfg: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let td = gen::transfer(rng, &cfg.primes);
    let (m, inv) = gen::swap_involution(rng, td.source(), &HeckeModule::regular(td.source()));
    let coef: Vec<i64> = (0..2 * m.rank()).map(|_| rng.gen_range(-5..=5)).collect();
    let spectrum = match congalg::split_spectrum(td.target()) {
        Ok(s) => s,
        Err(e) => return vec![Check::error("lf-lemma/spectrum", json!({ "transfer": transfer_json(&td) }), e)],
    };
    let mut out = Vec::new();
    for (sign, tag) in [(Sign::Plus, "+"), (Sign::Minus, "-")] {
        let forms = match congalg::transfer_dual_forms(&td, &m, &inv, sign) {
            Ok(f) => f,
            Err(e) => {
                out.push(Check::error(format!("lf-lemma/forms/sign={}", tag), json!({ "transfer": transfer_json(&td) }), e));
                continue;
            }
        };
        let mut l = vec![Rational::zero(); m.rank()];
        for (j, col) in forms.columns().iter().enumerate() {
            for (a, b) in l.iter_mut().zip(col) {
                *a += b * int(coef[j % coef.len()]);
            }
        }
        let inputs = json!({
            "transfer": transfer_json(&td),
            "module": module_json(&m),
            "involution": involution_json(&inv),
            "sign": tag,
            "form": qs(&l),
        });
        for (k, lam) in spectrum.iter().enumerate() {
            let name = format!("lf-lemma/sign={}/lambda={}", tag, k);
            out.push(match congalg::verify_lf_lemma(&td, lam, &m, &inv, sign, &l) {
                Ok(rep) => {
                    let w = json!({ "bound": rep.bound, "value_valuation": rep.value_valuation });
                    verdict_check(name, inputs.clone(), &rep.verdict, w)
                }
                Err(e) => Check::error(name, inputs.clone(), e),
            });
        }
    }
    out
}

/// `((0,0,-1/2),(0,-1,0),(-1/2,0,0))`.
pub fn half_antidiagonal() -> Matrix {
    let mut m = Matrix::zeros(3, 3);
    m[(0, 2)] = rat(-1, 2);
    m[(1, 1)] = int(-1);
    m[(2, 0)] = rat(-1, 2);
    m
}

fn repmodels_fixed(_: &CheckConfig) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    let weights: Vec<WeightTriple> = (0..=6).flat_map(|a| (0..=6).map(move |b| WeightTriple::new(a, b, 0))).collect();
    out.extend(weights.par_iter().map(|&w| {
        let got = repmodels::kernel_basis(w).len();
        Check::new("repmodels/kernel-dimension", weight_json(w), got == w.dimension(), json!({ "kernel": got, "formula": w.dimension() }))
    }).collect::<Vec<_>>());
    for n in 0..=4u32 {
        for v in -2..=2i64 {
            let w = WeightTriple::new(n, n, v);
            out.push(eval("repmodels/longest-weyl-constant", weight_json(w), || {
                let got = repmodels::highest_weight_pairing(w, &repmodels::longest_weyl_element())?;
                let expect = powi(&int(-1), 2 * i64::from(n) + v);
                Ok((got == expect, json!({ "value": q(&got), "expected": q(&expect) })))
            }));
            out.push(eval("repmodels/four-power-constant", weight_json(w), || {
                let got = repmodels::highest_weight_pairing(w, &half_antidiagonal())?;
                let expect = powi(&int(4), v);
                Ok((got == expect, json!({ "value": q(&got), "expected": q(&expect) })))
            }));
        }
    }
    out
}

fn random_polynomial<R: Rng>(rng: &mut R, w: WeightTriple) -> BiHomPolynomial {
    let terms: Vec<_> = repmodels::monomials(w).into_iter().map(|m| (m, int(rng.gen_range(-5..=5)))).collect();
    BiHomPolynomial::from_terms(w, terms).expect("monomials of the weight")
}

fn repmodels_instance(_: &CheckConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let w = gen::weight(rng, 3, 2);
    let g = gen::invertible_integer_matrix(rng, 3, 3);
    let p = random_polynomial(rng, w);
    let kp = gen::kernel_element(rng, &repmodels::kernel_basis(w), w);
    let kq = gen::kernel_element(rng, &repmodels::kernel_basis(w.dual()), w.dual());
    let inputs = json!({
        "g": matrix_json(&g),
        "poly": polynomial_json(&p),
        "kernel_p": polynomial_json(&kp),
        "kernel_q": polynomial_json(&kq),
    });
    let std = ActionVariant::Standard;
    vec![
        eval("repmodels/contraction-equivariance", inputs.clone(), || {
            let lhs = repmodels::contraction(&repmodels::act(&g, &p, std)?);
            let rhs = repmodels::act(&g, &repmodels::contraction(&p), std)?;
            Ok((lhs == rhs, Value::Null))
        }),
        eval("repmodels/pairing-invariance", inputs.clone(), || {
            let lhs = repmodels::pair(&repmodels::act(&g, &kp, std)?, &repmodels::act(&g, &kq, std)?)?;
            let rhs = repmodels::pair(&kp, &kq)?;
            Ok((lhs == rhs, json!({ "lhs": q(&lhs), "rhs": q(&rhs) })))
        }),
        eval("repmodels/kernel-stable", inputs.clone(), || {
            let moved = repmodels::act(&g, &kp, ActionVariant::Dual)?;
            Ok((repmodels::contraction(&moved).is_zero(), Value::Null))
        }),
        eval("repmodels/vee-intertwines", inputs, || {
            let lhs = repmodels::vee(&repmodels::act(&g, &p, ActionVariant::Dual)?);
            let rhs = repmodels::act(&g, &repmodels::vee(&p), std)?;
            Ok((lhs == rhs && repmodels::vee(&lhs) == repmodels::act(&g, &p, ActionVariant::Dual)?, Value::Null))
        }),
    ]
}

fn gram_fixed(cfg: &CheckConfig) -> Vec<Check> {
    let mut cases = Vec::new();
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            for &p in &cfg.primes {
                let w = WeightTriple::new(a, b, 0);
                if w.is_p_small(p) {
                    cases.push((w, p));
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|&(w, p)| {
            let divs = repmodels::gram_divisors(w, p);
            let shown: Vec<Value> = divs.iter().map(|&d| if d == i64::MAX { Value::Null } else { json!(d) }).collect();
            let inputs = json!({ "weight": weight_json(w), "p": p });
            Check::new("gram-p-small/unimodular", inputs, divs.iter().all(|&d| d == 0), json!({ "divisors": shown }))
        })
        .collect()
}
