//! Torus values of newvector Whittaker functions and the truncated sums
//! built from them.
//!
//! Values on `diag(ϖ^f, 1)` are `δ_{B_n}^{1/2}(ϖ^f) s_f(α)` for dominant `f`
//! and zero otherwise; `α` is padded with zeros up to length `n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::rational::{int, powi, Rational};
use crate::satake::{modulus_half, modulus_half_exponent, QHalfValue, SatakeData};
use crate::series::TruncatedSeries;
use crate::symfunc::{partitions, schur, schur_laurent, DominantWeight};

/// `W°(diag(ϖ^f, 1))` for `f` of length `n - 1`, normalized by `W°(1) = 1`.
pub fn essential_value(sd: &SatakeData, f: &[i64]) -> Result<QHalfValue> {
    let n = sd.n();
    if f.len() + 1 != n {
        return Err(Error::Dimension(format!("expected {} entries, got {}", n - 1, f.len())));
    }
    let Ok(w) = DominantWeight::partition(f.to_vec()) else {
        return Ok(QHalfValue::zero(sd.q()));
    };
    let mut full = f.to_vec();
    full.push(0);
    let s = schur(&w, &sd.padded_alphas())?;
    Ok(modulus_half(n, sd.q(), &full).scale(&s))
}

/// Shintani's formula `W°(ϖ^λ) = δ^{1/2}(ϖ^λ) s_λ(α)` for unramified data.
pub fn spherical_value(sd: &SatakeData, lam: &[i64]) -> Result<QHalfValue> {
    sd.require_unramified("spherical_value")?;
    if lam.len() != sd.n() {
        return Err(Error::Dimension(format!("expected {} entries, got {}", sd.n(), lam.len())));
    }
    let Ok(w) = DominantWeight::new(lam.to_vec()) else {
        return Ok(QHalfValue::zero(sd.q()));
    };
    let s = schur_laurent(&w, sd.alphas())?;
    Ok(modulus_half(sd.n(), sd.q(), lam).scale(&s))
}

/// `W°(diag(ϖ^{(c,…,c)}, 1))`; the second transposed essential vector exists iff this is nonzero.
pub fn transposed_normalizer(sd: &SatakeData) -> Result<QHalfValue> {
    let c = sd.conductor() as i64;
    essential_value(sd, &vec![c; sd.n() - 1])
}

fn check_pair(sd: &SatakeData, sd_dual: &SatakeData) -> Result<()> {
    if sd.q() != sd_dual.q() || sd.n() != sd_dual.n() {
        return Err(invalid("paired data must share rank and residue cardinality"));
    }
    Ok(())
}

fn rational_coefficient(v: QHalfValue) -> Result<Rational> {
    v.to_rational().ok_or_else(|| invalid("half powers of q did not cancel"))
}

/// `δ_{B_{n-1}}^{-1}(ϖ^λ) · q^{|λ|}` as a half-power value.
fn pairing_weight(n: usize, q: u64, lam: &[i64]) -> QHalfValue {
    let size: i64 = lam.iter().sum();
    QHalfValue::monomial(q, powi(&int(q as i64), size), -2 * modulus_half_exponent(n - 1, lam))
}

/// The pairing `⟨W°_π, W°_{π^∨}⟩` as a series in `t = q^{-1}`, summed over
/// `λ_1 ≥ … ≥ λ_{n-1} ≥ 0`.
pub fn pairing_series(sd: &SatakeData, sd_dual: &SatakeData, max_degree: usize) -> Result<TruncatedSeries> {
    check_pair(sd, sd_dual)?;
    if sd.is_unramified() && sd_dual.is_unramified() {
        return Err(invalid("pairing_series needs at least one ramified input"));
    }
    let (n, q) = (sd.n(), sd.q());
    let mut out = TruncatedSeries::zero(max_degree);
    for d in 0..=max_degree {
        let mut acc = Rational::zero();
        for lam in partitions(d, n - 1) {
            let f = lam.padded(n - 1)?;
            let term = essential_value(sd, f.parts())? * essential_value(sd_dual, f.parts())?
                * pairing_weight(n, q, f.parts());
            acc += rational_coefficient(term)?;
        }
        out.set(d, acc);
    }
    Ok(out)
}

/// The pairing of `W°_π` with the second transposed essential vector of `π^∨`,
/// as a series in `t = q^{-1}`.
///
/// The transposed vector is evaluated through the shift by `(c,…,c)` and the
/// normalizer. When the dual has fewer than `n - 1` inverse roots the
/// normalizer vanishes and the zero series is returned.
pub fn transposed_pairing_series(sd: &SatakeData, sd_dual: &SatakeData, max_degree: usize) -> Result<TruncatedSeries> {
    check_pair(sd, sd_dual)?;
    if sd.is_unramified() {
        return Err(invalid("transposed_pairing_series needs ramified data"));
    }
    let c = sd_dual.conductor() as i64;
    if c < 1 {
        return Err(invalid("the dual datum needs a positive conductor"));
    }
    let (n, q) = (sd.n(), sd.q());
    if sd_dual.r() + 1 < n {
        return Ok(TruncatedSeries::zero(max_degree));
    }
    let norm_inv = transposed_normalizer(sd_dual)?.inverse()?;
    let mut out = TruncatedSeries::zero(max_degree);
    for d in 0..=max_degree {
        let mut acc = Rational::zero();
        for lam in partitions(d, n - 1) {
            let f = lam.padded(n - 1)?;
            let shifted: Vec<i64> = f.parts().iter().map(|x| x + c).collect();
            let term = essential_value(sd, f.parts())? * essential_value(sd_dual, &shifted)? * &norm_inv
                * pairing_weight(n, q, f.parts());
            acc += rational_coefficient(term)?;
        }
        out.set(d, acc);
    }
    Ok(out)
}

/// `Σ_λ W°(ϖ^{2λ}) δ^{-1/2}(ϖ^{2λ}) t^{|λ|} = Σ_λ s_{2λ}(α) t^{|λ|}` for unramified data.
pub fn asai_ramified_zeta_series(sd: &SatakeData, max_degree: usize) -> Result<TruncatedSeries> {
    sd.require_unramified("asai_ramified_zeta_series")?;
    let (n, q) = (sd.n(), sd.q());
    let mut out = TruncatedSeries::zero(max_degree);
    for d in 0..=max_degree {
        let mut acc = Rational::zero();
        for lam in partitions(d, n) {
            let two = lam.scaled(2).padded(n)?;
            let term = spherical_value(sd, two.parts())?
                * QHalfValue::monomial(q, Rational::from_integer(1.into()), -modulus_half_exponent(n, two.parts()));
            acc += rational_coefficient(term)?;
        }
        out.set(d, acc);
    }
    Ok(out)
}
