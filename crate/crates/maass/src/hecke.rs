//! Hecke operators on the two dual families, exact decomposition against the
//! bases, and the verification reports (Hecke identities, grid duality,
//! inner-product symmetry, vanishing/normalization, ξ-consistency).
//!
//! Provides:
//! * [`legendre`] — the Legendre symbol by Euler's criterion;
//! * [`hecke_minus_half`] — `T(ℓ²)` on the weight −1/2 grading
//!   (`a(n) ↦ a(ℓ²n) + ℓ^{−2}(−3n|ℓ)a(n) + ℓ^{−3}a(n/ℓ²)`);
//! * [`hecke_five_half_holo`] — `T(ℓ²)` on weight 5/2 holomorphic parts
//!   (`b(n) ↦ b(ℓ²n) + ℓ(3n|ℓ)b(n) + ℓ³b(n/ℓ²)`);
//! * [`decompose_in_basis`] — greedy principal-part matching of a series
//!   against the `g_m` / `h_m` family (principal parts determine the
//!   decomposition uniquely);
//! * [`HeckeDecomposition`] and the report-valued checks [`verify_hecke`],
//!   [`verify_duality`], [`verify_symmetry`], [`verify_vanishing`],
//!   [`verify_cor_five`], [`verify_xi`].
//!
//! Wherever both sides are weakly holomorphic the checks are exact (big
//! rationals, zero tolerance); only the checks that involve the analytic
//! coefficient series carry floating tolerances.

use crate::error::{Error, Result};
use crate::poincare::{l_deriv_profiled, l_value_profiled, SeriesConfig};
use crate::qseries::{self, BasisFamily, BasisKind, FracQSeries, RESIDUE_G, RESIDUE_H};
use rug::{ops::Pow, Float, Rational};
use serde::Serialize;
use std::collections::BTreeSet;

/// Trial-division primality for the small Hecke indices used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn modpow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a|ℓ)` for an odd prime `ℓ`, via Euler's criterion
/// `a^{(ℓ−1)/2} mod ℓ ∈ {0, 1, ℓ−1}`.
pub fn legendre(a: i64, ell: u64) -> Result<i32> {
    if ell < 3 || !is_prime(ell) {
        return Err(Error::InvalidParameter(format!("{ell} is not an odd prime")));
    }
    let r = a.rem_euclid(ell as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = modpow(r, (ell - 1) / 2, ell);
    if e == 1 {
        Ok(1)
    } else if e == ell - 1 {
        Ok(-1)
    } else {
        Err(Error::InvalidParameter(format!("{ell} fails Euler's criterion — not prime")))
    }
}

fn require_hecke_prime(ell: u64) -> Result<()> {
    if ell < 5 || !is_prime(ell) {
        return Err(Error::InvalidParameter(format!(
            "Hecke index must be a prime >= 5, got {ell}"
        )));
    }
    Ok(())
}

/// Shared coefficientwise `T(ℓ²)` application: output coefficient at `n` is
/// `a(ℓ²n) + χ(sign·3n)·w₁·a(n) + w₂·a(n/ℓ²)`.
fn hecke_apply(
    f: &FracQSeries,
    ell: u64,
    legendre_mult: i64,
    w1: &Rational,
    w2: &Rational,
) -> Result<FracQSeries> {
    let ell2 = (ell * ell) as i64;
    let out_valid = f.valid_to().div_euclid(ell2);
    let mut candidates: BTreeSet<i64> = BTreeSet::new();
    for (e, _) in f.terms() {
        if e <= out_valid {
            candidates.insert(e);
        }
        if e * ell2 <= out_valid {
            candidates.insert(e * ell2);
        }
        if e.rem_euclid(ell2) == 0 && e / ell2 <= out_valid {
            candidates.insert(e / ell2);
        }
    }
    let mut terms: Vec<(i64, Rational)> = Vec::new();
    for n in candidates {
        let mut b = f.coeff(n * ell2);
        let chi = legendre(legendre_mult * n, ell)?;
        if chi != 0 {
            b += f.coeff(n) * w1.clone() * chi;
        }
        if n.rem_euclid(ell2) == 0 {
            b += f.coeff(n / ell2) * w2.clone();
        }
        if b != 0 {
            terms.push((n, b));
        }
    }
    FracQSeries::from_terms(f.residue(), terms, out_valid)
}

/// `T(ℓ²)` on the weight −1/2 grading (residue class 23):
/// `a(n) ↦ a(ℓ²n) + ℓ^{−2}(−3n|ℓ)·a(n) + ℓ^{−3}·a(n/ℓ²)`.
///
/// The result is valid to `⌊valid/ℓ²⌋` in numerator units.
pub fn hecke_minus_half(f: &FracQSeries, ell: u64) -> Result<FracQSeries> {
    require_hecke_prime(ell)?;
    if f.residue() != RESIDUE_G {
        return Err(Error::ResidueMismatch { a: f.residue(), b: RESIDUE_G, op: "hecke_minus_half" });
    }
    let e = ell as i64;
    hecke_apply(
        f,
        ell,
        -3,
        &Rational::from((1, e * e)),
        &Rational::from((1, e * e * e)),
    )
}

/// `T(ℓ²)` on weight 5/2 holomorphic parts (residue class 1):
/// `b(n) ↦ b(ℓ²n) + ℓ(3n|ℓ)·b(n) + ℓ³·b(n/ℓ²)`.
pub fn hecke_five_half_holo(f: &FracQSeries, ell: u64) -> Result<FracQSeries> {
    require_hecke_prime(ell)?;
    if f.residue() != RESIDUE_H {
        return Err(Error::ResidueMismatch {
            a: f.residue(),
            b: RESIDUE_H,
            op: "hecke_five_half_holo",
        });
    }
    let e = ell as i64;
    hecke_apply(f, ell, 3, &Rational::from(e), &Rational::from(e * e * e))
}

/// Decompose a weakly holomorphic series into basis members by greedy
/// principal-part matching, deepest exponent first. Returns the component
/// list `(index m, coefficient)` and the remainder after subtraction; a
/// genuine member of the span leaves the zero remainder (principal parts
/// determine these forms uniquely).
pub fn decompose_in_basis(
    f: &FracQSeries,
    kind: BasisKind,
) -> Result<(Vec<(i64, Rational)>, FracQSeries)> {
    let expected_residue = match kind {
        BasisKind::G => RESIDUE_G,
        BasisKind::HNeg => RESIDUE_H,
    };
    if f.residue() != expected_residue {
        return Err(Error::ResidueMismatch {
            a: f.residue(),
            b: expected_residue,
            op: "decompose_in_basis",
        });
    }
    let mut rem = f.clone();
    let mut comps: Vec<(i64, Rational)> = Vec::new();
    while let Some(e) = rem.min_numerator() {
        if e >= 0 {
            break;
        }
        let m = match kind {
            BasisKind::G => -e,
            BasisKind::HNeg => e,
        };
        let coeff = rem.coeff(e);
        let member = match kind {
            BasisKind::G => qseries::basis_g(m, rem.valid_to())?,
            BasisKind::HNeg => qseries::basis_h_neg(m, rem.valid_to())?,
        };
        rem = rem.sub(&member.scale(&coeff))?;
        comps.push((m, coeff));
    }
    Ok((comps, rem))
}

/// A verified two-term Hecke image in basis coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct HeckeDecomposition {
    /// The Hecke prime.
    pub ell: u64,
    /// Index of the input basis form.
    pub input_m: i64,
    /// `(basis index, exact rational coefficient)` pairs, at most two.
    pub components: Vec<(i64, String)>,
}

/// A machine-readable verification report.
/// Fields are declared alphabetically so serialized JSON round-trips
/// byte-identically through sorted-key maps.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Which check ran.
    pub check: String,
    /// Check-specific payload (components, matrices, diagnostics).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    /// Present (and true) when the comparison was exact rational arithmetic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    /// Largest absolute error, for floating checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_error: Option<String>,
    /// Largest relative error, for floating checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rel_error: Option<String>,
    /// Input parameters.
    pub parameters: serde_json::Value,
    /// Whether the check passed.
    pub pass: bool,
}

/// Verify the Hecke recombination identity for a basis form, exactly.
///
/// For `m < 0` (weight 5/2 side): `h_m|T(ℓ²) = ℓ³·h_{ℓ²m} + (3m|ℓ)·ℓ·h_m`.
/// For `m > 0` (weight −1/2 side): `g_m|T(ℓ²) = ℓ^{−3}·g_{ℓ²m} + (3m|ℓ)·ℓ^{−2}·g_m`.
/// When `ℓ² | m` a third component appears on either weight — the
/// `a(ℓ²n)` part of the operator reaches the principal term — contributing
/// `h_{m/ℓ²}` (resp. `g_{m/ℓ²}`) with coefficient exactly 1; the index stays
/// ≡ 1 (mod 24) because `ℓ² ≡ 1 (mod 24)` for every prime `ℓ ≥ 5`.
///
/// The image is decomposed by principal-part matching (not assumed), the
/// discovered components are compared with the predicted ones, and the
/// remainder must be identically zero through `n_terms` coefficients.
pub fn verify_hecke(m: i64, ell: u64, n_terms: u32) -> Result<Report> {
    require_hecke_prime(ell)?;
    if m == 0 || m.rem_euclid(24) != 1 {
        return Err(Error::InvalidIndex { m, reason: "index must be ≡ 1 (mod 24) and nonzero" });
    }
    let ell2 = (ell * ell) as i64;
    let span = 24 * (i64::from(n_terms) - 1);
    let (kind, out_valid) = if m < 0 {
        (BasisKind::HNeg, span + 1)
    } else {
        (BasisKind::G, span + 23)
    };
    let in_valid = out_valid * ell2;
    let (input, chi) = match kind {
        BasisKind::HNeg => (qseries::basis_h_neg(m, in_valid)?, legendre(3 * m, ell)?),
        BasisKind::G => (qseries::basis_g(m, in_valid)?, legendre(3 * m, ell)?),
    };
    let image = match kind {
        BasisKind::HNeg => hecke_five_half_holo(&input, ell)?,
        BasisKind::G => hecke_minus_half(&input, ell)?,
    };
    let (comps, rem) = decompose_in_basis(&image, kind)?;
    let e = ell as i64;
    let mut predicted: Vec<(i64, Rational)> = match kind {
        BasisKind::HNeg => vec![
            (ell2 * m, Rational::from(e * e * e)),
            (m, Rational::from(e) * chi),
        ],
        BasisKind::G => vec![
            (ell2 * m, Rational::from((1, e * e * e))),
            (m, Rational::from((chi, e * e))),
        ],
    };
    if m.rem_euclid(ell2) == 0 {
        predicted.push((m / ell2, Rational::from(1)));
    }
    let predicted: Vec<(i64, Rational)> =
        predicted.into_iter().filter(|(_, c)| *c != 0).collect();
    let mut comps_sorted = comps.clone();
    comps_sorted.sort_by_key(|(idx, _)| *idx);
    let mut predicted_sorted = predicted.clone();
    predicted_sorted.sort_by_key(|(idx, _)| *idx);
    let pass = rem.is_zero() && comps_sorted == predicted_sorted;
    let decomposition = HeckeDecomposition {
        ell,
        input_m: m,
        components: comps.iter().map(|(i, c)| (*i, c.to_string())).collect(),
    };
    Ok(Report {
        check: "hecke".into(),
        parameters: serde_json::json!({ "m": m, "ell": ell, "terms": n_terms }),
        max_abs_error: None,
        max_rel_error: None,
        exact: Some(true),
        pass,
        details: Some(serde_json::json!({
            "decomposition": decomposition,
            "remainder_zero": rem.is_zero(),
            "verified_to_numerator": image.valid_to(),
        })),
    })
}

/// Verify grid duality: `coefficient(h_{−j}, q^{k/24}) = −coefficient(g_k,
/// q^{j/24})` over the full `rows × cols` grid (`j = 23, 47, …`;
/// `k = 1, 25, …`), exactly. Returns the boolean matrix in `details`.
pub fn verify_duality(rows: u32, cols: u32) -> Result<Report> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("duality grid must be nonempty".into()));
    }
    let max_j = 24 * (i64::from(rows) - 1) + 23;
    let max_k = 24 * (i64::from(cols) - 1) + 1;
    let h_fam = BasisFamily::build_h_neg((rows - 1) as usize, max_k)?;
    let g_fam = BasisFamily::build_g((cols - 1) as usize, max_j)?;
    let mut matrix: Vec<Vec<bool>> = Vec::new();
    let mut all = true;
    for i in 0..rows as usize {
        let j = 24 * i as i64 + 23;
        let h = h_fam.by_position(i);
        let mut row = Vec::new();
        for l in 0..cols as usize {
            let k = 24 * l as i64 + 1;
            let g = g_fam.by_position(l);
            let ok = h.coeff(k) == -g.coeff(j);
            all &= ok;
            row.push(ok);
        }
        matrix.push(row);
    }
    Ok(Report {
        check: "duality".into(),
        parameters: serde_json::json!({ "rows": rows, "cols": cols }),
        max_abs_error: None,
        max_rel_error: None,
        exact: Some(true),
        pass: all,
        details: Some(serde_json::json!({ "antisymmetric": matrix })),
    })
}

fn float_str(x: &Float) -> String {
    format!("{:.6e}", x.to_f64())
}

/// Verify the inner-product symmetry `n^{3/2}·p_n^+(m) = m^{3/2}·p_m^+(n)`
/// for positive `m ≠ n ≡ 1 (mod 24)`, each side from its own coefficient
/// series, to relative tolerance `tol_rel`.
pub fn verify_symmetry(m: i64, n: i64, cfg: &SeriesConfig, tol_rel: f64) -> Result<Report> {
    if m == n {
        return Err(Error::InvalidParameter("symmetry check requires m ≠ n".into()));
    }
    let bits = cfg.prec.bits;
    let sqrt_pi = cfg.prec.pi().sqrt();
    let p_plus = |a: i64, b: i64| -> Result<Float> {
        let (sv, _) = l_deriv_profiled(a, b, cfg)?;
        let ratio = Float::with_val(bits, b) / Float::with_val(bits, a);
        Ok(-(sqrt_pi.clone() * 8u32 / 3u32) * ratio.pow(Float::with_val(bits, 0.75f64)) * sv.value)
    };
    let p_m_n = p_plus(m, n)?;
    let p_n_m = p_plus(n, m)?;
    let lhs = Float::with_val(bits, n).pow(Float::with_val(bits, 1.5f64)) * &p_n_m;
    let rhs = Float::with_val(bits, m).pow(Float::with_val(bits, 1.5f64)) * &p_m_n;
    let abs_err = (lhs.clone() - &rhs).abs();
    let rel = abs_err.clone() / rhs.clone().abs();
    let pass = rel < tol_rel;
    Ok(Report {
        check: "symmetry".into(),
        parameters: serde_json::json!({
            "m": m, "n": n, "c_max": cfg.c_max, "digits": cfg.prec.digits, "tol_rel": tol_rel
        }),
        max_abs_error: Some(float_str(&abs_err)),
        max_rel_error: Some(float_str(&rel)),
        exact: None,
        pass,
        details: Some(serde_json::json!({
            "p_m_plus_n": float_str(&p_m_n),
            "p_n_plus_m": float_str(&p_n_m),
            "lhs": float_str(&lhs),
            "rhs": float_str(&rhs),
        })),
    })
}

/// Verify the diagonal/off-diagonal structure of `L_{m,n}(5/4)` for positive
/// indices: off the diagonal `2π·L` vanishes (judged against the series'
/// absolute mass, since no rigorous tail bound exists); on the diagonal
/// `2π·L = 1`. Also reports whether the per-decade maxima of the block sums
/// decay monotonically.
pub fn verify_vanishing(m: i64, n: i64, cfg: &SeriesConfig) -> Result<Report> {
    let (sv, profile) = l_value_profiled(m, n, cfg)?;
    let two_pi = cfg.prec.pi() * 2u32;
    let value_2pi = sv.value.clone() * &two_pi;
    let scale = profile.abs_mass.clone() * &two_pi;
    let decade_max = profile.decade_max_blocks();
    let mut monotone = true;
    for w in decade_max.windows(2) {
        if w[1].1 > w[0].1 {
            monotone = false;
        }
    }
    let (abs_err, rel, pass, mode) = if m == n {
        let err = (value_2pi.clone() - 1u32).abs();
        let pass = err.clone() < 1e-3 && monotone;
        (err.clone(), err, pass, "normalization |2πL − 1|")
    } else {
        let err = value_2pi.clone().abs();
        let rel = err.clone() / scale.clone();
        let pass = rel.clone() < 1e-4 && monotone;
        (err, rel, pass, "vanishing |2πL| / scale")
    };
    Ok(Report {
        check: "vanishing".into(),
        parameters: serde_json::json!({
            "m": m, "n": n, "c_max": cfg.c_max, "digits": cfg.prec.digits
        }),
        max_abs_error: Some(float_str(&abs_err)),
        max_rel_error: Some(float_str(&rel)),
        exact: None,
        pass,
        details: Some(serde_json::json!({
            "mode": mode,
            "two_pi_l": float_str(&value_2pi),
            "scale_abs_mass": float_str(&scale),
            "tail_estimate": float_str(&sv.tail_estimate),
            "monotone_decade_decay": monotone,
            "decade_max_blocks": decade_max
                .iter()
                .map(|(d, v)| serde_json::json!({ "decade": d, "max_block": float_str(v) }))
                .collect::<Vec<_>>(),
        })),
    })
}

/// Verify the index-raising coefficient identity
/// `p_m^+(ℓ²n) = ℓ³·p_{ℓ²m}^+(n)` for positive `m, n ≡ 1 (mod 24)`, both
/// sides from their own series, to relative tolerance `tol_rel`.
pub fn verify_cor_five(m: i64, n: i64, ell: u64, cfg: &SeriesConfig, tol_rel: f64) -> Result<Report> {
    require_hecke_prime(ell)?;
    let bits = cfg.prec.bits;
    let sqrt_pi = cfg.prec.pi().sqrt();
    let ell2 = (ell * ell) as i64;
    let p_plus = |a: i64, b: i64| -> Result<Float> {
        let (sv, _) = l_deriv_profiled(a, b, cfg)?;
        let ratio = Float::with_val(bits, b) / Float::with_val(bits, a);
        Ok(-(sqrt_pi.clone() * 8u32 / 3u32) * ratio.pow(Float::with_val(bits, 0.75f64)) * sv.value)
    };
    let lhs = p_plus(m, ell2 * n)?;
    let rhs = p_plus(ell2 * m, n)? * Float::with_val(bits, ell).pow(3i32);
    let abs_err = (lhs.clone() - &rhs).abs();
    let rel = abs_err.clone() / rhs.clone().abs();
    let pass = rel < tol_rel;
    Ok(Report {
        check: "cor5".into(),
        parameters: serde_json::json!({
            "m": m, "n": n, "ell": ell, "c_max": cfg.c_max,
            "digits": cfg.prec.digits, "tol_rel": tol_rel
        }),
        max_abs_error: Some(float_str(&abs_err)),
        max_rel_error: Some(float_str(&rel)),
        exact: None,
        pass,
        details: Some(serde_json::json!({
            "lhs_p_m_plus": float_str(&lhs),
            "rhs_scaled": float_str(&rhs),
        })),
    })
}

/// Verify ξ-consistency for `h_1`: each non-holomorphic coefficient
/// `p_1^−(n)` must reproduce the exact `g_1` coefficient under the shadow
/// correspondence, `−p_1^−(n)·(1/n)^{3/2} = p((n+1)/24)`, to relative
/// tolerance `tol_rel`, for `n ∈ {23, 47, 71}`.
pub fn verify_xi(cfg: &SeriesConfig, tol_rel: f64) -> Result<Report> {
    let nonholo = crate::poincare::h_nonholo_coefficients(1, 3, cfg)?;
    let bits = cfg.prec.bits;
    let mut worst_rel = Float::new(bits);
    let mut worst_abs = Float::new(bits);
    let mut rows = Vec::new();
    for (k, entry) in nonholo.iter().enumerate() {
        let n = entry.n;
        let target = crate::poincare::partition_oracle(k as u64 + 1);
        let recovered = -entry.series.value.clone()
            / Float::with_val(bits, n).pow(Float::with_val(bits, 1.5f64));
        let abs_err = (recovered.clone() - Float::with_val(bits, &target)).abs();
        let rel = abs_err.clone() / Float::with_val(bits, &target);
        if rel > worst_rel {
            worst_rel = rel.clone();
        }
        if abs_err > worst_abs {
            worst_abs = abs_err.clone();
        }
        rows.push(serde_json::json!({
            "n": n,
            "recovered": float_str(&recovered),
            "exact": target.to_string(),
            "rel_error": float_str(&rel),
        }));
    }
    let pass = worst_rel < tol_rel;
    Ok(Report {
        check: "xi".into(),
        parameters: serde_json::json!({
            "m": 1, "c_max": cfg.i_kernel_c_max.unwrap_or(cfg.c_max),
            "digits": cfg.prec.digits, "tol_rel": tol_rel
        }),
        max_abs_error: Some(float_str(&worst_abs)),
        max_rel_error: Some(float_str(&worst_rel)),
        exact: None,
        pass,
        details: Some(serde_json::json!({ "coefficients": rows })),
    })
}
