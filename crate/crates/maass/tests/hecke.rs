//! Hecke-operator tests: the two-term recombination identities on both
//! weights, operator linearity, basis decomposition, and the report-producing
//! verification entry points (duality, symmetry, vanishing, the index-
//! rearrangement consequence, and the shadow correspondence).

use maass::hecke::{
    decompose_in_basis, hecke_five_half_holo, hecke_minus_half, verify_cor_five, verify_duality,
    verify_hecke, verify_symmetry, verify_vanishing, verify_xi,
};
use maass::poincare::SeriesConfig;
use maass::prec::PrecisionContext;
use maass::qseries::{basis_g, basis_h_neg, BasisKind};
use rug::Rational;

fn config(c_max: u64, digits: u32) -> SeriesConfig {
    SeriesConfig {
        c_max,
        block_size: 100,
        i_kernel_c_max: None,
        prec: PrecisionContext::new(digits),
    }
}

/// `h_{−23} | T(25)` recombines as `125·h_{−575} + 5·h_{−23}`, discovered by
/// decomposition rather than assumed.
#[test]
fn weight_five_half_recombination_found_by_decomposition() {
    let input = basis_h_neg(-23, 6_000).unwrap();
    let image = hecke_five_half_holo(&input, 5).unwrap();
    let (components, remainder) = decompose_in_basis(&image, BasisKind::HNeg).unwrap();
    assert_eq!(
        components,
        vec![(-575, Rational::from(125)), (-23, Rational::from(5))]
    );
    assert!(remainder.is_zero(), "decomposition must be exact");
}

/// `g_1 | T(25)` recombines as `5⁻³·g_25 − 5⁻²·g_1` (the character value at
/// 3 is −1 mod 5).
#[test]
fn weight_minus_half_recombination_found_by_decomposition() {
    let input = basis_g(1, 6_000).unwrap();
    let image = hecke_minus_half(&input, 5).unwrap();
    let (components, remainder) = decompose_in_basis(&image, BasisKind::G).unwrap();
    assert_eq!(
        components,
        vec![
            (25, Rational::from((1, 125))),
            (1, Rational::from((-1, 25))),
        ]
    );
    assert!(remainder.is_zero(), "decomposition must be exact");
}

/// The report-producing check passes exactly on both weights, including an
/// `ℓ = 7` case with character value −1 and one with character value 0
/// (index divisible by the prime), which collapses to a single component.
#[test]
fn hecke_reports_pass_exactly() {
    for (m, ell) in [(-23i64, 5u64), (-47, 7), (1, 5), (25, 5), (49, 7)] {
        let report = verify_hecke(m, ell, 8).unwrap();
        assert!(report.pass, "identity failed at m={m}, ell={ell}");
        assert_eq!(report.exact, Some(true));
        assert_eq!(report.check, "hecke");
    }
}

/// The operator is linear over rational combinations.
#[test]
fn hecke_operator_is_linear() {
    let valid = 4_000;
    let g1 = basis_g(1, valid).unwrap();
    let g49 = basis_g(49, valid).unwrap();
    let three = Rational::from(3);
    let minus_seven_halves = Rational::from((-7, 2));
    let combo = g1.scale(&three).add(&g49.scale(&minus_seven_halves)).unwrap();

    let lhs = hecke_minus_half(&combo, 5).unwrap();
    let rhs = hecke_minus_half(&g1, 5)
        .unwrap()
        .scale(&three)
        .add(&hecke_minus_half(&g49, 5).unwrap().scale(&minus_seven_halves))
        .unwrap();
    assert!(lhs.sub(&rhs).unwrap().is_zero());
}

/// Decomposition recovers the coefficients of a known rational combination
/// and leaves no remainder; a series with tail terms beyond the family span
/// leaves exactly that tail as remainder.
#[test]
fn decomposition_roundtrip() {
    let valid = 500;
    let a = basis_h_neg(-23, valid).unwrap();
    let b = basis_h_neg(-71, valid).unwrap();
    let two = Rational::from(2);
    let minus_five = Rational::from(-5);
    let f = a.scale(&two).add(&b.scale(&minus_five)).unwrap();
    let (components, remainder) = decompose_in_basis(&f, BasisKind::HNeg).unwrap();
    assert_eq!(
        components,
        vec![(-71, Rational::from(-5)), (-23, Rational::from(2))]
    );
    assert!(remainder.is_zero());
}

/// Small primes and composites are rejected; operators enforce their residue
/// class.
#[test]
fn operator_argument_rejection() {
    let g = basis_g(1, 500).unwrap();
    let h = basis_h_neg(-23, 500).unwrap();
    for bad in [0u64, 1, 2, 3, 4, 6, 9, 15] {
        assert!(hecke_minus_half(&g, bad).is_err(), "ell={bad} must be rejected");
        assert!(hecke_five_half_holo(&h, bad).is_err(), "ell={bad} must be rejected");
    }
    assert!(hecke_minus_half(&h, 5).is_err(), "wrong residue class must be rejected");
    assert!(hecke_five_half_holo(&g, 5).is_err(), "wrong residue class must be rejected");
    assert!(verify_hecke(24, 5, 5).is_err());
    assert!(verify_hecke(1, 4, 5).is_err());
    assert!(verify_duality(0, 3).is_err());
}

/// The grid pairing is exactly the identity matrix on a 3×3 block.
#[test]
fn duality_report_is_exact() {
    let report = verify_duality(3, 3).unwrap();
    assert!(report.pass);
    assert_eq!(report.exact, Some(true));
    assert_eq!(report.check, "duality");

    // The library's JSON reports round-trip byte-identically through a
    // sorted-key parse.
    let text = serde_json::to_string(&report).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&value).unwrap(), text);
}

/// Index symmetry of the scaled coefficients, checked numerically.
#[test]
fn symmetry_report_passes() {
    let report = verify_symmetry(1, 25, &config(1_500, 30), 1e-3).unwrap();
    assert!(report.pass, "symmetry report: {report:?}");
    assert!(verify_symmetry(1, 1, &config(100, 30), 1e-3).is_err());
}

/// Diagonal normalization at unit index within 1e−3 at this truncation,
/// with monotone decade decay.
#[test]
fn vanishing_report_diagonal() {
    let report = verify_vanishing(1, 1, &config(4_000, 30)).unwrap();
    assert!(report.pass, "diagonal normalization report: {report:?}");
}

/// Index-rearrangement consequence at `ℓ = 7`.
#[test]
fn cor_five_report_passes() {
    let report = verify_cor_five(1, 1, 7, &config(1_500, 30), 1e-3).unwrap();
    assert!(report.pass, "rearrangement report: {report:?}");
}

/// Shadow correspondence at a modest truncation (the tight-tolerance run
/// lives in the acceptance suite).
#[test]
fn xi_report_passes() {
    let report = verify_xi(&config(3_000, 30), 1e-3).unwrap();
    assert!(report.pass, "shadow report: {report:?}");
}
