//! Acceptance suite: every top-level claim of the library checked end to end,
//! one summary line per criterion with the measured values. Runs without the
//! libtest harness so the lines always appear in the log; the process exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use maass::hecke::{
    verify_cor_five, verify_duality, verify_hecke, verify_symmetry, verify_vanishing, verify_xi,
};
use maass::poincare::{h_expansion, partition_oracle, rademacher_p, SeriesConfig};
use maass::prec::PrecisionContext;
use maass::kloosterman::{dedekind_sum, dedekind_sum_direct};
use maass::qseries::{basis_g, basis_h_neg};
use maass::special::{
    bessel_i_half, bessel_i_half_series, bessel_j_general, bessel_j_half, beta_gamma,
    dj_dorder_at_3_2, upper_gamma_quadrature,
};
use rug::{Float, Integer};

fn config(c_max: u64, digits: u32, i_kernel_c_max: Option<u64>) -> SeriesConfig {
    SeriesConfig {
        c_max,
        block_size: 100,
        i_kernel_c_max,
        prec: PrecisionContext::new(digits),
    }
}

/// Criterion 1: the exact q-series route reproduces the reference
/// expansions of g_25, g_49, h_-23, h_-47, h_-71, in seconds.
fn c1_exact_family_expansions() -> (bool, String) {
    let t = Instant::now();
    let g25 = basis_g(25, 71).unwrap();
    let g49 = basis_g(49, 71).unwrap();
    let h23 = basis_h_neg(-23, 73).unwrap();
    let h47 = basis_h_neg(-47, 49).unwrap();
    let h71 = basis_h_neg(-71, 49).unwrap();
    let checks: [(&str, &maass::qseries::FracQSeries, i64, i64); 16] = [
        ("g_25", &g25, -25, 1),
        ("g_25", &g25, 23, 196_885),
        ("g_25", &g25, 47, 21_690_645),
        ("g_25", &g25, 71, 886_187_500),
        ("g_49", &g49, -49, 1),
        ("g_49", &g49, 23, 42_790_636),
        ("g_49", &g49, 47, 40_513_206_272),
        ("g_49", &g49, 71, 8_543_738_297_129),
        ("h_-23", &h23, -23, 1),
        ("h_-23", &h23, 1, -1),
        ("h_-23", &h23, 25, -196_885),
        ("h_-23", &h23, 73, -2_549_715_506),
        ("h_-47", &h47, 1, -2),
        ("h_-47", &h47, 25, -21_690_645),
        ("h_-71", &h71, 1, -3),
        ("h_-71", &h71, 49, -8_543_738_297_129),
    ];
    let mut bad = Vec::new();
    for (name, f, n, expected) in checks {
        let got = f.coeff(n);
        if got != Integer::from(expected) {
            bad.push(format!("{name}[{n}] = {got}, reference {expected}"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if bad.is_empty() {
        (true, format!(
            "exact expansions of g_25, g_49, h_-23, h_-47, h_-71 match all 16 reference coefficients in {secs:.2} s"
        ))
    } else {
        (false, format!("mismatches: {}", bad.join("; ")))
    }
}

/// Criterion 2: grid duality of Fourier coefficients on a 4×4 block, exact.
fn c2_grid_duality() -> (bool, String) {
    let report = verify_duality(4, 4).unwrap();
    (
        report.pass,
        format!(
            "4×4 coefficient grid duality, exact rational arithmetic, zero tolerance: pass = {}",
            report.pass
        ),
    )
}

/// Criterion 3: the exact partition series rounds to the recurrence value
/// with certified margin for every 1 ≤ n ≤ 200 at 50 digits.
fn c3_partition_series() -> (bool, String) {
    let mut max_cmax = 0u64;
    let mut min_margin = f64::INFINITY;
    let mut failures = 0u32;
    for n in 1u64..=200 {
        let c_max = 20 + 6 * ((n as f64).sqrt().ceil() as u64 + 1);
        let cfg = config(c_max, 50, None);
        let r = rademacher_p(n, &cfg).unwrap();
        if !(r.certified && r.rounded == partition_oracle(n)) {
            failures += 1;
        }
        max_cmax = max_cmax.max(r.c_max);
        min_margin = min_margin.min(r.margin.to_f64());
    }
    (
        failures == 0,
        format!(
            "p(n) series certified and equal to the pentagonal recurrence for all 1 ≤ n ≤ 200 \
             at 50 digits ({failures} failures); max c_max {max_cmax}, min margin {min_margin:.6}"
        ),
    )
}

/// Criterion 4: magnitudes of the slowly convergent order-derivative
/// coefficients of h_1 against their reference values, within ±0.05.
fn c4_mock_coefficients() -> (bool, String) {
    let t = Instant::now();
    let cfg = config(70_000, 30, Some(8_000));
    let exp = h_expansion(1, 4, &cfg).unwrap();
    let references = [(25i64, 111.40f64), (49, 254.26), (73, 86.52)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, reference) in references {
        let entry = exp
            .holo
            .iter()
            .find(|e| e.n == n)
            .expect("requested coefficient present");
        let magnitude = entry.series.value.clone().abs().to_f64();
        let ok = entry.series.value.is_sign_negative() && (magnitude - reference).abs() < 0.05;
        pass &= ok;
        parts.push(format!("|p_1^+({n})| = {magnitude:.4} (reference {reference} ± 0.05)"));
    }
    let secs = t.elapsed().as_secs_f64();
    (
        pass,
        format!("{} at c_max 70000, 30 digits, in {secs:.0} s", parts.join(", ")),
    )
}

/// Criterion 5: off-diagonal vanishing relative to the series' absolute
/// mass, and diagonal normalization, with monotone decade decay.
fn c5_vanishing_and_normalization() -> (bool, String) {
    let cfg = config(20_000, 30, Some(8_000));
    let off = verify_vanishing(1, 25, &cfg).unwrap();
    let diag = verify_vanishing(1, 1, &cfg).unwrap();
    (
        off.pass && diag.pass,
        format!(
            "at c_max 20000: |2π·L_{{1,25}}| / mass = {} (tolerance 1e-4, pass {}); \
             |2π·L_{{1,1}} − 1| = {} (tolerance 1e-3, pass {}); decade decay monotone",
            off.max_rel_error.as_deref().unwrap_or("?"),
            off.pass,
            diag.max_abs_error.as_deref().unwrap_or("?"),
            diag.pass
        ),
    )
}

/// Criterion 6: Hecke recombination on both weights, exact, with the
/// decomposition discovered rather than assumed.
fn c6_hecke_identities() -> (bool, String) {
    let h_side = verify_hecke(-23, 5, 15).unwrap();
    let g_side = verify_hecke(1, 5, 15).unwrap();
    (
        h_side.pass && g_side.pass && h_side.exact == Some(true) && g_side.exact == Some(true),
        format!(
            "T(25) recombination exact through 15 coefficients: h_-23 pass = {}, g_1 pass = {}",
            h_side.pass, g_side.pass
        ),
    )
}

/// Criterion 7: inner-product symmetry of the scaled coefficients and the
/// index-raising consequence, both from independent series evaluations.
fn c7_symmetry_and_index_raising() -> (bool, String) {
    let cfg = config(2_000, 30, Some(2_000));
    let sym = verify_symmetry(1, 25, &cfg, 1e-3).unwrap();
    let cor = verify_cor_five(1, 1, 7, &cfg, 1e-3).unwrap();
    (
        sym.pass && cor.pass,
        format!(
            "symmetry 25^{{3/2}}·p_25^+(1) vs 1·p_1^+(25): rel {} (pass {}); \
             index raising p_1^+(49) vs 343·p_49^+(1): rel {} (pass {})",
            sym.max_rel_error.as_deref().unwrap_or("?"),
            sym.pass,
            cor.max_rel_error.as_deref().unwrap_or("?"),
            cor.pass
        ),
    )
}

/// Criterion 8: shadow correspondence — the non-holomorphic coefficients of
/// h_1 reproduce the partition numbers after the n^{3/2} rescaling.
fn c8_shadow_correspondence() -> (bool, String) {
    let cfg = config(8_000, 30, None);
    let report = verify_xi(&cfg, 1e-6).unwrap();
    (
        report.pass,
        format!(
            "−p_1^−(n)/n^{{3/2}} equals p((n+1)/24) for n = 23, 47, 71: max rel {} \
             (tolerance 1e-6) at c_max 8000",
            report.max_rel_error.as_deref().unwrap_or("?")
        ),
    )
}

/// Criterion 9: the special-function building blocks against independent
/// oracles — β against adaptive quadrature and the Bessel closed forms
/// against ascending series (1e-25 relative at 48 digits), the analytic
/// order-derivative against a central difference at doubled precision
/// (1e-12 absolute), and the logarithmic-time Dedekind sums against the
/// direct sawtooth sums (exact rational equality).
fn c9_special_function_oracles() -> (bool, String) {
    let prec = PrecisionContext::new(48);
    let bits = prec.bits;
    let mut worst_rel = Float::new(bits);
    for y in [0.5f64, 1.0, 2.0, 5.0, 15.0, 40.0] {
        let yf = Float::with_val(bits, y);
        let closed = beta_gamma(&yf, &prec).unwrap();
        let x = Float::with_val(bits, rug::float::Constant::Pi) * &yf / 6u32;
        let quad = upper_gamma_quadrature(&x, &prec).unwrap();
        let rel = ((closed - &quad) / &quad).abs();
        if rel > worst_rel {
            worst_rel = rel;
        }
    }
    for two_nu in [3i64, 7] {
        for x in [0.3f64, 1.5, 4.0, 12.0] {
            let xf = Float::with_val(bits, x);
            let closed = bessel_j_half(two_nu, &xf, &prec).unwrap();
            let nu = Float::with_val(bits, two_nu) / 2u32;
            let series = bessel_j_general(&nu, &xf, &prec).unwrap();
            let rel = ((closed - &series) / &series).abs();
            if rel > worst_rel {
                worst_rel = rel;
            }
        }
    }
    for x in [0.1f64, 1.0, 10.0] {
        let xf = Float::with_val(bits, x);
        let closed = bessel_i_half(3, &xf, &prec).unwrap();
        let series = bessel_i_half_series(3, &xf, &prec).unwrap();
        let rel = ((closed - &series) / &series).abs();
        if rel > worst_rel {
            worst_rel = rel;
        }
    }
    let lo = PrecisionContext::new(30);
    let hi = PrecisionContext::new(70);
    let h = Float::with_val(hi.bits, 1e-8f64);
    let mut worst_diff = Float::new(hi.bits);
    for x in [0.5f64, 2.0, 20.0] {
        let deriv = dj_dorder_at_3_2(&Float::with_val(lo.bits, x), &lo).unwrap();
        let x_hi = Float::with_val(hi.bits, x);
        let nu_plus = Float::with_val(hi.bits, 1.5f64) + &h;
        let nu_minus = Float::with_val(hi.bits, 1.5f64) - &h;
        let central = (bessel_j_general(&nu_plus, &x_hi, &hi).unwrap()
            - bessel_j_general(&nu_minus, &x_hi, &hi).unwrap())
            / (h.clone() * 2u32);
        let dev = (central - Float::with_val(hi.bits, &deriv)).abs();
        if dev > worst_diff {
            worst_diff = dev;
        }
    }
    let mut dedekind_checked = 0u32;
    let mut dedekind_mismatches = 0u32;
    for c in 1i64..=40 {
        for d in 0..c.max(1) {
            if gcd(d, c) != 1 {
                continue;
            }
            dedekind_checked += 1;
            if dedekind_sum(d, c).unwrap() != dedekind_sum_direct(d, c).unwrap() {
                dedekind_mismatches += 1;
            }
        }
    }
    let pass = worst_rel < 1e-25 && worst_diff < 1e-12 && dedekind_mismatches == 0;
    (
        pass,
        format!(
            "β vs quadrature and Bessel closed forms vs series max rel {:.3e} (tol 1e-25, 48 digits); \
             dJ/dν vs central difference max abs {:.3e} (tol 1e-12); \
             Dedekind fast vs direct exact on {dedekind_checked}/{dedekind_checked} pairs, c ≤ 40",
            worst_rel.to_f64(),
            worst_diff.to_f64()
        ),
    )
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a.rem_euclid(b);
        a = b;
        b = t;
    }
    a
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> (bool, String)>)> = vec![
        ("exact family expansions", Box::new(c1_exact_family_expansions)),
        ("grid duality", Box::new(c2_grid_duality)),
        ("partition series", Box::new(c3_partition_series)),
        ("analytic mock coefficients", Box::new(c4_mock_coefficients)),
        ("vanishing / normalization", Box::new(c5_vanishing_and_normalization)),
        ("Hecke recombination", Box::new(c6_hecke_identities)),
        ("symmetry / index raising", Box::new(c7_symmetry_and_index_raising)),
        ("shadow correspondence", Box::new(c8_shadow_correspondence)),
        ("special-function oracles", Box::new(c9_special_function_oracles)),
    ];
    // `cargo test --test acceptance -- <k>` reruns a single criterion.
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut all_pass = true;
    let mut ran = 0usize;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        ran += 1;
        let (pass, detail) = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("panicked: {msg}"))
        });
        all_pass &= pass;
        println!(
            "criterion {}: {} — {name}: {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} ({ran} criteria, {:.1} s total)",
        if all_pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    std::process::exit(if all_pass && ran > 0 { 0 } else { 1 });
}
