//! Analytic coefficient series: the Kloosterman–Bessel sums `L_{m,n}(5/4)`,
//! their order-derivative `𝓛_{m,n}`, the assembled expansions `h_m`, and the
//! exact-formula evaluation of the partition function `p(n)`.
//!
//! Provides:
//! * [`SeriesValue`] / [`BlockProfile`] — a truncated `c`-sum with its
//!   empirical tail estimate, convergence flag, and block-decay diagnostics;
//! * [`l_value`] — `L_{m,n}(5/4) = Σ_{c>0} K(m′,n′;c)/c · B(π√|mn|/(6c))`
//!   with `B = J_{3/2}` when `mn > 0` and `B = I_{3/2}` when `mn < 0`;
//! * [`l_deriv`] — `𝓛_{m,n}`, the same sum with the `s`-derivative kernel
//!   `2·∂_ν J_ν|_{ν=3/2}`;
//! * [`h_expansion`] — the coefficient lists of the weight 5/2 forms `h_m`:
//!   for `m < 0` the weakly holomorphic expansion, for `m > 0` the mock
//!   coefficients `p_m^+(n)` and the non-holomorphic `p_m^−(n)`;
//! * [`rademacher_p`] — `p(n)` by the convergent exact series, with a
//!   certified rounding margin;
//! * [`partition_oracle`] — `p(n)` by the pentagonal recurrence (exact).
//!
//! The `c`-sums carry no rigorous error bound; the tail estimate is the
//! documented heuristic (10 × the largest of the last ten block sums) and
//! `converged` additionally demands that the last three decades of `c` each
//! contribute below the context tolerance. Summation is ascending in `c`
//! with Neumaier-compensated accumulation, so results are deterministic.

use crate::error::{Error, Result};
use crate::kloosterman::KloostermanBatch;
use crate::prec::PrecisionContext;
use crate::qseries;
use crate::special::{beta_gamma, bessel_i_half, bessel_j_half, dj_dorder_at_3_2};
use rug::{ops::Pow, Float, Integer};

/// Truncation and precision parameters for one coefficient-series run.
#[derive(Debug, Clone)]
pub struct SeriesConfig {
    /// Largest modulus `c` included in the sum.
    pub c_max: u64,
    /// Fixed block length for decay diagnostics and tail estimation.
    pub block_size: u64,
    /// Optional smaller truncation for `I`-kernel (non-holomorphic side)
    /// sums, which converge much faster than the `J`-kernel ones; `None`
    /// means use `c_max` everywhere.
    pub i_kernel_c_max: Option<u64>,
    /// Working precision.
    pub prec: PrecisionContext,
}

impl SeriesConfig {
    /// Config with the given truncation and decimal digits; block size 100.
    pub fn new(c_max: u64, digits: u32) -> Self {
        SeriesConfig {
            c_max,
            block_size: 100,
            i_kernel_c_max: None,
            prec: PrecisionContext::new(digits),
        }
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig::new(5_000, crate::prec::DEFAULT_DIGITS)
    }
}

/// A truncated series over `c` together with its convergence diagnostics.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    /// The accumulated value at truncation.
    pub value: Float,
    /// Largest modulus included.
    pub c_max: u64,
    /// Heuristic tail bound: 10 × the largest |block sum| among the last
    /// ten blocks. Not rigorous (no error bound exists for these sums).
    pub tail_estimate: Float,
    /// True when the tail estimate is below the context tolerance and the
    /// last three decades of `c` each contributed below it.
    pub converged: bool,
}

impl SeriesValue {
    /// An exactly known value (no truncation involved).
    pub fn exact(value: Float) -> Self {
        let prec = value.prec();
        SeriesValue {
            value,
            c_max: 0,
            tail_estimate: Float::new(prec),
            converged: true,
        }
    }
}

/// Block-level decay data recorded during a sweep, for demonstrating
/// monotone block decay and for scale-relative tolerance checks.
#[derive(Debug, Clone)]
pub struct BlockProfile {
    /// Block length used.
    pub block_size: u64,
    /// Consecutive block sums, ascending in `c` (last one possibly partial).
    pub blocks: Vec<Float>,
    /// Per-decade contributions: (decade start, sum of terms with
    /// `c` in `[start, 10·start)`), last entry possibly partial.
    pub decade_sums: Vec<(u64, Float)>,
    /// Σ_c |term_c| — the absolute mass of the series, the natural scale
    /// against which a "vanishing" sum is judged.
    pub abs_mass: Float,
}

impl BlockProfile {
    /// Largest |block sum| within each decade of `c`, ascending; used to
    /// demonstrate monotone decay of the series terms.
    pub fn decade_max_blocks(&self) -> Vec<(u64, Float)> {
        let mut out: Vec<(u64, Float)> = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            // Block i covers c in (i·B, (i+1)·B]; attribute it to the decade
            // of its upper end.
            let c_end = (i as u64 + 1) * self.block_size;
            let mut decade = 1u64;
            while decade * 10 <= c_end {
                decade *= 10;
            }
            let abs = b.clone().abs();
            match out.last_mut() {
                Some((d, m)) if *d == decade => {
                    if abs > *m {
                        *m = abs;
                    }
                }
                _ => out.push((decade, abs)),
            }
        }
        out
    }
}

/// Internal accumulator for one pair during a sweep.
struct Accumulator {
    sum: Float,
    comp: Float,
    abs_mass: Float,
    block_acc: Float,
    blocks: Vec<Float>,
    decade_acc: Float,
    decade_start: u64,
    decades: Vec<(u64, Float)>,
}

impl Accumulator {
    fn new(bits: u32) -> Self {
        Accumulator {
            sum: Float::new(bits),
            comp: Float::new(bits),
            abs_mass: Float::new(bits),
            block_acc: Float::new(bits),
            blocks: Vec::new(),
            decade_acc: Float::new(bits),
            decade_start: 1,
            decades: Vec::new(),
        }
    }

    /// Neumaier-compensated add of one term, plus block/decade bookkeeping.
    fn add(&mut self, term: &Float) {
        let t = self.sum.clone() + term;
        if self.sum.clone().abs() >= term.clone().abs() {
            self.comp += (self.sum.clone() - &t) + term;
        } else {
            self.comp += (term.clone() - &t) + &self.sum;
        }
        self.sum = t;
        self.abs_mass += term.clone().abs();
        self.block_acc += term;
        self.decade_acc += term;
    }

    fn close_block(&mut self) {
        self.blocks.push(self.block_acc.clone());
        let bits = self.block_acc.prec();
        self.block_acc = Float::new(bits);
    }

    fn close_decade(&mut self, next_start: u64) {
        self.decades.push((self.decade_start, self.decade_acc.clone()));
        let bits = self.decade_acc.prec();
        self.decade_acc = Float::new(bits);
        self.decade_start = next_start;
    }

    fn finish(mut self, c_max: u64, block_partial: bool, tol: &Float) -> (SeriesValue, BlockProfile) {
        if block_partial && !self.block_acc.is_zero() {
            self.blocks.push(self.block_acc.clone());
        }
        if !self.decade_acc.is_zero() || self.decades.is_empty() {
            self.decades.push((self.decade_start, self.decade_acc.clone()));
        }
        let bits = self.sum.prec();
        let value = self.sum + &self.comp;
        let mut tail = Float::new(bits);
        for b in self.blocks.iter().rev().take(10) {
            let abs = b.clone().abs();
            if abs > tail {
                tail = abs;
            }
        }
        tail *= 10u32;
        let mut converged = tail < *tol;
        let last3 = self.decades.iter().rev().take(3).collect::<Vec<_>>();
        if last3.len() < 3 {
            converged = false;
        } else {
            for (_, d) in last3 {
                if !(d.clone().abs() < *tol) {
                    converged = false;
                }
            }
        }
        (
            SeriesValue { value, c_max, tail_estimate: tail, converged },
            BlockProfile {
                block_size: 0, // caller fills in
                blocks: self.blocks,
                decade_sums: self.decades,
                abs_mass: self.abs_mass,
            },
        )
    }
}

/// Run one ascending sweep over `c = 1..=c_max`, evaluating
/// `Σ K(m′,n′;c) · kernel(i, c)` for every pair `i`.
fn sweep<F>(
    pairs: &[(i64, i64)],
    mut kernel: F,
    c_max: u64,
    block_size: u64,
    prec: &PrecisionContext,
) -> Vec<(SeriesValue, BlockProfile)>
where
    F: FnMut(usize, u64) -> Float,
{
    assert!(c_max >= 1 && block_size >= 1);
    let mut batch = KloostermanBatch::new(pairs, prec);
    let mut accs: Vec<Accumulator> = (0..pairs.len()).map(|_| Accumulator::new(prec.bits)).collect();
    let mut next_decade = 10u64;
    for c in 1..=c_max {
        let row = batch.row(c);
        for (i, k) in row.into_iter().enumerate() {
            let term = k * kernel(i, c);
            accs[i].add(&term);
        }
        if c % block_size == 0 {
            for a in &mut accs {
                a.close_block();
            }
        }
        // Decade k covers [10^k, 10^{k+1}); close it on its last modulus.
        if c + 1 == next_decade {
            for a in &mut accs {
                a.close_decade(next_decade);
            }
            next_decade *= 10;
        }
    }
    let block_partial = c_max % block_size != 0;
    accs.into_iter()
        .map(|a| {
            let (sv, mut bp) = a.finish(c_max, block_partial, &prec.tol);
            bp.block_size = block_size;
            (sv, bp)
        })
        .collect()
}

fn require_grading(label: &str, v: i64) -> Result<()> {
    if v == 0 || v.rem_euclid(24) != 1 {
        return Err(Error::InvalidIndex {
            m: v,
            reason: "index must be nonzero and ≡ 1 (mod 24)",
        });
    }
    let _ = label;
    Ok(())
}

/// `π√|mn|/6` at working precision (the kernel argument is this over `c`).
fn kernel_scale(m: i64, n: i64, prec: &PrecisionContext) -> Float {
    let mn = (i128::from(m) * i128::from(n)).unsigned_abs();
    let sq = Float::with_val(prec.bits, Integer::from(mn)).sqrt();
    prec.pi() * sq / 6u32
}

/// `L_{m,n}(5/4) = Σ_{c>0} K(m′,n′;c)/c · B(π√|mn|/(6c))`, where
/// `m′ = (m−1)/24`, `n′ = (n−1)/24`, and the kernel `B` is `J_{3/2}` for
/// `mn > 0` and `I_{3/2}` for `mn < 0`. Returns the value with decay
/// diagnostics; `converged = false` is not an error (the value and its tail
/// estimate are still reported).
pub fn l_value_profiled(m: i64, n: i64, cfg: &SeriesConfig) -> Result<(SeriesValue, BlockProfile)> {
    require_grading("m", m)?;
    require_grading("n", n)?;
    let prec = &cfg.prec;
    let scale = kernel_scale(m, n, prec);
    let positive = (m > 0) == (n > 0);
    let pair = [((m - 1) / 24, (n - 1) / 24)];
    let c_max = if positive {
        cfg.c_max
    } else {
        cfg.i_kernel_c_max.unwrap_or(cfg.c_max)
    };
    let mut out = sweep(
        &pair,
        |_, c| {
            let x = scale.clone() / c;
            let b = if positive {
                bessel_j_half(3, &x, prec).expect("positive argument")
            } else {
                bessel_i_half(3, &x, prec).expect("positive argument")
            };
            b / c
        },
        c_max,
        cfg.block_size,
        prec,
    );
    Ok(out.pop().expect("one pair"))
}

/// [`l_value_profiled`] without the block diagnostics.
pub fn l_value(m: i64, n: i64, cfg: &SeriesConfig) -> Result<SeriesValue> {
    Ok(l_value_profiled(m, n, cfg)?.0)
}

/// `𝓛_{m,n} = Σ_{c>0} K(m′,n′;c)/c · 2·∂_ν J_ν(π√(mn)/(6c))|_{ν=3/2}` for
/// positive `m, n ≡ 1 (mod 24)` (the `s`-derivative of the `J` kernel at
/// `s = 5/4` is twice the `ν`-derivative).
pub fn l_deriv_profiled(m: i64, n: i64, cfg: &SeriesConfig) -> Result<(SeriesValue, BlockProfile)> {
    require_grading("m", m)?;
    require_grading("n", n)?;
    if m < 0 || n < 0 {
        return Err(Error::InvalidParameter(
            "the order-derivative series is defined for positive indices".into(),
        ));
    }
    let prec = &cfg.prec;
    let scale = kernel_scale(m, n, prec);
    let pair = [((m - 1) / 24, (n - 1) / 24)];
    let mut out = sweep(
        &pair,
        |_, c| {
            let x = scale.clone() / c;
            let dj = dj_dorder_at_3_2(&x, prec).expect("positive argument");
            dj * 2u32 / c
        },
        cfg.c_max,
        cfg.block_size,
        prec,
    );
    Ok(out.pop().expect("one pair"))
}

/// [`l_deriv_profiled`] without the block diagnostics.
pub fn l_deriv(m: i64, n: i64, cfg: &SeriesConfig) -> Result<SeriesValue> {
    Ok(l_deriv_profiled(m, n, cfg)?.0)
}

/// One coefficient of a [`MaassFormExpansion`].
#[derive(Debug, Clone)]
pub struct CoefficientEntry {
    /// Exponent numerator `n` (the term is `q^{n/24}`, or `β(ny)q^{−n/24}`
    /// on the non-holomorphic side).
    pub n: i64,
    /// The real series value with diagnostics.
    pub series: SeriesValue,
    /// Exact imaginary part, present only on the `n = m` holomorphic
    /// coefficient for `m > 0` (where it equals `−(4/3)√π`); kept separate
    /// from the floating real part rather than folded into one number.
    pub imag_exact: Option<Float>,
}

/// Coefficient lists of `h_m` computed by the analytic route.
///
/// For `m < 0`: `holo` starts with the exact leading 1 at exponent `m`,
/// followed by `p_m^+(n) = −2π|n/m|^{3/4}·L_{m,n}(5/4)` for `n > 0`;
/// `nonholo` is empty.
///
/// For `m > 0`: `holo` holds `p_m^+(n) = −(8√π/3)(n/m)^{3/4}·𝓛_{m,n}` (the
/// `n = m` entry additionally carrying the exact imaginary part), and
/// `nonholo` holds `p_m^−(n) = −2π(n/m)^{3/4}·L_{m,−n}(5/4)` for `n > 0 ≡ 23
/// (mod 24)`, the coefficients multiplying `β(ny)q^{−n/24}`. The remaining
/// non-holomorphic term `i·β(−my)q^{m/24}` has coefficient exactly `i`,
/// recorded by `unit_nonholo_leading`.
#[derive(Debug, Clone)]
pub struct MaassFormExpansion {
    /// Index `m ≡ 1 (mod 24)`.
    pub m: i64,
    /// Holomorphic-part coefficients, ascending in exponent.
    pub holo: Vec<CoefficientEntry>,
    /// Non-holomorphic coefficients (empty for `m < 0`).
    pub nonholo: Vec<CoefficientEntry>,
    /// True exactly when `m > 0`: the `q^{m/24}` non-holomorphic term
    /// carries the exact coefficient `i` (times `β(−my)`).
    pub unit_nonholo_leading: bool,
}

/// Assemble `n_terms` coefficients of `h_m` by the analytic route.
///
/// For `m > 0` both parts are produced in single batched sweeps (all
/// holomorphic coefficients share one pass over `c`, as do all
/// non-holomorphic ones); per-coefficient diagnostics are preserved.
pub fn h_expansion(m: i64, n_terms: u32, cfg: &SeriesConfig) -> Result<MaassFormExpansion> {
    require_grading("m", m)?;
    if n_terms == 0 {
        return Err(Error::InvalidParameter("n_terms must be >= 1".into()));
    }
    let prec = &cfg.prec;
    let bits = prec.bits;
    let two_pi = prec.pi() * 2u32;
    let sqrt_pi = prec.pi().sqrt();
    if m < 0 {
        // Leading exact term, then the I-kernel series.
        let mut holo = vec![CoefficientEntry {
            n: m,
            series: SeriesValue::exact(Float::with_val(bits, 1)),
            imag_exact: None,
        }];
        let count = (n_terms - 1) as usize;
        if count > 0 {
            let pairs: Vec<(i64, i64)> = (0..count).map(|k| ((m - 1) / 24, k as i64)).collect();
            let scales: Vec<Float> =
                (0..count).map(|k| kernel_scale(m, 24 * k as i64 + 1, prec)).collect();
            let c_max = cfg.i_kernel_c_max.unwrap_or(cfg.c_max);
            let results = sweep(
                &pairs,
                |i, c| {
                    let x = scales[i].clone() / c;
                    bessel_i_half(3, &x, prec).expect("positive argument") / c
                },
                c_max,
                cfg.block_size,
                prec,
            );
            for (k, (sv, _)) in results.into_iter().enumerate() {
                let n = 24 * k as i64 + 1;
                // p_m^+(n) = −2π |n/m|^{3/4} L_{m,n}
                let ratio = Float::with_val(bits, n) / Float::with_val(bits, -m);
                let factor = -two_pi.clone() * ratio.pow(Float::with_val(bits, 0.75f64));
                let series = SeriesValue {
                    value: sv.value * &factor,
                    c_max: sv.c_max,
                    tail_estimate: sv.tail_estimate * factor.abs(),
                    converged: sv.converged,
                };
                holo.push(CoefficientEntry { n, series, imag_exact: None });
            }
        }
        return Ok(MaassFormExpansion { m, holo, nonholo: Vec::new(), unit_nonholo_leading: false });
    }

    // m > 0: J-derivative kernel for the holomorphic part…
    let holo_ns: Vec<i64> = (0..n_terms as i64).map(|k| 24 * k + 1).collect();
    let pairs: Vec<(i64, i64)> = holo_ns.iter().map(|n| ((m - 1) / 24, (n - 1) / 24)).collect();
    let scales: Vec<Float> = holo_ns.iter().map(|n| kernel_scale(m, *n, prec)).collect();
    let results = sweep(
        &pairs,
        |i, c| {
            let x = scales[i].clone() / c;
            dj_dorder_at_3_2(&x, prec).expect("positive argument") * 2u32 / c
        },
        cfg.c_max,
        cfg.block_size,
        prec,
    );
    let mut holo = Vec::with_capacity(holo_ns.len());
    for (n, (sv, _)) in holo_ns.iter().zip(results) {
        // p_m^+(n) = −(8√π/3)(n/m)^{3/4} 𝓛_{m,n}
        let ratio = Float::with_val(bits, *n) / Float::with_val(bits, m);
        let factor = -(sqrt_pi.clone() * 8u32 / 3u32) * ratio.pow(Float::with_val(bits, 0.75f64));
        let series = SeriesValue {
            value: sv.value * &factor,
            c_max: sv.c_max,
            tail_estimate: sv.tail_estimate * factor.abs(),
            converged: sv.converged,
        };
        let imag_exact =
            if *n == m { Some(-(sqrt_pi.clone() * 4u32 / 3u32)) } else { None };
        holo.push(CoefficientEntry { n: *n, series, imag_exact });
    }

    // …and the I-kernel for the non-holomorphic part.
    let nonholo = h_nonholo_coefficients(m, n_terms, cfg)?;
    Ok(MaassFormExpansion { m, holo, nonholo, unit_nonholo_leading: true })
}

/// The non-holomorphic coefficients `p_m^−(n)` of `h_m` (`m > 0`) alone:
/// `n_terms` values at `n = 23, 47, …`, from one batched I-kernel sweep.
/// These converge far faster than the holomorphic part, so callers that only
/// need them (the shadow-correspondence check, for instance) can skip the
/// expensive order-derivative sweep entirely.
pub fn h_nonholo_coefficients(
    m: i64,
    n_terms: u32,
    cfg: &SeriesConfig,
) -> Result<Vec<CoefficientEntry>> {
    require_grading("m", m)?;
    if m < 0 {
        return Err(Error::InvalidIndex {
            m,
            reason: "non-holomorphic coefficients exist only for positive index",
        });
    }
    let prec = &cfg.prec;
    let bits = prec.bits;
    let two_pi = prec.pi() * 2u32;
    // Second index −n ≡ 1 (mod 24).
    let nonholo_ns: Vec<i64> = (0..n_terms as i64).map(|k| 24 * k + 23).collect();
    let pairs: Vec<(i64, i64)> =
        nonholo_ns.iter().map(|n| ((m - 1) / 24, (-n - 1) / 24)).collect();
    let scales: Vec<Float> = nonholo_ns.iter().map(|n| kernel_scale(m, -n, prec)).collect();
    let c_max = cfg.i_kernel_c_max.unwrap_or(cfg.c_max);
    let results = sweep(
        &pairs,
        |i, c| {
            let x = scales[i].clone() / c;
            bessel_i_half(3, &x, prec).expect("positive argument") / c
        },
        c_max,
        cfg.block_size,
        prec,
    );
    let mut nonholo = Vec::with_capacity(nonholo_ns.len());
    for (n, (sv, _)) in nonholo_ns.iter().zip(results) {
        // p_m^−(n) = −2π (n/m)^{3/4} L_{m,−n}
        let ratio = Float::with_val(bits, *n) / Float::with_val(bits, m);
        let factor = -two_pi.clone() * ratio.pow(Float::with_val(bits, 0.75f64));
        let series = SeriesValue {
            value: sv.value * &factor,
            c_max: sv.c_max,
            tail_estimate: sv.tail_estimate * factor.abs(),
            converged: sv.converged,
        };
        nonholo.push(CoefficientEntry { n: *n, series, imag_exact: None });
    }
    Ok(nonholo)
}

/// The value of `β(y) = Γ(−3/2, πy/6)` — re-exported convenience so CLI
/// consumers of [`MaassFormExpansion`] can reconstruct the non-holomorphic
/// terms `p_m^−(n)·β(ny)q^{−n/24}` at chosen `y`.
pub fn beta(y: &Float, prec: &PrecisionContext) -> Result<Float> {
    beta_gamma(y, prec)
}

/// Result of evaluating the exact partition-number series.
#[derive(Debug, Clone)]
pub struct RademacherValue {
    /// The truncated series value.
    pub value: Float,
    /// Nearest integer to the value.
    pub rounded: Integer,
    /// Largest modulus included.
    pub c_max: u64,
    /// Distance headroom `0.5 − |value − rounded|`.
    pub margin: Float,
    /// Heuristic tail estimate (same block rule as [`SeriesValue`]).
    pub tail_estimate: Float,
    /// True when `|value − rounded| + 10·tail_estimate < 1/2`, i.e. the
    /// rounding is certified under the heuristic tail.
    pub certified: bool,
}

/// `p(n)` by the convergent exact series
/// `p(n) = (π√2)^{-1} Σ_{c>0} K(0,−n;c)·√c · d/dn[sinh(a√w)/√w]`,
/// `w = n − 1/24`, `a = (π/c)√(2/3)`, with the derivative in closed form:
/// `(a·cosh(a√w)/w − sinh(a√w)/w^{3/2})/2`.
pub fn rademacher_p(n: u64, cfg: &SeriesConfig) -> Result<RademacherValue> {
    if n < 1 {
        return Err(Error::InvalidParameter("partition argument must be >= 1".into()));
    }
    let prec = &cfg.prec;
    let bits = prec.bits;
    let w = Float::with_val(bits, 24 * n - 1) / 24u32;
    let sqrt_w = w.clone().sqrt();
    let a_num = prec.pi() * (Float::with_val(bits, 2) / 3u32).sqrt();
    let front = (prec.pi() * Float::with_val(bits, 2).sqrt()).recip();
    let pair = [(0i64, -(n as i64))];
    // Keep at least ~50 blocks so the last-blocks tail heuristic samples the
    // genuinely late, exponentially small terms even at small `c_max`.
    let block_size = (cfg.c_max / 50).clamp(1, cfg.block_size);
    let mut out = sweep(
        &pair,
        |_, c| {
            let a = a_num.clone() / c;
            let arg = a.clone() * &sqrt_w;
            let (sinh, cosh) = arg.sinh_cosh(Float::new(bits));
            let bracket = (a * cosh / &w - sinh / (w.clone() * &sqrt_w)) / 2u32;
            front.clone() * Float::with_val(bits, c).sqrt() * bracket
        },
        cfg.c_max,
        block_size,
        prec,
    );
    let (sv, _) = out.pop().expect("one pair");
    let rounded = sv
        .value
        .clone()
        .round()
        .to_integer()
        .ok_or_else(|| Error::InvalidParameter("series value is not finite".into()))?;
    let diff = (sv.value.clone() - Float::with_val(bits, &rounded)).abs();
    let margin = Float::with_val(bits, 0.5f64) - &diff;
    let certified = {
        let budget = diff + sv.tail_estimate.clone() * 10u32;
        budget < 0.5f64
    };
    Ok(RademacherValue {
        value: sv.value,
        rounded,
        c_max: sv.c_max,
        margin,
        tail_estimate: sv.tail_estimate,
        certified,
    })
}

/// `p(n)` by Euler's pentagonal recurrence, exactly — the oracle against
/// which the series route is checked.
pub fn partition_oracle(n: u64) -> Integer {
    qseries::partition_numbers(n).pop().expect("nonempty table")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_oracle_small_values() {
        let known = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, p) in known.iter().enumerate() {
            assert_eq!(partition_oracle(n as u64), *p);
        }
    }

    #[test]
    fn rademacher_p1_certified() {
        let cfg = SeriesConfig::new(50, 30);
        let r = rademacher_p(1, &cfg).unwrap();
        assert_eq!(r.rounded, 1);
        assert!(r.certified, "p(1) rounding must certify at c_max=50");
    }

    #[test]
    fn l_value_rejects_bad_grading() {
        let cfg = SeriesConfig::new(10, 20);
        assert!(l_value(2, 25, &cfg).is_err());
        assert!(l_value(1, 0, &cfg).is_err());
    }

    #[test]
    fn decade_closing_matches_total() {
        let cfg = SeriesConfig::new(250, 20);
        let (sv, profile) = l_value_profiled(1, -23, &cfg).unwrap();
        let mut total = Float::new(cfg.prec.bits);
        for (_, d) in &profile.decade_sums {
            total += d;
        }
        let diff = (total - &sv.value).abs();
        assert!(diff < 1e-10, "decade sums must add up to the value");
    }
}
