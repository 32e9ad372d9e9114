//! Command-line interface for the `maass` binary.
//!
//! Subcommands: `basis` (exact or analytic family coefficients), `partition`
//! (Rademacher series or pentagonal recurrence), `mock-coeff` (one analytic
//! holomorphic coefficient with diagnostics), `kloosterman` (a single sum),
//! and `verify` (the identity checks: `hecke`, `duality`, `symmetry`,
//! `vanishing`, `xi`, `cor5`).
//!
//! Exit codes: `0` success / verification pass, `1` verification failure,
//! `2` usage or parameter error, `3` a requested value did not converge and
//! `--allow-unconverged` was not given.
//!
//! Global flags `--digits`, `--cmax`, `--format {json,csv,pretty}`,
//! `--allow-unconverged`. When `--digits` is absent the `MAASS_DIGITS`
//! environment variable supplies the default. Output is deterministic; in
//! JSON mode every big integer is a decimal string and a parse → re-serialize
//! round trip is byte-identical.

use crate::error::Error;
use crate::hecke::{self, Report};
use crate::kloosterman::{kloosterman, KloostermanContext};
use crate::poincare::{
    h_expansion, l_deriv_profiled, partition_oracle, rademacher_p, CoefficientEntry,
    SeriesConfig,
};
use crate::prec::PrecisionContext;
use crate::qseries::{self, BasisKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{ops::Pow, Float};
use serde::Serialize;
use std::ffi::OsString;

/// Digits used when neither `--digits` nor `MAASS_DIGITS` is given.
const DEFAULT_CLI_DIGITS: u32 = 30;
/// Default truncation for the fast (I-kernel) coefficient series.
const DEFAULT_I_KERNEL_CMAX: u64 = 8_000;

/// Exit status for a verification that ran and failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for usage or parameter errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for unconverged results without `--allow-unconverged`.
pub const EXIT_UNCONVERGED: i32 = 3;

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Compact JSON, big integers as decimal strings.
    Json,
    /// Comma-separated rows with a header line.
    Csv,
    /// Human-readable lines.
    Pretty,
}

/// Resolved run parameters shared by all subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// First index (family / row), when the command takes one.
    pub m: Option<i64>,
    /// Second index (column), when the command takes one.
    pub n: Option<i64>,
    /// Hecke prime, when the command takes one.
    pub ell: Option<u64>,
    /// Number of coefficients to produce.
    pub terms: u32,
    /// Truncation bound on the modulus `c`.
    pub c_max: u64,
    /// Working decimal precision.
    pub digits: u32,
    /// Output format.
    pub format: Format,
    /// Accept unconverged series values without exiting 3.
    pub allow_unconverged: bool,
}

impl RunConfig {
    fn series_config(&self) -> SeriesConfig {
        let mut cfg = SeriesConfig::new(self.c_max, self.digits);
        cfg.i_kernel_c_max = Some(self.c_max.min(DEFAULT_I_KERNEL_CMAX));
        cfg
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "maass",
    version,
    about = "Dual bases of weak harmonic Maass forms: exact q-series and \
             Kloosterman/Bessel coefficient series, with cross-verification."
)]
struct Cli {
    /// Decimal digits of working precision (default: $MAASS_DIGITS or 30).
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Truncation bound for coefficient series over the modulus c.
    #[arg(long, global = true)]
    cmax: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Emit unconverged values (flagged converged:false) with exit status 0.
    #[arg(long, global = true)]
    allow_unconverged: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print coefficients of a basis form g_m or h_m.
    Basis {
        /// Which family: the weight -1/2 forms g, or the weight 5/2 forms h.
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        index: IndexArg,
        /// How many coefficients (leading term included).
        #[arg(long, default_value_t = 8)]
        terms: u32,
    },
    /// Evaluate the partition function p(n).
    Partition {
        /// The argument n >= 1.
        #[arg(long)]
        n: u64,
        /// Evaluation route.
        #[arg(long, value_enum, default_value_t = Method::Rademacher)]
        method: Method,
    },
    /// One analytic holomorphic coefficient p_m^+(n), with diagnostics.
    MockCoeff {
        /// Index of the form (m ≡ 1 mod 24, positive).
        #[arg(long)]
        m: i64,
        /// Coefficient exponent numerator (n ≡ 1 mod 24, positive).
        #[arg(long)]
        n: i64,
    },
    /// Evaluate a single eta-multiplier Kloosterman sum K(m, n; c).
    Kloosterman {
        /// First index.
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Second index.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Modulus c >= 1.
        #[arg(long)]
        c: u64,
    },
    /// Run an identity check; exits 0 exactly when the check passes.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Debug, Args)]
struct IndexArg {
    /// Form index m ≡ 1 (mod 24).
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    /// Weakly holomorphic weight -1/2 family (positive index).
    G,
    /// Weight 5/2 family (negative index exact, positive index analytic).
    H,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    /// Exact-arithmetic Kloosterman/Bessel series with certified rounding.
    Rademacher,
    /// Pentagonal-number recurrence (exact).
    Recurrence,
}

#[derive(Debug, Subcommand)]
enum Check {
    /// Hecke decomposition of a basis form against its family, exact.
    Hecke {
        /// Form index m ≡ 1 (mod 24); negative for the h side.
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Hecke prime >= 5.
        #[arg(long, default_value_t = 5)]
        ell: u64,
        /// Coefficients of the image to verify.
        #[arg(long, default_value_t = 15)]
        terms: u32,
    },
    /// Grid duality of Fourier coefficients, exact.
    Duality {
        /// Number of h-side rows (indices -23, -47, …).
        #[arg(long, default_value_t = 4)]
        rows: u32,
        /// Number of g-side columns (indices 1, 25, …).
        #[arg(long, default_value_t = 4)]
        cols: u32,
    },
    /// Inner-product symmetry n^{3/2} p_n^+(m) = m^{3/2} p_m^+(n).
    Symmetry {
        /// First index (positive, ≡ 1 mod 24).
        #[arg(long)]
        m: i64,
        /// Second index (positive, ≡ 1 mod 24, distinct from m).
        #[arg(long)]
        n: i64,
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Off-diagonal vanishing / diagonal normalization of 2π·L_{m,n}(5/4).
    Vanishing {
        /// First index (positive, ≡ 1 mod 24).
        #[arg(long)]
        m: i64,
        /// Second index (positive, ≡ 1 mod 24).
        #[arg(long)]
        n: i64,
    },
    /// Shadow correspondence: h_1 non-holomorphic coefficients against the
    /// exact g_1 coefficients.
    Xi {
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Index-raising identity p_m^+(ℓ²n) = ℓ³ p_{ℓ²m}^+(n).
    Cor5 {
        /// Base form index.
        #[arg(long, default_value_t = 1)]
        m: i64,
        /// Coefficient index.
        #[arg(long)]
        n: i64,
        /// Hecke prime >= 5.
        #[arg(long, default_value_t = 7)]
        ell: u64,
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
}

#[derive(Serialize)]
struct TermOut {
    numerator: i64,
    value: String,
}

#[derive(Serialize)]
struct BasisExactOut {
    family: String,
    m: i64,
    terms: Vec<TermOut>,
}

// Serialized fields are declared alphabetically in the output structs so a
// parse → re-serialize round trip through sorted-key JSON maps is
// byte-identical.
#[derive(Serialize)]
struct CoeffOut {
    c_max: u64,
    converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    imag_exact: Option<String>,
    n: i64,
    tail_estimate: String,
    value: String,
}

#[derive(Serialize)]
struct BasisAnalyticOut {
    family: String,
    holo: Vec<CoeffOut>,
    m: i64,
    nonholo: Vec<CoeffOut>,
    unit_nonholo_leading: bool,
}

#[derive(Serialize)]
struct PartitionOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    c_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    margin: Option<String>,
    method: String,
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    series_value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_estimate: Option<String>,
    value: String,
}

#[derive(Serialize)]
struct MockOut {
    c_max: u64,
    converged: bool,
    m: i64,
    n: i64,
    tail_estimate: String,
    value: String,
}

#[derive(Serialize)]
struct KloostermanOut {
    c: u64,
    m: i64,
    n: i64,
    value: String,
}

/// Rendered output plus the process exit status.
struct Outcome {
    text: String,
    exit: i32,
}

// For rug floats the `e`-format precision counts significant digits, not
// digits after the point.
fn format_float(x: &Float, digits: u32) -> String {
    format!("{:.*e}", digits as usize, x)
}

fn coeff_out(entry: &CoefficientEntry, digits: u32) -> CoeffOut {
    CoeffOut {
        n: entry.n,
        value: format_float(&entry.series.value, digits),
        imag_exact: entry.imag_exact.as_ref().map(|v| format_float(v, digits)),
        c_max: entry.series.c_max,
        tail_estimate: format_float(&entry.series.tail_estimate, digits),
        converged: entry.series.converged,
    }
}

fn render<T: Serialize>(value: &T, format: Format, pretty: String, csv: String) -> String {
    match format {
        Format::Json => serde_json::to_string(value).expect("serializable output"),
        Format::Csv => csv,
        Format::Pretty => pretty,
    }
}

fn error_exit(err: &Error) -> i32 {
    match err {
        Error::NotConverged { .. } => EXIT_UNCONVERGED,
        _ => EXIT_USAGE,
    }
}

/// Run the CLI on the given argument list and return the exit status.
/// Output goes to stdout, diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Clap renders its own message; --help and --version exit 0,
            // usage errors exit 2.
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let digits = cli.digits.unwrap_or_else(|| {
        std::env::var("MAASS_DIGITS")
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .unwrap_or(DEFAULT_CLI_DIGITS)
    });
    if digits < 15 {
        eprintln!("error: --digits must be at least 15");
        return EXIT_USAGE;
    }
    match dispatch(&cli, digits) {
        Ok(out) => {
            // A reader that stops consuming (e.g. `maass … | head`) closes
            // the pipe; the result was still produced, so exit normally
            // instead of panicking on the failed write.
            use std::io::Write;
            let stdout = std::io::stdout();
            if let Err(e) = writeln!(stdout.lock(), "{}", out.text) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
            out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit(&e)
        }
    }
}

fn dispatch(cli: &Cli, digits: u32) -> crate::error::Result<Outcome> {
    match &cli.cmd {
        Cmd::Basis { family, index, terms } => {
            let rc = RunConfig {
                m: Some(index.m),
                n: None,
                ell: None,
                terms: *terms,
                c_max: cli.cmax.unwrap_or(5_000),
                digits,
                format: cli.format,
                allow_unconverged: cli.allow_unconverged,
            };
            cmd_basis(*family, &rc)
        }
        Cmd::Partition { n, method } => {
            let default_cmax = 20 + 6 * ((*n as f64).sqrt().ceil() as u64 + 1);
            let rc = RunConfig {
                m: None,
                n: Some(*n as i64),
                ell: None,
                terms: 0,
                c_max: cli.cmax.unwrap_or(default_cmax),
                digits,
                format: cli.format,
                allow_unconverged: cli.allow_unconverged,
            };
            cmd_partition(*n, *method, &rc)
        }
        Cmd::MockCoeff { m, n } => {
            let rc = RunConfig {
                m: Some(*m),
                n: Some(*n),
                ell: None,
                terms: 1,
                c_max: cli.cmax.unwrap_or(5_000),
                digits,
                format: cli.format,
                allow_unconverged: cli.allow_unconverged,
            };
            cmd_mock_coeff(*m, *n, &rc)
        }
        Cmd::Kloosterman { m, n, c } => {
            let rc = RunConfig {
                m: Some(*m),
                n: Some(*n),
                ell: None,
                terms: 0,
                c_max: *c,
                digits,
                format: cli.format,
                allow_unconverged: cli.allow_unconverged,
            };
            cmd_kloosterman(*m, *n, *c, &rc)
        }
        Cmd::Verify { check } => cmd_verify(check, cli, digits),
    }
}

fn csv_terms(terms: &[TermOut]) -> String {
    let mut s = String::from("numerator,value");
    for t in terms {
        s.push_str(&format!("\n{},{}", t.numerator, t.value));
    }
    s
}

fn pretty_terms(label: &str, m: i64, terms: &[TermOut]) -> String {
    let mut s = format!("{label}_{m}:");
    for t in terms {
        s.push_str(&format!("\n  q^({}/24)  {}", t.numerator, t.value));
    }
    s
}

/// `basis g --m …` / `basis h --m …`.
fn cmd_basis(family: Family, rc: &RunConfig) -> crate::error::Result<Outcome> {
    let m = rc.m.expect("basis index");
    if rc.terms == 0 {
        return Err(Error::InvalidParameter("--terms must be >= 1".into()));
    }
    match family {
        Family::G => {
            let terms = exact_terms(m, BasisKind::G, rc.terms)?;
            let out = BasisExactOut { family: "g".into(), m, terms };
            let text = render(
                &out,
                rc.format,
                pretty_terms("g", m, &out.terms),
                csv_terms(&out.terms),
            );
            Ok(Outcome { text, exit: 0 })
        }
        Family::H if m < 0 => {
            let terms = exact_terms(m, BasisKind::HNeg, rc.terms)?;
            let out = BasisExactOut { family: "h".into(), m, terms };
            let text = render(
                &out,
                rc.format,
                pretty_terms("h", m, &out.terms),
                csv_terms(&out.terms),
            );
            Ok(Outcome { text, exit: 0 })
        }
        Family::H => {
            let cfg = rc.series_config();
            let exp = h_expansion(m, rc.terms, &cfg)?;
            let holo: Vec<CoeffOut> = exp.holo.iter().map(|e| coeff_out(e, rc.digits)).collect();
            let nonholo: Vec<CoeffOut> =
                exp.nonholo.iter().map(|e| coeff_out(e, rc.digits)).collect();
            let all_converged =
                holo.iter().chain(nonholo.iter()).all(|c| c.converged);
            let out = BasisAnalyticOut {
                family: "h".into(),
                m,
                holo,
                nonholo,
                unit_nonholo_leading: exp.unit_nonholo_leading,
            };
            let mut pretty = format!("h_{m} (analytic):\n  holomorphic part:");
            for c in &out.holo {
                pretty.push_str(&format!(
                    "\n    q^({}/24)  {}{}  [c_max {}, tail {}, converged {}]",
                    c.n,
                    c.value,
                    c.imag_exact
                        .as_ref()
                        .map(|v| format!(" + i*({v})"))
                        .unwrap_or_default(),
                    c.c_max,
                    c.tail_estimate,
                    c.converged
                ));
            }
            pretty.push_str("\n  non-holomorphic part (times beta(n*y) q^(-n/24)):");
            for c in &out.nonholo {
                pretty.push_str(&format!(
                    "\n    n = {}  {}  [c_max {}, tail {}, converged {}]",
                    c.n, c.value, c.c_max, c.tail_estimate, c.converged
                ));
            }
            pretty.push_str("\n  plus i * beta(-m*y) q^(m/24) with exact unit coefficient");
            let mut csv = String::from("part,n,value,imag_exact,c_max,tail_estimate,converged");
            for c in &out.holo {
                csv.push_str(&format!(
                    "\nholo,{},{},{},{},{},{}",
                    c.n,
                    c.value,
                    c.imag_exact.clone().unwrap_or_default(),
                    c.c_max,
                    c.tail_estimate,
                    c.converged
                ));
            }
            for c in &out.nonholo {
                csv.push_str(&format!(
                    "\nnonholo,{},{},,{},{},{}",
                    c.n, c.value, c.c_max, c.tail_estimate, c.converged
                ));
            }
            let text = render(&out, rc.format, pretty, csv);
            let exit = if all_converged || rc.allow_unconverged { 0 } else { EXIT_UNCONVERGED };
            Ok(Outcome { text, exit })
        }
    }
}

/// The leading coefficient plus the canonical positive-exponent coefficients
/// of an exact basis member.
fn exact_terms(m: i64, kind: BasisKind, terms: u32) -> crate::error::Result<Vec<TermOut>> {
    let positive_start = match kind {
        BasisKind::G => 23,
        BasisKind::HNeg => 1,
    };
    let last = positive_start + 24 * (i64::from(terms) - 2).max(0);
    let f = match kind {
        BasisKind::G => qseries::basis_g(m, last.max(1))?,
        BasisKind::HNeg => qseries::basis_h_neg(m, last.max(1))?,
    };
    let lead = match kind {
        BasisKind::G => -m,
        BasisKind::HNeg => m,
    };
    let mut out = vec![TermOut { numerator: lead, value: f.coeff(lead).to_string() }];
    for k in 0..i64::from(terms) - 1 {
        let n = positive_start + 24 * k;
        out.push(TermOut { numerator: n, value: f.coeff(n).to_string() });
    }
    Ok(out)
}

fn cmd_partition(n: u64, method: Method, rc: &RunConfig) -> crate::error::Result<Outcome> {
    match method {
        Method::Recurrence => {
            let value = partition_oracle(n);
            let out = PartitionOut {
                n,
                method: "recurrence".into(),
                value: value.to_string(),
                series_value: None,
                c_max: None,
                margin: None,
                tail_estimate: None,
                certified: None,
            };
            let pretty = format!("p({n}) = {}", out.value);
            let csv = format!("n,method,value\n{n},recurrence,{}", out.value);
            Ok(Outcome { text: render(&out, rc.format, pretty, csv), exit: 0 })
        }
        Method::Rademacher => {
            let cfg = rc.series_config();
            let r = rademacher_p(n, &cfg)?;
            let out = PartitionOut {
                n,
                method: "rademacher".into(),
                value: r.rounded.to_string(),
                series_value: Some(format_float(&r.value, rc.digits)),
                c_max: Some(r.c_max),
                margin: Some(format_float(&r.margin, rc.digits)),
                tail_estimate: Some(format_float(&r.tail_estimate, rc.digits)),
                certified: Some(r.certified),
            };
            let pretty = format!(
                "p({n}) = {}  [series {}, c_max {}, margin {}, certified {}]",
                out.value,
                out.series_value.as_deref().unwrap_or(""),
                r.c_max,
                out.margin.as_deref().unwrap_or(""),
                r.certified
            );
            let csv = format!(
                "n,method,value,series_value,c_max,margin,tail_estimate,certified\n\
                 {n},rademacher,{},{},{},{},{},{}",
                out.value,
                out.series_value.as_deref().unwrap_or(""),
                r.c_max,
                out.margin.as_deref().unwrap_or(""),
                out.tail_estimate.as_deref().unwrap_or(""),
                r.certified
            );
            let exit = if r.certified || rc.allow_unconverged { 0 } else { EXIT_UNCONVERGED };
            Ok(Outcome { text: render(&out, rc.format, pretty, csv), exit })
        }
    }
}

fn cmd_mock_coeff(m: i64, n: i64, rc: &RunConfig) -> crate::error::Result<Outcome> {
    if m <= 0 || n <= 0 {
        return Err(Error::InvalidParameter(
            "mock-coeff takes positive indices m, n ≡ 1 (mod 24)".into(),
        ));
    }
    let cfg = rc.series_config();
    let (sv, _) = l_deriv_profiled(m, n, &cfg)?;
    let bits = cfg.prec.bits;
    let sqrt_pi = cfg.prec.pi().sqrt();
    let ratio = Float::with_val(bits, n) / Float::with_val(bits, m);
    let factor = -(sqrt_pi * 8u32 / 3u32) * ratio.pow(Float::with_val(bits, 0.75f64));
    let value = sv.value * &factor;
    let tail = sv.tail_estimate * factor.abs();
    let out = MockOut {
        m,
        n,
        value: format_float(&value, rc.digits),
        c_max: sv.c_max,
        tail_estimate: format_float(&tail, rc.digits),
        converged: sv.converged,
    };
    let pretty = format!(
        "p_{m}^+({n}) = {}  [c_max {}, tail {}, converged {}]",
        out.value, out.c_max, out.tail_estimate, out.converged
    );
    let csv = format!(
        "m,n,value,c_max,tail_estimate,converged\n{m},{n},{},{},{},{}",
        out.value, out.c_max, out.tail_estimate, out.converged
    );
    let exit = if sv.converged || rc.allow_unconverged { 0 } else { EXIT_UNCONVERGED };
    Ok(Outcome { text: render(&out, rc.format, pretty, csv), exit })
}

fn cmd_kloosterman(m: i64, n: i64, c: u64, rc: &RunConfig) -> crate::error::Result<Outcome> {
    let prec = PrecisionContext::new(rc.digits);
    let ctx = KloostermanContext { m_prime: m, n_prime: n, c };
    let value = kloosterman(&ctx, &prec)?;
    let out = KloostermanOut { m, n, c, value: format_float(&value, rc.digits) };
    let pretty = format!("K({m}, {n}; {c}) = {}", out.value);
    let csv = format!("m,n,c,value\n{m},{n},{c},{}", out.value);
    Ok(Outcome { text: render(&out, rc.format, pretty, csv), exit: 0 })
}

fn report_outcome(report: Report, format: Format) -> Outcome {
    let pretty = format!(
        "{}: {}{}{}",
        report.check,
        if report.pass { "PASS" } else { "FAIL" },
        report
            .max_rel_error
            .as_deref()
            .map(|e| format!("  (max relative error {e})"))
            .unwrap_or_default(),
        if report.exact == Some(true) { "  (exact arithmetic)" } else { "" },
    );
    let csv = format!(
        "check,pass,exact,max_abs_error,max_rel_error\n{},{},{},{},{}",
        report.check,
        report.pass,
        report.exact.map(|b| b.to_string()).unwrap_or_default(),
        report.max_abs_error.clone().unwrap_or_default(),
        report.max_rel_error.clone().unwrap_or_default(),
    );
    let exit = if report.pass { 0 } else { EXIT_FAIL };
    Outcome { text: render(&report, format, pretty, csv), exit }
}

fn cmd_verify(check: &Check, cli: &Cli, digits: u32) -> crate::error::Result<Outcome> {
    let series_cfg = |default_cmax: u64| {
        let c_max = cli.cmax.unwrap_or(default_cmax);
        let mut cfg = SeriesConfig::new(c_max, digits);
        cfg.i_kernel_c_max = Some(c_max.min(DEFAULT_I_KERNEL_CMAX));
        cfg
    };
    let report = match check {
        Check::Hecke { m, ell, terms } => hecke::verify_hecke(*m, *ell, *terms)?,
        Check::Duality { rows, cols } => hecke::verify_duality(*rows, *cols)?,
        Check::Symmetry { m, n, tol } => {
            hecke::verify_symmetry(*m, *n, &series_cfg(2_000), *tol)?
        }
        Check::Vanishing { m, n } => hecke::verify_vanishing(*m, *n, &series_cfg(20_000))?,
        Check::Xi { tol } => hecke::verify_xi(&series_cfg(DEFAULT_I_KERNEL_CMAX), *tol)?,
        Check::Cor5 { m, n, ell, tol } => {
            hecke::verify_cor_five(*m, *n, *ell, &series_cfg(20_000), *tol)?
        }
    };
    Ok(report_outcome(report, cli.format))
}
