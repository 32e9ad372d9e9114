//! Exact q-expansions: integral-exponent series (`E₄`, `Δ`, `j`, `j′`) and
//! 24-graded fractional series (`η^{±1}` and the dual bases `g_m`, `h_m`).
//!
//! Provides:
//! * [`IntegerQSeries`] — exponents in `ℤ`, big-integer coefficients;
//! * [`FracQSeries`] — exponents `n/24` with `n` in a fixed residue class
//!   mod 24, big-rational coefficients;
//! * [`eta`], [`eta_inverse`] — `η = q^{1/24}∏(1−qⁿ)` and its inverse
//!   `η⁻¹ = Σ p(n) q^{(24n−1)/24}`;
//! * [`j_expansion`], [`j_prime_expansion`] — the Hauptmodul
//!   `j = q⁻¹ + 744 + 196884q + …` (computed as `E₄³/Δ`) and `j′ = −q dj/dq`;
//! * [`BasisFamily`] — the weight −1/2 basis `g_m = η⁻¹·P_m(j)` (m > 0) and
//!   the weight 5/2 weakly holomorphic basis `h_m = η·j′·P̃_m(j)` (m < 0),
//!   with the monic polynomials recovered by principal-part elimination;
//! * [`partition_numbers`] — `p(0), …, p(N)` by Euler's pentagonal recurrence.
//!
//! Truncation discipline: every series carries `valid_to`, the largest
//! exponent (numerator for fractional series) whose coefficient is complete.
//! Products, inverses and Hecke-type maps compute the exact valid order of
//! their result and refuse to fabricate coefficients past it. A coefficient
//! query beyond `valid_to` is a programming error and panics.

use crate::error::{Error, Result};
use rug::{Complete, Integer, Rational};
use std::collections::BTreeMap;
use std::fmt;

/// Residue class (of exponent numerators mod 24) of the weight −1/2 family:
/// `g_m = q^{−m/24} + O(q^{23/24})` has all numerators ≡ 23 (mod 24).
pub const RESIDUE_G: u8 = 23;

/// Residue class of the weight 5/2 family: `h_m` has numerators ≡ 1 (mod 24).
pub const RESIDUE_H: u8 = 1;

/// `valid_to` assigned to an identically zero series, which is valid at
/// every order. Kept far from `i64::MAX` so order arithmetic cannot overflow.
const ZERO_VALID: i64 = i64::MAX / 4;

// ---------------------------------------------------------------------------
// IntegerQSeries
// ---------------------------------------------------------------------------

/// A Laurent-type q-expansion with integer exponents and big-integer
/// coefficients, valid (complete) for all exponents `<= valid_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerQSeries {
    coeffs: BTreeMap<i64, Integer>,
    valid_to: i64,
}

impl IntegerQSeries {
    /// The zero series, valid at every order.
    pub fn zero() -> Self {
        IntegerQSeries { coeffs: BTreeMap::new(), valid_to: ZERO_VALID }
    }

    /// Build from `(exponent, coefficient)` terms; zero coefficients are dropped.
    ///
    /// Returns an error if any exponent exceeds `valid_to`.
    pub fn from_terms<I>(terms: I, valid_to: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Integer)>,
    {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if e > valid_to {
                return Err(Error::InvalidParameter(format!(
                    "term at exponent {e} beyond declared valid order {valid_to}"
                )));
            }
            if c != 0 {
                coeffs.insert(e, c);
            }
        }
        Ok(IntegerQSeries { coeffs, valid_to })
    }

    /// Largest exponent with a complete coefficient.
    pub fn valid_to(&self) -> i64 {
        self.valid_to
    }

    /// Lowest exponent with a nonzero coefficient, or `None` for the zero series.
    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// True if the series is identically zero (to its valid order).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`.
    ///
    /// # Panics
    /// Panics if `e > valid_to`: absent coefficients past the valid order are
    /// unknown, not zero.
    pub fn coeff(&self, e: i64) -> Integer {
        assert!(
            e <= self.valid_to,
            "coefficient at exponent {e} requested beyond valid order {}",
            self.valid_to
        );
        self.coeffs.get(&e).cloned().unwrap_or_else(Integer::new)
    }

    /// Iterate over nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Integer)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Restrict the series to exponents `<= new_valid` (which must not exceed
    /// the current valid order).
    pub fn truncate(&self, new_valid: i64) -> Self {
        assert!(new_valid <= self.valid_to, "truncate cannot extend a series");
        let coeffs = self.coeffs.range(..=new_valid).map(|(e, c)| (*e, c.clone())).collect();
        IntegerQSeries { coeffs, valid_to: new_valid }
    }

    /// Exact sum; valid to the smaller of the two valid orders.
    pub fn add(&self, rhs: &Self) -> Self {
        let valid_to = self.valid_to.min(rhs.valid_to);
        let mut coeffs: BTreeMap<i64, Integer> = BTreeMap::new();
        for (e, c) in self.coeffs.range(..=valid_to).chain(rhs.coeffs.range(..=valid_to)) {
            let entry = coeffs.entry(*e).or_insert_with(Integer::new);
            *entry += c;
        }
        coeffs.retain(|_, c| *c != 0);
        IntegerQSeries { coeffs, valid_to }
    }

    /// Exact difference; valid to the smaller of the two valid orders.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Exact negation.
    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, (-c).complete())).collect();
        IntegerQSeries { coeffs, valid_to: self.valid_to }
    }

    /// Exact Cauchy product, valid to
    /// `min(a.valid + b.min, b.valid + a.min)` — the largest order at which
    /// every contributing pair of coefficients is known.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(IntegerQSeries::zero());
        }
        let amin = self.min_exponent().expect("nonzero");
        let bmin = rhs.min_exponent().expect("nonzero");
        let valid_to = (self.valid_to + bmin).min(rhs.valid_to + amin);
        if valid_to < amin + bmin {
            return Err(Error::TruncationExhausted(format!(
                "product valid order {valid_to} is below its leading exponent {}",
                amin + bmin
            )));
        }
        let mut coeffs: BTreeMap<i64, Integer> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            if ea + bmin > valid_to {
                break;
            }
            for (eb, cb) in &rhs.coeffs {
                let e = ea + eb;
                if e > valid_to {
                    break;
                }
                let entry = coeffs.entry(e).or_insert_with(Integer::new);
                *entry += (ca * cb).complete();
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(IntegerQSeries { coeffs, valid_to })
    }

    /// `k`-th power by repeated multiplication (`k >= 0`).
    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = IntegerQSeries::from_terms([(0, Integer::from(1))], self.valid_to)?;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a series whose leading coefficient is ±1.
    ///
    /// If `f = ±q^μ(1 + …)` is valid to order `V`, the inverse is valid to
    /// `V − 2μ` (the relative expansion of `1/f` is known to the same
    /// relative order `V − μ` as `f` itself).
    pub fn invert_unit(&self) -> Result<Self> {
        let mu = self.min_exponent().ok_or_else(|| {
            Error::InvalidParameter("cannot invert the zero series".into())
        })?;
        let lead = self.coeff(mu);
        if lead != 1 && lead != -1 {
            return Err(Error::InvalidParameter(format!(
                "invert_unit requires leading coefficient ±1, found {lead}"
            )));
        }
        let rel_order = self.valid_to - mu;
        // r[e] = coefficient of the inverse at exponent -μ + e.
        let mut r: Vec<Integer> = Vec::with_capacity(rel_order as usize + 1);
        r.push(lead.clone());
        // f_{μ+k} r_{e-k} summed over 1 <= k <= e must cancel for e >= 1.
        let rel: Vec<(i64, &Integer)> =
            self.coeffs.iter().map(|(e, c)| (*e - mu, c)).collect();
        for e in 1..=rel_order {
            let mut acc = Integer::new();
            for (k, c) in &rel {
                if *k == 0 {
                    continue;
                }
                if *k > e {
                    break;
                }
                acc += (*c * &r[(e - *k) as usize]).complete();
            }
            acc *= &lead;
            r.push(-acc);
        }
        let valid_to = self.valid_to - 2 * mu;
        let coeffs = r
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (-mu + e as i64, c))
            .filter(|(e, _)| *e <= valid_to)
            .collect();
        Ok(IntegerQSeries { coeffs, valid_to })
    }
}

impl fmt::Display for IntegerQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().take(8) {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}·q^{e}")?;
            first = false;
        }
        if self.coeffs.len() > 8 {
            write!(f, " + …")?;
        }
        write!(f, "  (valid to {})", self.valid_to)
    }
}

// ---------------------------------------------------------------------------
// FracQSeries
// ---------------------------------------------------------------------------

/// A q-expansion with exponents `n/24`, all numerators `n` congruent to a
/// fixed residue (1 or 23) mod 24, and big-rational coefficients.
///
/// The residue encodes the grading: 23 for the weight −1/2 family, 1 for the
/// weight 5/2 family (negative numerators reduce mod 24, so `−1 ≡ 23` and
/// `−23 ≡ 1`). `valid_to` is in numerator units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracQSeries {
    residue: u8,
    coeffs: BTreeMap<i64, Rational>,
    valid_to: i64,
}

impl FracQSeries {
    /// The zero series of the given residue class.
    pub fn zero(residue: u8) -> Self {
        assert!(residue == RESIDUE_G || residue == RESIDUE_H, "residue must be 1 or 23");
        FracQSeries { residue, coeffs: BTreeMap::new(), valid_to: ZERO_VALID }
    }

    /// Build from `(numerator, coefficient)` terms; zero coefficients dropped.
    ///
    /// Every numerator must be ≡ `residue` (mod 24) and `<= valid_to`.
    pub fn from_terms<I>(residue: u8, terms: I, valid_to: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        if residue != RESIDUE_G && residue != RESIDUE_H {
            return Err(Error::InvalidParameter(format!("residue {residue} must be 1 or 23")));
        }
        let mut coeffs = BTreeMap::new();
        for (n, c) in terms {
            if n.rem_euclid(24) != i64::from(residue) {
                return Err(Error::InvalidParameter(format!(
                    "numerator {n} is not ≡ {residue} (mod 24)"
                )));
            }
            if n > valid_to {
                return Err(Error::InvalidParameter(format!(
                    "term at numerator {n} beyond declared valid order {valid_to}"
                )));
            }
            if c != 0 {
                coeffs.insert(n, c);
            }
        }
        Ok(FracQSeries { residue, coeffs, valid_to })
    }

    /// Residue class of exponent numerators mod 24 (1 or 23).
    pub fn residue(&self) -> u8 {
        self.residue
    }

    /// Largest numerator with a complete coefficient.
    pub fn valid_to(&self) -> i64 {
        self.valid_to
    }

    /// Lowest numerator with a nonzero coefficient, or `None` if zero.
    pub fn min_numerator(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// True if the series is identically zero (to its valid order).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^{n/24}`.
    ///
    /// # Panics
    /// Panics if `n > valid_to`.
    pub fn coeff(&self, n: i64) -> Rational {
        assert!(
            n <= self.valid_to,
            "coefficient at numerator {n} requested beyond valid order {}",
            self.valid_to
        );
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::new)
    }

    /// Iterate over nonzero `(numerator, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    /// Number of stored nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True if no nonzero terms are stored.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Restrict to numerators `<= new_valid`.
    pub fn truncate(&self, new_valid: i64) -> Self {
        assert!(new_valid <= self.valid_to, "truncate cannot extend a series");
        let coeffs = self.coeffs.range(..=new_valid).map(|(n, c)| (*n, c.clone())).collect();
        FracQSeries { residue: self.residue, coeffs, valid_to: new_valid }
    }

    /// Exact sum of two series in the same residue class.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.residue != rhs.residue {
            return Err(Error::ResidueMismatch { a: self.residue, b: rhs.residue, op: "add" });
        }
        let valid_to = self.valid_to.min(rhs.valid_to);
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (n, c) in self.coeffs.range(..=valid_to).chain(rhs.coeffs.range(..=valid_to)) {
            let entry = coeffs.entry(*n).or_insert_with(Rational::new);
            *entry += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(FracQSeries { residue: self.residue, coeffs, valid_to })
    }

    /// Exact difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// Exact negation.
    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(n, c)| (*n, (-c).complete())).collect();
        FracQSeries { residue: self.residue, coeffs, valid_to: self.valid_to }
    }

    /// Multiply every coefficient by an exact rational scalar.
    pub fn scale(&self, s: &Rational) -> Self {
        if *s == 0 {
            return FracQSeries { residue: self.residue, coeffs: BTreeMap::new(), valid_to: self.valid_to };
        }
        let coeffs = self.coeffs.iter().map(|(n, c)| (*n, (c * s).complete())).collect();
        FracQSeries { residue: self.residue, coeffs, valid_to: self.valid_to }
    }

    /// Exact product with an integral-exponent series (grading unchanged:
    /// an integer exponent `e` contributes `24e` to the numerator).
    pub fn mul_integer(&self, rhs: &IntegerQSeries) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(FracQSeries::zero(self.residue));
        }
        let amin = self.min_numerator().expect("nonzero");
        let bmin = rhs.min_exponent().expect("nonzero");
        let valid_to = (self.valid_to + 24 * bmin).min(24 * rhs.valid_to() + amin);
        if valid_to < amin + 24 * bmin {
            return Err(Error::TruncationExhausted(format!(
                "product valid order {valid_to} is below its leading numerator {}",
                amin + 24 * bmin
            )));
        }
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (na, ca) in &self.coeffs {
            if na + 24 * bmin > valid_to {
                break;
            }
            for (eb, cb) in rhs.terms() {
                let n = na + 24 * eb;
                if n > valid_to {
                    break;
                }
                let entry = coeffs.entry(n).or_insert_with(Rational::new);
                *entry += (ca * cb).complete();
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(FracQSeries { residue: self.residue, coeffs, valid_to })
    }

    /// Exact product of two fractional series with complementary residues
    /// (1 + 23 ≡ 0 mod 24); the result has integer exponents.
    pub fn mul_frac(&self, rhs: &Self) -> Result<IntegerQSeries> {
        if (u16::from(self.residue) + u16::from(rhs.residue)) % 24 != 0 {
            return Err(Error::ResidueMismatch {
                a: self.residue,
                b: rhs.residue,
                op: "mul_frac (residues must sum to 0 mod 24)",
            });
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(IntegerQSeries::zero());
        }
        let amin = self.min_numerator().expect("nonzero");
        let bmin = rhs.min_numerator().expect("nonzero");
        let valid_num = (self.valid_to + bmin).min(rhs.valid_to + amin);
        if valid_num < amin + bmin {
            return Err(Error::TruncationExhausted(
                "fractional product has no valid coefficients".into(),
            ));
        }
        let valid_to = valid_num.div_euclid(24);
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (na, ca) in &self.coeffs {
            if na + bmin > valid_num {
                break;
            }
            for (nb, cb) in &rhs.coeffs {
                let n = na + nb;
                if n > valid_num {
                    break;
                }
                debug_assert_eq!(n % 24, 0);
                let entry = coeffs.entry(n / 24).or_insert_with(Rational::new);
                *entry += (ca * cb).complete();
            }
        }
        coeffs.retain(|_, c| *c != 0);
        let int_coeffs = coeffs
            .into_iter()
            .map(|(e, c)| {
                assert!(c.is_integer(), "fractional product produced non-integer coefficient");
                (e, c.into_numer_denom().0)
            })
            .collect::<Vec<_>>();
        IntegerQSeries::from_terms(int_coeffs, valid_to)
    }

    /// True if every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Rational::is_integer)
    }
}

impl fmt::Display for FracQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms().take(8) {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}·q^({n}/24)")?;
            first = false;
        }
        if self.coeffs.len() > 8 {
            write!(f, " + …")?;
        }
        write!(f, "  (valid to {}/24)", self.valid_to)
    }
}

// ---------------------------------------------------------------------------
// Classical expansions
// ---------------------------------------------------------------------------

/// `∏_{n≥1} (1 − qⁿ)` to order `N`, by the pentagonal number theorem.
pub fn euler_product(order: i64) -> IntegerQSeries {
    assert!(order >= 0);
    let mut terms: Vec<(i64, Integer)> = vec![(0, Integer::from(1))];
    let mut k: i64 = 1;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 > order && g2 > order {
            break;
        }
        let sign = if k % 2 == 1 { -1 } else { 1 };
        if g1 <= order {
            terms.push((g1, Integer::from(sign)));
        }
        if g2 <= order {
            terms.push((g2, Integer::from(sign)));
        }
        k += 1;
    }
    IntegerQSeries::from_terms(terms, order).expect("pentagonal terms within order")
}

/// `p(0), p(1), …, p(n_max)` by Euler's pentagonal-number recurrence,
/// exactly in big integers.
pub fn partition_numbers(n_max: u64) -> Vec<Integer> {
    let n_max = n_max as usize;
    let mut p: Vec<Integer> = Vec::with_capacity(n_max + 1);
    p.push(Integer::from(1));
    for n in 1..=n_max {
        let mut acc = Integer::new();
        let mut k: usize = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > n {
                break;
            }
            if k % 2 == 1 {
                acc += &p[n - g1];
                if g2 <= n {
                    acc += &p[n - g2];
                }
            } else {
                acc -= &p[n - g1];
                if g2 <= n {
                    acc -= &p[n - g2];
                }
            }
            k += 1;
        }
        p.push(acc);
    }
    p
}

/// `η = q^{1/24} ∏ (1 − qⁿ)`: numerators `24k + 1` for `0 <= k <= n_terms`.
pub fn eta(n_terms: u32) -> FracQSeries {
    let order = i64::from(n_terms);
    let eul = euler_product(order);
    let terms = eul
        .terms()
        .map(|(e, c)| (24 * e + 1, Rational::from(c)))
        .collect::<Vec<_>>();
    FracQSeries::from_terms(RESIDUE_H, terms, 24 * order + 1).expect("eta terms in class 1")
}

/// `η⁻¹ = Σ_{n≥0} p(n) q^{(24n−1)/24}`, computed by exact series inversion of
/// the pentagonal-number product (so that the pentagonal *recurrence* remains
/// an independent oracle). Includes `p(0)…p(n_terms)`; numerators ≡ 23 mod 24.
pub fn eta_inverse(n_terms: u32) -> FracQSeries {
    let order = i64::from(n_terms);
    let inv = euler_product(order).invert_unit().expect("euler product is a unit");
    let terms = inv
        .terms()
        .map(|(e, c)| (24 * e - 1, Rational::from(c)))
        .collect::<Vec<_>>();
    FracQSeries::from_terms(RESIDUE_G, terms, 24 * order - 1).expect("eta^-1 terms in class 23")
}

/// `E₄ = 1 + 240 Σ σ₃(n) qⁿ` to order `N`.
pub fn eisenstein_e4(order: i64) -> IntegerQSeries {
    assert!(order >= 0);
    let mut sigma3 = vec![Integer::new(); order as usize + 1];
    for d in 1..=order as usize {
        let d3 = Integer::from(d * d * d);
        let mut m = d;
        while m <= order as usize {
            sigma3[m] += &d3;
            m += d;
        }
    }
    let mut terms = vec![(0, Integer::from(1))];
    for (n, s) in sigma3.into_iter().enumerate().skip(1) {
        terms.push((n as i64, s * 240));
    }
    IntegerQSeries::from_terms(terms, order).expect("E4 terms within order")
}

/// `Δ = q ∏ (1 − qⁿ)²⁴` to order `N`.
pub fn delta(order: i64) -> IntegerQSeries {
    let eul = euler_product(order + 23);
    let e24 = eul.pow(24).expect("power of euler product");
    let terms = e24
        .terms()
        .filter(|(e, _)| e + 1 <= order)
        .map(|(e, c)| (e + 1, c.clone()))
        .collect::<Vec<_>>();
    IntegerQSeries::from_terms(terms, order).expect("delta terms within order")
}

/// The Hauptmodul `j = E₄³/Δ = q⁻¹ + 744 + 196884 q + …` to order `N`.
///
/// Convention note: the constant term is 744 (not 0). The basis
/// constructions below depend on this normalization — e.g. the monic
/// polynomial attached to `g_25` is `j − 745` — so it is fixed here once.
pub fn j_expansion(order: i64) -> IntegerQSeries {
    // Work two orders deep: Δ⁻¹ loses 2 orders (pole at q¹).
    let work = order + 2;
    let e4 = eisenstein_e4(work + 1);
    let e4cubed = e4.pow(3).expect("E4^3");
    let dinv = delta(work + 3).invert_unit().expect("delta is a unit series");
    let j = e4cubed.mul(&dinv).expect("E4^3 / delta");
    j.truncate(order)
}

/// `j′ = −q · dj/dq` to order `N` (termwise `c(n) ↦ −n·c(n)`).
pub fn j_prime_expansion(order: i64) -> IntegerQSeries {
    let j = j_expansion(order);
    let terms = j
        .terms()
        .filter(|(e, _)| *e != 0)
        .map(|(e, c)| (e, (c * (-e)).complete()))
        .collect::<Vec<_>>();
    IntegerQSeries::from_terms(terms, order).expect("derivative preserves order")
}

// ---------------------------------------------------------------------------
// Basis families
// ---------------------------------------------------------------------------

/// Which of the two dual families a [`BasisFamily`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Weight −1/2 family `g_m`, `m = 24d + 1 > 0`, residue class 23.
    G,
    /// Weight 5/2 weakly holomorphic family `h_m`, `m = −(23 + 24d) < 0`,
    /// residue class 1.
    HNeg,
}

impl BasisKind {
    /// Index `m` of the `d`-th family member.
    pub fn index(self, d: usize) -> i64 {
        match self {
            BasisKind::G => 24 * d as i64 + 1,
            BasisKind::HNeg => -(23 + 24 * d as i64),
        }
    }

    /// Position `d` of index `m` in this family, if `m` belongs to it.
    pub fn position(self, m: i64) -> Option<usize> {
        match self {
            BasisKind::G if m > 0 && m.rem_euclid(24) == 1 => Some(((m - 1) / 24) as usize),
            BasisKind::HNeg if m < 0 && m.rem_euclid(24) == 1 => Some(((-m - 23) / 24) as usize),
            _ => None,
        }
    }
}

/// A cached prefix `d = 0 … d_max` of one basis family, together with the
/// monic polynomials in `j` recovered by the elimination.
///
/// Construction: the `d = 0` seeds are `g_1 = η⁻¹` and `h_{−23} = η·j′`. Each
/// later member starts from `seed · j^d` and subtracts multiples of the
/// already-built members to remove every principal-part exponent except the
/// target one, leaving `q^{−m/24} + O(q^{23/24})` (resp. `q^{m/24} + O(q^{1/24})`).
/// The subtraction coefficients assemble the monic polynomial `P_d(j)` with
/// `seed·P_d(j)` equal to the member — e.g. `j − 745` for `g_25`.
#[derive(Debug, Clone)]
pub struct BasisFamily {
    kind: BasisKind,
    valid_to: i64,
    forms: Vec<FracQSeries>,
    polys: Vec<Vec<Integer>>,
}

impl BasisFamily {
    /// Build the `g_m` family for `m = 1, 25, …, 24·d_max+1`, every member
    /// complete to exponent numerator `valid_to`.
    pub fn build_g(d_max: usize, valid_to: i64) -> Result<Self> {
        Self::build(BasisKind::G, d_max, valid_to)
    }

    /// Build the `h_m` family for `m = −23, −47, …, −(23+24·d_max)`.
    pub fn build_h_neg(d_max: usize, valid_to: i64) -> Result<Self> {
        Self::build(BasisKind::HNeg, d_max, valid_to)
    }

    fn build(kind: BasisKind, d_max: usize, valid_to: i64) -> Result<Self> {
        let dm = d_max as i64;
        // The seed must stay valid after multiplication by j^d (which lowers
        // the valid order by 24d numerator units at worst). `eta_inverse(s)`
        // is valid to numerator 24s − 1 but `eta(s)·j′` only to 24s − 23, so
        // size the seed for the weaker guarantee.
        let need = valid_to + 24 * dm;
        let seed_terms = ((need + 23).div_euclid(24) + 1).max(1) as u32;
        let seed = match kind {
            BasisKind::G => eta_inverse(seed_terms),
            BasisKind::HNeg => {
                let jp = j_prime_expansion(i64::from(seed_terms) + 1);
                eta(seed_terms).mul_integer(&jp)?
            }
        };
        let seed = seed.truncate(valid_to + 24 * dm);
        let j_order = (valid_to + 24 * dm) / 24 + 3;
        let j = j_expansion(j_order);

        let mut forms = vec![seed.clone().truncate(valid_to)];
        let mut polys = vec![vec![Integer::from(1)]];
        let mut j_pow = IntegerQSeries::from_terms([(0, Integer::from(1))], j_order)?;

        for d in 1..=d_max {
            j_pow = j_pow.mul(&j)?;
            let mut f = seed.mul_integer(&j_pow)?.truncate(valid_to);
            let mut poly = vec![Integer::new(); d + 1];
            poly[d] = Integer::from(1);
            // Remove the principal-part exponents of the earlier members,
            // deepest first.
            for k in (0..d).rev() {
                let target = match kind {
                    BasisKind::G => -kind.index(k),
                    BasisKind::HNeg => kind.index(k),
                };
                let co = f.coeff(target);
                if co != 0 {
                    assert!(co.is_integer(), "elimination coefficient must be integral");
                    f = f.sub(&forms[k].scale(&co))?;
                    let coi = co.into_numer_denom().0;
                    for (i, pc) in polys[k].iter().enumerate() {
                        poly[i] -= (pc * &coi).complete();
                    }
                }
            }
            let lead_at = match kind {
                BasisKind::G => -kind.index(d),
                BasisKind::HNeg => kind.index(d),
            };
            assert_eq!(f.coeff(lead_at), 1, "basis member must be monic at its leading exponent");
            assert!(f.is_integral(), "basis member must have integer coefficients");
            forms.push(f);
            polys.push(poly);
        }
        Ok(BasisFamily { kind, valid_to, forms, polys })
    }

    /// The family kind.
    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    /// Valid order (numerator units) of every member.
    pub fn valid_to(&self) -> i64 {
        self.valid_to
    }

    /// Number of members (`d_max + 1`).
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    /// True if the family holds no members (never produced by the builders).
    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Member with family position `d`.
    pub fn by_position(&self, d: usize) -> &FracQSeries {
        &self.forms[d]
    }

    /// Member with index `m`, if present.
    pub fn by_index(&self, m: i64) -> Option<&FracQSeries> {
        self.kind.position(m).and_then(|d| self.forms.get(d))
    }

    /// Monic polynomial (coefficients low→high degree) attached to position `d`.
    pub fn poly(&self, d: usize) -> &[Integer] {
        &self.polys[d]
    }
}

/// The weight −1/2 basis element `g_m = q^{−m/24} + O(q^{23/24})`, complete
/// to exponent numerator `valid_to`.
///
/// `m` must be positive and ≡ 1 (mod 24).
pub fn basis_g(m: i64, valid_to: i64) -> Result<FracQSeries> {
    let d = BasisKind::G.position(m).ok_or(Error::InvalidIndex {
        m,
        reason: "basis_g requires m > 0 with m ≡ 1 (mod 24)",
    })?;
    let fam = BasisFamily::build_g(d, valid_to)?;
    Ok(fam.forms.into_iter().nth(d).expect("family contains position d"))
}

/// The weight 5/2 weakly holomorphic basis element
/// `h_m = q^{m/24} + O(q^{1/24})` for negative `m ≡ 1 (mod 24)`.
pub fn basis_h_neg(m: i64, valid_to: i64) -> Result<FracQSeries> {
    let d = BasisKind::HNeg.position(m).ok_or(Error::InvalidIndex {
        m,
        reason: "basis_h_neg requires m < 0 with m ≡ 1 (mod 24)",
    })?;
    let fam = BasisFamily::build_h_neg(d, valid_to)?;
    Ok(fam.forms.into_iter().nth(d).expect("family contains position d"))
}
