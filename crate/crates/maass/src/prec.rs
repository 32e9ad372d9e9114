//! Working-precision context for the numeric (non-exact) layer.
//!
//! All floating-point computation in this crate is done with MPFR reals via
//! [`rug::Float`]. Precision is never global state: every numeric routine
//! takes a [`PrecisionContext`] (or a config embedding one) so that two
//! computations at different precisions can run side by side.

use rug::Float;

/// Decimal working precision plus the acceptance tolerance derived from it.
///
/// `tol = 10^-(digits-15)`: fifteen digits are reserved as headroom for
/// roundoff accumulated by long sums, so oracle-agreement checks at
/// `digits = 40` are performed at `1e-25`, and so on.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    /// Decimal digits of working precision (`>= 15`).
    pub digits: u32,
    /// Binary precision handed to MPFR (includes guard bits).
    pub bits: u32,
    /// Acceptance tolerance `10^-(digits-15)` as a ready-made value.
    pub tol: Float,
}

/// Default decimal working precision.
pub const DEFAULT_DIGITS: u32 = 50;

/// Minimum decimal working precision accepted anywhere.
pub const MIN_DIGITS: u32 = 15;

impl PrecisionContext {
    /// Create a context with the given decimal precision.
    ///
    /// # Panics
    /// Panics if `digits < 15`; the numeric layer is not designed to run
    /// below double-ish precision.
    pub fn new(digits: u32) -> Self {
        assert!(digits >= MIN_DIGITS, "working precision must be >= 15 digits");
        // log2(10) = 3.3219...; add 32 guard bits for intermediate roundoff.
        let bits = (f64::from(digits) * 3.321_928_094_887_362).ceil() as u32 + 32;
        let tol = Float::with_val(64, 10f64).pow_i32(-(digits as i32 - 15));
        PrecisionContext { digits, bits, tol }
    }

    /// A fresh zero at this context's precision.
    pub fn zero(&self) -> Float {
        Float::with_val(self.bits, 0)
    }

    /// A `Float` holding the given integer at this context's precision.
    pub fn float_from_i64(&self, v: i64) -> Float {
        Float::with_val(self.bits, v)
    }

    /// π at this context's precision.
    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, rug::float::Constant::Pi)
    }

    /// A context with the same decimal target but extra guard bits, used by
    /// routines that must absorb known cancellation (e.g. Bessel series at
    /// large argument).
    pub fn with_extra_bits(&self, extra: u32) -> Self {
        let mut ctx = self.clone();
        ctx.bits += extra;
        ctx
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext::new(DEFAULT_DIGITS)
    }
}

// Small helper so `pow_i32` on Float reads naturally above.
trait PowI32 {
    fn pow_i32(self, e: i32) -> Float;
}

impl PowI32 for Float {
    fn pow_i32(self, e: i32) -> Float {
        use rug::ops::Pow;
        self.pow(e)
    }
}
