//! Dual bases of weak harmonic Maass forms on the full modular group, by two
//! independent routes.
//!
//! The object of study is the pair of families `{g_m}` (weakly holomorphic,
//! weight −1/2, conjugate eta multiplier, indices `m ≡ 1 (mod 24)`) and
//! `{h_m}` (weight 5/2, eta multiplier, indices `m ≡ 1 (mod 24)`, harmonic
//! for positive `m`). The crate constructs them:
//!
//! * **exactly** — big-rational q-series arithmetic on powers of the eta
//!   quotient and the modular invariant `j`, with hard truncation-order
//!   tracking ([`qseries`]);
//! * **analytically** — coefficient series built from eta-multiplier
//!   Kloosterman sums weighted by half-integral Bessel kernels and their
//!   order-derivatives ([`kloosterman`], [`special`], [`poincare`]).
//!
//! The two routes overlap on a large set of identities — Fourier duality of
//! the grid, Hecke relations in both weights, the shadow (ξ-operator)
//! correspondence, inner-product symmetry, and the exact Rademacher series
//! for the partition function — and [`hecke`] packages those comparisons as
//! machine-readable verification reports. A CLI (`maass`) exposes the same
//! functionality; see [`cli`].
//!
//! Numerical results are deterministic: fixed evaluation order, fixed MPFR
//! precision derived from a requested decimal digit count, and explicit
//! truncation diagnostics (`c_max`, tail estimate, convergence flag) on every
//! analytically computed number.

pub mod cli;
pub mod error;
pub mod hecke;
pub mod kloosterman;
pub mod poincare;
pub mod prec;
pub mod qseries;
pub mod special;

pub use error::{Error, Result};
pub use prec::PrecisionContext;
