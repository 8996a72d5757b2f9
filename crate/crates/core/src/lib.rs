//! Numerical workbench for the Liouville function, its Dirichlet series and
//! Dirichlet integrals, and the identity
//!
//! ```text
//! ζ(2s)/ζ(s) − (s − 1/2)·J_ξ(s) = ζ(2s+1)/ζ(s+1/2),    Re(s) > 1/2,
//! ```
//!
//! where J_ξ(s) = ∫_1^∞ L_u(ξ) u^{−s−1/2} du and
//! L_x(ξ) = ½ Σ_{2≤n≤x} λ(n) log(n) n^{−ξ(n)} = F_x(1/2) − F_x(1).
//!
//! Modules, bottom up:
//!
//! * [`liouville`]: λ(n) by trial division and segmented sieve; Pólya and
//!   Turán sign scans with checkpoints.
//! * [`sums`]: the Dirichlet polynomials F_x(α) and L_x(ξ).
//! * [`xi`]: the mean-value exponent sequence ξ(n).
//! * [`zeta`]: Euler–Maclaurin ζ(s) and the two zeta ratios.
//! * [`integral`]: exact integrals of step functions against power kernels,
//!   tail models, and empirical abscissa-of-convergence brackets.
//! * [`lab`]: the identity checks and observational diagnostics.
//! * [`cli`]: the `lzeta` command line.

// `!(x > y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod hexfloat;
pub mod integral;
pub mod lab;
pub mod liouville;
pub mod summation;
pub mod sums;
pub mod xi;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
