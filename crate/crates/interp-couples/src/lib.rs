//! Weighted sequence-space couples and the interpolation machinery on them.
//!
//! The model family is the diagonal couple of weighted l^p spaces on C^N with
//! a shared exponent p in {1, 2, inf}. On top of it the crate provides:
//!
//! * [`spaces`] — norms, J-functional, intersection/sum norms, embedding
//!   constants, and interpolated spaces by geometric weight mixing;
//! * [`kfunc`] — the K-functional solved as a convex split problem, with an
//!   independent brute-force grid oracle;
//! * [`real_interp`] — the (theta, q) norms by adaptive quadrature of the
//!   K-profile and the (theta, inf) supremum norm;
//! * [`complex_interp`] — interpolation norms, extremal certificate
//!   functions on the strip, and the numeric three-line check;
//! * [`maps`] — a small expression DSL for polynomial maps built from
//!   convolution, diagonal scaling, sums and constants, with certified
//!   sup-bounds over balls;
//! * [`taylor`] — homogeneous Taylor components via roots-of-unity contour
//!   averages, with the coefficient bound checks;
//! * [`verify`] — the bound-verification harness: interpolated sup bounds for
//!   maps between couples, ball inclusions, and a step-by-step strip
//!   construction replay;
//! * [`report`] — deterministic serialization of run reports;
//! * [`cli`] — the config-driven command front end used by the binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod cli;
pub mod complex_interp;
pub mod error;
pub mod kfunc;
pub mod maps;
pub mod real_interp;
pub mod report;
pub mod sampling;
pub mod spaces;
pub mod taylor;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use kfunc::{k_functional, k_oracle_grid, k_profile, KCache, KDecomposition};
pub use spaces::{embedding_constant, CVector, CoupleSpec, Exponent, SpaceSpec};
