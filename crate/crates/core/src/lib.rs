//! Numerics for Fourier coefficients along closed geodesics of compact
//! hyperbolic manifolds.
//!
//! The crate evaluates, and cross-checks by independent routes, the explicit
//! integrals that enter the two summation formulae relating the squared
//! automorphic coefficients `|a_k|²` along a geodesic to spectral data
//! `(λ̃_j, c_j, a0_j)`:
//!
//! * [`quadcore`]: complex log-gamma, adaptive quadrature with
//!   double-exponential maps for endpoint singularities and infinite
//!   intervals, compensated summation.
//! * [`testfn`]: the non-negative bump `ψ` with non-negative Fourier
//!   transform, and the two-variable family `φ_T`.
//! * [`transforms`]: intertwining transforms `I_k` and the double transform
//!   weights appearing on the coefficient side.
//! * [`kernels`]: the spectral-side kernels: `β`, `R_φ` by several routes,
//!   `K_z(a, b)`, `f_T` and its derivative, and the Jacobian identities.
//! * [`summation`]: both sides of the summation formulae with residual
//!   reports.
//! * [`spectra`]: data validation and growth/decay fits of sequences.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! anything touching IO live in the `geofourier` companion crate.
#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod kernels;
pub mod quadcore;
pub mod spectra;
pub mod summation;
pub mod testfn;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used throughout the crate. Values handed out by the public
/// API are always finite; a non-finite intermediate is reported as an error.
pub type ComplexValue = Complex64;
