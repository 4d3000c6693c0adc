//! Iterated integrals built on the 1D engine.
//!
//! The inner integral's own error estimate is integrated alongside its value
//! so that the reported error covers both levels.

use core::ops::{Add, Mul, Sub};

use super::adaptive::{adaptive, QuadValue};
use super::{QuadResult, Quadrature1DSpec};
use crate::{Complex64, Result};

#[derive(Clone, Copy, Debug)]
struct WithErr {
    v: Complex64,
    e: f64,
}

impl Add for WithErr {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        WithErr {
            v: self.v + o.v,
            e: self.e + o.e,
        }
    }
}
impl Sub for WithErr {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        WithErr {
            v: self.v - o.v,
            e: self.e - o.e,
        }
    }
}
impl Mul<f64> for WithErr {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        WithErr {
            v: self.v * s,
            e: self.e * s,
        }
    }
}
impl QuadValue for WithErr {
    fn zero() -> Self {
        WithErr {
            v: Complex64::new(0.0, 0.0),
            e: 0.0,
        }
    }
    fn norm(&self) -> f64 {
        self.v.norm()
    }
    fn is_finite(&self) -> bool {
        self.v.re.is_finite() && self.v.im.is_finite() && self.e.is_finite()
    }
    fn parts(&self) -> (f64, f64) {
        (self.v.re, self.v.im)
    }
}

/// `∫ dx ∫ dy f(x, y)` with the `y`-range given per `x` by `inner`.
///
/// Inner tolerances are taken from `inner` verbatim; a tenth of the outer
/// tolerance is the usual choice.
pub fn integrate_2d<F, G>(mut f: F, outer: &Quadrature1DSpec, mut inner: G) -> Result<QuadResult>
where
    F: FnMut(f64, f64) -> Result<Complex64>,
    G: FnMut(f64) -> Quadrature1DSpec,
{
    let mut evals = 0usize;
    let r = adaptive::<WithErr, _>(
        |x| {
            let spec = inner(x);
            let q = adaptive::<Complex64, _>(|y| f(x, y), &spec)?;
            evals += q.evals;
            Ok(WithErr { v: q.value, e: q.err_est })
        },
        outer,
    )?;
    Ok(QuadResult {
        value: r.value.v,
        err_est: r.err_est + r.value.e.abs(),
        evals,
    })
}

/// `∫ g(x) dx` where each `g(x)` is itself a quadrature result, for inner
/// integrals that are not a single interval (unions, sums of pieces). The
/// inner error estimates are integrated along with the values.
pub fn integrate_outer<F>(mut g: F, outer: &Quadrature1DSpec) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<QuadResult>,
{
    let mut evals = 0usize;
    let r = adaptive::<WithErr, _>(
        |x| {
            let q = g(x)?;
            evals += q.evals;
            Ok(WithErr { v: q.value, e: q.err_est })
        },
        outer,
    )?;
    Ok(QuadResult {
        value: r.value.v,
        err_est: r.err_est + r.value.e.abs(),
        evals,
    })
}

/// Three-level iterated integral `∫ dx ∫ dy ∫ dz f(x, y, z)`.
pub fn integrate_3d<F, G, H>(mut f: F, outer: &Quadrature1DSpec, mut middle: G, mut inner: H) -> Result<QuadResult>
where
    F: FnMut(f64, f64, f64) -> Result<Complex64>,
    G: FnMut(f64) -> Quadrature1DSpec,
    H: FnMut(f64, f64) -> Quadrature1DSpec,
{
    let mut evals = 0usize;
    let r = adaptive::<WithErr, _>(
        |x| {
            let q = integrate_2d(|y, z| f(x, y, z), &middle(x), |y| inner(x, y))?;
            evals += q.evals;
            Ok(WithErr { v: q.value, e: q.err_est })
        },
        outer,
    )?;
    Ok(QuadResult {
        value: r.value.v,
        err_est: r.err_est + r.value.e.abs(),
        evals,
    })
}
