//! Numerical foundation: complex log-gamma, adaptive quadrature and
//! compensated summation.
//!
//! Quadrature is globally adaptive Gauss–Kronrod (21 points). Finite
//! intervals without declared singularities are integrated directly. Declared
//! endpoint singularities and infinite endpoints are first pushed through a
//! double-exponential change of variables (tanh-sinh on finite intervals,
//! exp-sinh on half-lines) and the transformed, rapidly decaying integrand is
//! then integrated adaptively, which keeps oscillatory integrands tractable.

mod adaptive;
mod gamma;
mod kronrod;
mod multi;
mod sum;

pub use adaptive::{integrate_1d, integrate_1d_real, try_integrate_1d, try_integrate_1d_nodes, Node};
pub use gamma::{gamma, log_gamma, unit_ball_volume};
pub use multi::{integrate_2d, integrate_3d, integrate_outer};
pub use sum::{compensated_sum, compensated_sum_real, NeumaierSum};

use crate::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-12;
pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_PANELS: usize = 2000;

/// Endpoints at which the integrand may have an integrable power-type
/// singularity (exponent greater than -1).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Endpoints {
    pub lower: bool,
    pub upper: bool,
}

impl Endpoints {
    pub const NONE: Self = Self {
        lower: false,
        upper: false,
    };
    pub const LOWER: Self = Self {
        lower: true,
        upper: false,
    };
    pub const UPPER: Self = Self {
        lower: false,
        upper: true,
    };
    pub const BOTH: Self = Self {
        lower: true,
        upper: true,
    };

    pub fn any(self) -> bool {
        self.lower || self.upper
    }
}

/// Interval and accuracy request for [`integrate_1d`].
///
/// Endpoints may be `±∞`; the integrand must then decay at least like
/// `|x|^{-1-δ}`, which the integrator cannot check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature1DSpec {
    pub lo: f64,
    pub hi: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub singular: Endpoints,
    pub max_panels: usize,
    /// Equal panels the interval starts with when no map is applied; set it
    /// to roughly the number of oscillations for oscillatory integrands.
    pub initial_panels: usize,
}

impl Quadrature1DSpec {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            abs_tol: DEFAULT_ABS_TOL,
            rel_tol: DEFAULT_REL_TOL,
            singular: Endpoints::NONE,
            max_panels: DEFAULT_MAX_PANELS,
            initial_panels: 1,
        }
    }

    pub fn with_tol(lo: f64, hi: f64, tol: Tolerance) -> Self {
        Self::new(lo, hi).tolerance(tol.abs, tol.rel)
    }

    /// Starts from `n` panels and allows at least `8n` in total.
    pub fn initial_panels(mut self, n: usize) -> Self {
        self.initial_panels = n.max(1);
        self.max_panels = self.max_panels.max(8 * self.initial_panels);
        self
    }

    pub fn tolerance(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn singular(mut self, singular: Endpoints) -> Self {
        self.singular = singular;
        self
    }

    pub fn max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    /// Copy of the tolerances of `self` applied to another interval.
    pub fn on(&self, lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            singular: Endpoints::NONE,
            initial_panels: 1,
            ..*self
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.lo.is_nan() || self.hi.is_nan() || self.lo > self.hi {
            return Err(Error::BadParam(alloc::format!(
                "empty or invalid interval [{}, {}]",
                self.lo,
                self.hi
            )));
        }
        if self.lo == f64::INFINITY || self.hi == f64::NEG_INFINITY {
            return Err(Error::BadParam("interval collapses at infinity".into()));
        }
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) || (self.abs_tol == 0.0 && self.rel_tol == 0.0)
        {
            return Err(Error::BadParam("tolerances must be >= 0 and not both zero".into()));
        }
        if self.max_panels == 0 {
            return Err(Error::BadParam("max_panels must be positive".into()));
        }
        Ok(())
    }
}

/// Absolute and relative accuracy request, as passed between modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT: Self = Self {
        abs: DEFAULT_ABS_TOL,
        rel: DEFAULT_REL_TOL,
    };

    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    /// Both components divided by `f`, used for inner levels of iterated
    /// integrals.
    pub fn tighter(self, f: f64) -> Self {
        Self {
            abs: self.abs / f,
            rel: self.rel / f,
        }
    }

    pub fn scaled_abs(self, scale: f64) -> Self {
        Self {
            abs: self.abs * scale,
            rel: self.rel,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Value of an integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<V = crate::ComplexValue> {
    pub value: V,
    pub err_est: f64,
    /// Number of integrand evaluations.
    pub evals: usize,
}
