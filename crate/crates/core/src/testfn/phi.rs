use alloc::sync::Arc;

use super::{BumpPsi, Phi2D, Profile1D, SampledFunction, SupportBounds};
use crate::{Error, Result};

/// `φ_T(s, t) = T·ψ(T(s - t))·ψ((s + t)/2)`.
#[derive(Debug, Clone)]
pub struct PhiT {
    t_scale: f64,
    psi: Arc<BumpPsi>,
}

impl PhiT {
    pub fn new(t_scale: f64, psi: Arc<BumpPsi>) -> Result<Self> {
        if !(t_scale > 0.0 && t_scale.is_finite()) {
            return Err(Error::BadParam(alloc::format!("T = {t_scale} must be positive and finite")));
        }
        Ok(Self { t_scale, psi })
    }
    pub fn t_scale(&self) -> f64 {
        self.t_scale
    }
    pub fn psi(&self) -> &BumpPsi {
        &self.psi
    }
    pub fn psi_arc(&self) -> &Arc<BumpPsi> {
        &self.psi
    }
    /// `φ_T` in the rotated coordinates `u = s - t`, `v = (s + t)/2`.
    pub fn eval_uv(&self, u: f64, v: f64) -> f64 {
        let t = self.t_scale;
        t * self.psi.value(t * u) * self.psi.value(v)
    }
}

/// Free-function form of [`Phi2D::eval`] for [`PhiT`].
pub fn phi_t_eval(phi: &PhiT, s: f64, t: f64) -> f64 {
    phi.eval(s, t)
}

impl Phi2D for PhiT {
    fn eval(&self, s: f64, t: f64) -> f64 {
        self.eval_uv(s - t, 0.5 * (s + t))
    }
    fn bounds(&self) -> SupportBounds {
        let r = self.psi.support_radius();
        let du = r / self.t_scale;
        SupportBounds::from_uv((-du, du), (-r, r))
    }
}

/// Product `φ(a, b) = f(a)·g(b)`.
#[derive(Debug, Clone)]
pub struct SeparablePhi {
    pub fa: SampledFunction,
    pub fb: SampledFunction,
}

impl Phi2D for SeparablePhi {
    fn eval(&self, a: f64, b: f64) -> f64 {
        let x = self.fa.eval(a);
        if x == 0.0 {
            return 0.0;
        }
        x * self.fb.eval(b)
    }
    fn bounds(&self) -> SupportBounds {
        SupportBounds::from_box((self.fa.lo(), self.fa.hi()), (self.fb.lo(), self.fb.hi()))
    }
}

/// `φ(a, b) = ψ(b, a)`: the argument swap of another test function.
#[derive(Debug, Clone)]
pub struct Swapped<P>(pub P);

impl<P: Phi2D> Phi2D for Swapped<P> {
    fn eval(&self, a: f64, b: f64) -> f64 {
        self.0.eval(b, a)
    }
    fn bounds(&self) -> SupportBounds {
        let s = self.0.bounds();
        SupportBounds {
            a: s.b,
            b: s.a,
            u: (-s.u.1, -s.u.0),
            v: s.v,
        }
    }
}

/// Closure-backed test function with caller-declared support.
pub struct FnPhi<F> {
    f: F,
    bounds: SupportBounds,
}

impl<F: Fn(f64, f64) -> f64 + Sync> FnPhi<F> {
    pub fn new(f: F, bounds: SupportBounds) -> Self {
        Self { f, bounds }
    }
}

impl<F: Fn(f64, f64) -> f64 + Sync> Phi2D for FnPhi<F> {
    fn eval(&self, a: f64, b: f64) -> f64 {
        (self.f)(a, b)
    }
    fn bounds(&self) -> SupportBounds {
        self.bounds
    }
}
