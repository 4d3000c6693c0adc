//! Test functions: the bump `ψ` (non-negative with non-negative transform)
//! and the two-variable family `φ_T(s, t) = T·ψ(T(s - t))·ψ((s + t)/2)`.

mod battery;
mod phi;
mod psi;
mod sampled;

pub use battery::{two_route_battery, BatteryEntry, BATTERY_NAMES};
pub use phi::{phi_t_eval, FnPhi, PhiT, SeparablePhi, Swapped};
pub use psi::{build_psi, build_psi_with, certify, psi_hat, BumpPsi, Certificate, DEFAULT_HALF_WIDTH, GRID_FLOOR, GRID_XI_MAX, UNIT_SAMPLES};
pub use sampled::{
    base_bump, base_bump_with, bump_derivative, bump_value, convolve, self_convolve, SampledFunction, DEFAULT_BUMP_POINTS, SMOOTH,
};

/// A compactly supported real function of one variable with a derivative.
pub trait Profile1D: Sync {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// Closed interval outside which the function vanishes.
    fn support(&self) -> (f64, f64);
}

/// A compactly supported real test function `φ(a, b)` on the plane.
pub trait Phi2D: Sync {
    fn eval(&self, a: f64, b: f64) -> f64;
    fn bounds(&self) -> SupportBounds;
}

/// Enclosures of the support in `a`, `b`, `u = a - b` and `v = (a + b)/2`.
/// Each is a valid enclosure on its own; intersecting them localises thin
/// supports such as `φ_T` for large `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportBounds {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub u: (f64, f64),
    pub v: (f64, f64),
}

impl SupportBounds {
    pub fn from_box(a: (f64, f64), b: (f64, f64)) -> Self {
        Self {
            a,
            b,
            u: (a.0 - b.1, a.1 - b.0),
            v: (0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1)),
        }
    }

    pub fn from_uv(u: (f64, f64), v: (f64, f64)) -> Self {
        Self {
            a: (v.0 + 0.5 * u.0, v.1 + 0.5 * u.1),
            b: (v.0 - 0.5 * u.1, v.1 - 0.5 * u.0),
            u,
            v,
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.u, self.v]
            .iter()
            .all(|(l, h)| l.is_finite() && h.is_finite() && l <= h)
    }

    /// `v`-range compatible with a given `u`.
    pub fn v_given_u(&self, u: f64) -> (f64, f64) {
        let lo = self.v.0.max(self.a.0 - 0.5 * u).max(self.b.0 + 0.5 * u);
        let hi = self.v.1.min(self.a.1 - 0.5 * u).min(self.b.1 + 0.5 * u);
        (lo, hi)
    }
}
