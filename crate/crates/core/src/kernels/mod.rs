//! Spectral-side kernels.
//!
//! `R_φ(λ̃)` is computed by a direct route (the defining integral over
//! `(x, t)` or `(x, r, t)`, localised to the support of `φ`) and by a
//! transformed route: the decomposition `c₁ + c₂ + c₃` for `d = 2`, and the
//! kernel `K_z(a, b)` over the region `Ω` for `d ≥ 3`.

mod beta;
mod ft;
mod jacobian;
mod kernel;
mod region;
mod rphi;

pub use beta::{beta_fn, beta_fn_quadrature, convergence_integral};
pub use ft::{f_t, f_t_monte_carlo, f_t_prime, f_t_prime_moving_frame, FtBreakdown};
pub use jacobian::{jacobian_check_d2, jacobian_check_d3, JacobianCheck};
pub use kernel::{kernel_bracket, kernel_k, kernel_k_d4_closed, kernel_k_theta, COINCIDENCE_GAP};
pub use region::{omega_contains, omega_contains_log, omega_t_interval};
pub use rphi::{r_phi_closed_d2, r_phi_direct, r_phi_kernel, r_phi_scale, ClosedD2};

/// A point `(a, b) = (ln|x + e^{-t}|, ln|x|)` in the image of the `d = 2`
/// change of variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub a: f64,
    pub b: f64,
}

impl KernelPoint {
    pub fn from_xt(x: f64, t: f64) -> Self {
        Self {
            a: libm::log((x + libm::exp(-t)).abs()),
            b: libm::log(x.abs()),
        }
    }
}
