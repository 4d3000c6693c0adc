use core::f64::consts::PI;

use super::region::{log_abs_diff_exp, log_sum_exp};
use crate::quadcore::{try_integrate_1d, Quadrature1DSpec, Tolerance};
use crate::{Complex64, Error, Result};

/// `|a - b|` below which `K_z(a, b)` is refused.
pub const COINCIDENCE_GAP: f64 = 1e-8;

/// `e^{2b} - ((e^{2a} - e^{2b} - e^{-2t})/(2e^{-t}))²`, the base of the
/// `(d-4)/2` power in `K_z`. Positive exactly on the open slice of `Ω`.
pub fn kernel_bracket(a: f64, b: f64, t: f64) -> f64 {
    let x = 0.5 * (libm::exp(2.0 * a + t) - libm::exp(2.0 * b + t) - libm::exp(-t));
    libm::exp(2.0 * b) - x * x
}

fn check(a: f64, b: f64, d: u32) -> Result<()> {
    if d < 3 {
        return Err(Error::BadParam(alloc::format!("K_z needs d >= 3, got {d}")));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::BadParam("non-finite kernel argument".into()));
    }
    let gap = (a - b).abs();
    if gap <= COINCIDENCE_GAP {
        return Err(Error::CoincidentArguments(gap));
    }
    Ok(())
}

/// `expm1(x)/x`, equal to 1 at 0.
fn expm1_ratio(x: f64) -> f64 {
    if x.abs() < 1e-300 {
        1.0
    } else {
        libm::expm1(x) / x
    }
}

/// `K_z(a, b) = ∫ [bracket]^{(d-4)/2} e^{2a+2b-t(z+(d-3)/2)} dt` over the
/// slice `-ln(e^a + e^b) < t < -ln|e^a - e^b|`.
pub fn kernel_k(z: Complex64, a: f64, b: f64, d: u32, tol: Tolerance) -> Result<Complex64> {
    check(a, b, d)?;
    kernel_k_unchecked(z, a, b, d, tol)
}

/// [`kernel_k`] without the coincidence guard; needs only `a ≠ b`. Used
/// inside 2D integrals that approach the diagonal.
///
/// With `t = t_lo + Δ·sin²(φ/2)` both square-root endpoint factors of the
/// bracket cancel against `dt = (Δ/2)·sin φ dφ`, which leaves a smooth
/// integrand on `[0, π]` for every `d ≥ 3`. The bracket is evaluated from the
/// exact endpoint distances `Δ·sin²(φ/2)` and `Δ·cos²(φ/2)`.
pub(crate) fn kernel_k_unchecked(z: Complex64, a: f64, b: f64, d: u32, tol: Tolerance) -> Result<Complex64> {
    let t_lo = -log_sum_exp(a, b);
    let t_hi = -log_abs_diff_exp(a, b);
    let delta = t_hi - t_lo;
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::CoincidentArguments((a - b).abs()));
    }
    let ln_u = -t_lo;
    let ln_l = -t_hi;
    let p = 0.5 * (d as f64 - 4.0);
    let m = d as f64 - 3.0;
    let shift = z + 0.5 * m;
    let half = 0.5 * delta;
    let f = |phi: f64| {
        let s = libm::sin(0.5 * phi);
        let c = libm::cos(0.5 * phi);
        let d_lo = delta * s * s;
        let d_hi = delta * c * c;
        let t = t_lo + d_lo;
        // τ = e^{-t}; g = bracket/(d_lo·d_hi), factored against cancellation.
        let ln_tau = -t;
        let tau_plus_l = libm::exp(ln_tau) + libm::exp(ln_l);
        let tau_plus_u = libm::exp(ln_tau) + libm::exp(ln_u);
        let ln_g = ln_l + libm::log(expm1_ratio(d_hi)) + libm::log(tau_plus_l) + ln_u
            + libm::log(-libm::expm1(-d_lo) / if d_lo > 0.0 { d_lo } else { 1.0 })
            + libm::log(tau_plus_u)
            - libm::log(4.0)
            - 2.0 * ln_tau;
        let mut e = -shift * t + (2.0 * (a + b) + p * ln_g);
        if m > 0.0 {
            let sp = libm::sin(phi);
            if sp <= 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            e += m * libm::log(half * sp);
        }
        Ok(e.exp())
    };
    let panels = (z.im.abs() * delta / PI).ceil() as usize + 2;
    let spec = Quadrature1DSpec::with_tol(0.0, PI, tol).initial_panels(panels);
    Ok(try_integrate_1d(f, &spec)?.value)
}

/// `K_z` through the law of cosines: with `A = e^a`, `B = e^b` and
/// `τ² = A² + B² - 2AB cos θ`,
/// `K_z = (AB)^{d-1} ∫_0^π sin^{d-3}θ · τ^{z-(d-1)/2} dθ`.
pub fn kernel_k_theta(z: Complex64, a: f64, b: f64, d: u32, tol: Tolerance) -> Result<Complex64> {
    check(a, b, d)?;
    let m = d as f64 - 3.0;
    let w = z - 0.5 * (d as f64 - 1.0);
    let pre = (d as f64 - 1.0) * (a + b);
    let diff2 = {
        let l = log_abs_diff_exp(a, b);
        libm::exp(2.0 * l)
    };
    let ab = libm::exp(a + b);
    let f = |theta: f64| {
        let s = libm::sin(0.5 * theta);
        let tau2 = diff2 + 4.0 * ab * s * s;
        let mut e = w * (0.5 * libm::log(tau2)) + pre;
        if m > 0.0 {
            let st = libm::sin(theta);
            if st <= 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            e += m * libm::log(st);
        }
        Ok(e.exp())
    };
    let delta = log_sum_exp(a, b) - log_abs_diff_exp(a, b);
    let panels = (z.im.abs() * delta / PI).ceil() as usize + 2;
    let spec = Quadrature1DSpec::with_tol(0.0, PI, tol).initial_panels(panels);
    Ok(try_integrate_1d(f, &spec)?.value)
}

/// `d = 4` closed form: `e^{2a+2b}·((e^a+e^b)^σ - |e^a-e^b|^σ)/σ` with
/// `σ = z + 1/2`, written as `e^{2a+2b}·Δ·e^{σm}·sinh(σΔ/2)/(σΔ/2)` so that
/// `σ → 0` is harmless.
pub fn kernel_k_d4_closed(z: Complex64, a: f64, b: f64) -> Result<Complex64> {
    check(a, b, 4)?;
    let ln_u = log_sum_exp(a, b);
    let ln_l = log_abs_diff_exp(a, b);
    let delta = ln_u - ln_l;
    let mid = 0.5 * (ln_u + ln_l);
    let sigma = z + 0.5;
    let x = sigma * (0.5 * delta);
    let sinhc = if x.norm() < 1e-4 { Complex64::new(1.0, 0.0) + x * x / 6.0 } else { x.sinh() / x };
    Ok((sigma * mid + 2.0 * (a + b)).exp() * sinhc * delta)
}
