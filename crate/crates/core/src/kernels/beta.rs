use core::f64::consts::PI;

use crate::quadcore::{log_gamma, try_integrate_1d, Quadrature1DSpec, Tolerance};
use crate::{Complex64, Error, Result};

/// `s = 2πit + (d-1)/2`, the exponent in `β(t) = ∫(e^x + e^{-x})^{-s} dx`.
fn exponent(t: Complex64, d: u32) -> Result<Complex64> {
    if d < 2 {
        return Err(Error::BadParam(alloc::format!("d = {d} < 2")));
    }
    let s = Complex64::new(0.0, 2.0 * PI) * t + 0.5 * (d as f64 - 1.0);
    if !(s.re > 0.0) {
        return Err(Error::BadParam(alloc::format!("Re(2πit + (d-1)/2) = {} must be positive", s.re)));
    }
    Ok(s)
}

/// `β(t) = ½·Γ(s/2)²/Γ(s)` with `s = 2πit + (d-1)/2`.
pub fn beta_fn(t: Complex64, d: u32) -> Result<Complex64> {
    let s = exponent(t, d)?;
    let l = log_gamma(s * 0.5)? * 2.0 - log_gamma(s)?;
    Ok(l.exp() * 0.5)
}

/// `β(t) = ∫_ℝ (2cosh x)^{-s} dx` by direct quadrature.
///
/// The integrand is even, so this integrates `2e^{-s(x + ln(1+e^{-2x}))}`
/// over `[0, X]` with `X` chosen so the dropped tail is below `e^{-40}`.
pub fn beta_fn_quadrature(t: Complex64, d: u32, tol: Tolerance) -> Result<Complex64> {
    let s = exponent(t, d)?;
    let x_max = 40.0 / s.re;
    let panels = (s.im.abs() * x_max / (2.0 * PI)).ceil() as usize + 1;
    let spec = Quadrature1DSpec::with_tol(0.0, x_max, tol).initial_panels(panels);
    let r = try_integrate_1d(|x| Ok((-s * (x + libm::log1p(libm::exp(-2.0 * x)))).exp() * 2.0), &spec)?;
    Ok(r.value)
}

/// `∫_ℝ (e^t + e^{-t})^{-((d-1)/2)(1 + Re λ̄)} dt`, the integral whose
/// finiteness gives convergence of the spherical intertwiner. Finite iff
/// the exponent is positive, i.e. `Re λ̄ > -1`; it is `β` at the purely
/// imaginary argument carrying that real exponent.
pub fn convergence_integral(re_lambda: f64, d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::BadParam(alloc::format!("d = {d} < 2")));
    }
    let s = 0.5 * (d as f64 - 1.0) * (1.0 + re_lambda);
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::BadParam(alloc::format!("exponent {s} must be positive: the integral diverges")));
    }
    let t = Complex64::new(0.0, (0.5 * (d as f64 - 1.0) - s) / (2.0 * PI));
    Ok(beta_fn(t, d)?.re)
}
