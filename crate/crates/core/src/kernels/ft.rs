//! `f_T(t)`: the function whose Fourier transform in `t` is `∬φ_T K_z`.
//!
//! In the rotated coordinates `(a, b) = (s - t', (s + t')/2)`,
//! `f_T(t) = ∬_{Ω_t} Tψ(Ta)ψ(b) B^{(d-4)/2} e^{4b - t(d-3)/2} da db` with
//! `B = e^{2b-a} - ((e^{2b+a} - e^{2b-a} - e^{-2t})/(2e^{-t}))²` and the slice
//! `2e^b sinh(|a|/2) < e^{-t} < 2e^b cosh(a/2)`. The `b`-limits are
//! `β_lo(a) - t` and `β_hi(a) - t` with `β_lo = -ln(2cosh(a/2))` and
//! `β_hi = -ln(2sinh(|a|/2))`. In the co-moving variable `β = b + t` the
//! region no longer depends on `t` and
//! `B = e^{-2t}·¼·expm1(2(β - β_lo))·(1 - e^{-2(β_hi - β)})`.

use crate::quadcore::{integrate_outer, try_integrate_1d_nodes, Endpoints, Node, QuadResult, Quadrature1DSpec, Tolerance};
use crate::testfn::Profile1D;
use crate::{Complex64, Error, Result};

fn beta_lo(a: f64) -> f64 {
    let h = 0.5 * a.abs();
    -(h + libm::log1p(libm::exp(-a.abs())))
}

fn beta_hi(a: f64) -> f64 {
    if a == 0.0 {
        return f64::INFINITY;
    }
    let h = 0.5 * a.abs();
    -(h + libm::log(-libm::expm1(-a.abs())))
}

/// `e^{2t}·B` from the distances to both ends of the `β`-slice.
fn q_factor(d_lo: f64, d_hi: f64) -> f64 {
    0.25 * libm::expm1(2.0 * d_lo) * -libm::expm1(-2.0 * d_hi)
}

fn check(t_scale: f64, t: f64, d: u32) -> Result<()> {
    if d < 3 {
        return Err(Error::BadParam(alloc::format!("f_T needs d >= 3, got {d}")));
    }
    if !(t_scale > 0.0 && t_scale.is_finite() && t.is_finite()) {
        return Err(Error::BadParam(alloc::format!("T = {t_scale}, t = {t}")));
    }
    Ok(())
}

fn empty() -> QuadResult {
    QuadResult {
        value: Complex64::new(0.0, 0.0),
        err_est: 0.0,
        evals: 0,
    }
}

/// `∫ Tψ(Ta) ∫ g(a, β, B e^{2t}) e^{4β} dβ da` over the fixed region, with
/// `g(a, β, Q)` supplied by the caller. Inner integrals are restricted to
/// `β - t ∈ supp ψ`; ends that are region boundaries are treated as
/// singular when `d ≠ 4`, and the integrand sees exact boundary distances.
fn region_integral(
    psi: &dyn Profile1D,
    t_scale: f64,
    t: f64,
    d: u32,
    tol: Tolerance,
    g: &dyn Fn(f64, f64, f64) -> f64,
) -> Result<f64> {
    let (plo, phi) = psi.support();
    let outer = Quadrature1DSpec::with_tol(plo / t_scale, phi / t_scale, tol).initial_panels(4);
    let inner_tol = tol.tighter(10.0);
    let r = integrate_outer(
        |a| {
            let wa = t_scale * psi.value(t_scale * a);
            if wa == 0.0 {
                return Ok(empty());
            }
            let (bl, bh) = (beta_lo(a), beta_hi(a));
            let lo_end = bl >= t + plo;
            let hi_end = bh <= t + phi;
            let lo = if lo_end { bl } else { t + plo };
            let hi = if hi_end { bh } else { t + phi };
            if !(lo < hi) {
                return Ok(empty());
            }
            let spec = Quadrature1DSpec::with_tol(lo, hi, inner_tol).singular(Endpoints {
                lower: lo_end && d != 4,
                upper: hi_end && d != 4,
            });
            let mut q = try_integrate_1d_nodes(
                |n: Node| {
                    let d_lo = if lo_end { n.from_lo } else { n.x - bl };
                    let d_hi = if hi_end { n.from_hi } else { bh - n.x };
                    let v = g(a, n.x, q_factor(d_lo, d_hi));
                    if v == 0.0 {
                        return Ok(Complex64::new(0.0, 0.0));
                    }
                    Ok(Complex64::new(v * libm::exp(4.0 * (n.x - t)), 0.0))
                },
                &spec,
            )?;
            q.value *= wa;
            q.err_est *= wa;
            Ok(q)
        },
        &outer,
    )?;
    Ok(r.value.re)
}

/// `Q^{(d-4)/2}` with `Q = e^{2t}B`.
fn q_power(q: f64, d: u32) -> f64 {
    match d {
        4 => 1.0,
        _ => libm::pow(q, 0.5 * (d as f64 - 4.0)),
    }
}

/// `f_T(t)` for `φ_T(s, t') = Tψ(T(s - t'))ψ((s + t')/2)`; exactly 0 when the
/// slice misses the support.
pub fn f_t(psi: &dyn Profile1D, t_scale: f64, t: f64, d: u32, tol: Tolerance) -> Result<f64> {
    check(t_scale, t, d)?;
    // e^{4b} = e^{4(β-t)}; B^{p} = e^{-2pt}Q^p; overall e^{-t(d-4) - t(d-3)/2}.
    let c = -(d as f64 - 4.0) - 0.5 * (d as f64 - 3.0);
    let v = region_integral(psi, t_scale, t, d, tol, &|_a, beta, q| psi.value(beta - t) * q_power(q, d))?;
    Ok(v * libm::exp(c * t))
}

/// `f_T'(t)` by differentiating under the integral in `β = b + t`:
/// `f_T' = (c - 4)·f_T - e^{ct}∬Tψ(Ta)ψ'(β - t)Q^{(d-4)/2}e^{4(β-t)}`, no boundary
/// terms because the region is fixed.
pub fn f_t_prime_moving_frame(psi: &dyn Profile1D, t_scale: f64, t: f64, d: u32, tol: Tolerance) -> Result<f64> {
    check(t_scale, t, d)?;
    let c = -(d as f64 - 4.0) - 0.5 * (d as f64 - 3.0);
    let v = region_integral(psi, t_scale, t, d, tol, &|_a, beta, q| {
        let s = beta - t;
        ((c - 4.0) * psi.value(s) - psi.derivative(s)) * q_power(q, d)
    })?;
    Ok(v * libm::exp(c * t))
}

/// `f_T'` as interior term plus the two moving-boundary terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtBreakdown {
    /// `∬_{Ω_t} ∂_t G`.
    pub interior: f64,
    /// `+∫G(a, b_lo(a), t) da` on `e^{-t} = 2e^b cosh(a/2)`.
    pub lower_boundary: f64,
    /// `-∫G(a, b_hi(a), t) da` on `e^{-t} = 2e^b sinh(|a|/2)`.
    pub upper_boundary: f64,
    pub value: f64,
    /// Set for `d = 3`, where the interior term and both boundary terms
    /// diverge separately; `interior` then holds their finite-part sum,
    /// evaluated in the co-moving variable, and the boundary terms are 0.
    pub regularized: bool,
}

/// `f_T'(t)` by the boundary-term (Leibniz) decomposition in `(a, b)`.
pub fn f_t_prime(psi: &dyn Profile1D, t_scale: f64, t: f64, d: u32, tol: Tolerance) -> Result<FtBreakdown> {
    check(t_scale, t, d)?;
    if d == 3 {
        let v = f_t_prime_moving_frame(psi, t_scale, t, d, tol)?;
        return Ok(FtBreakdown {
            interior: v,
            lower_boundary: 0.0,
            upper_boundary: 0.0,
            value: v,
            regularized: true,
        });
    }
    let c = -(d as f64 - 4.0) - 0.5 * (d as f64 - 3.0);
    let p = 0.5 * (d as f64 - 4.0);
    // ∂_t G / G = p·∂_t B/B - (d-3)/2 with ∂_t B/B = -2 + ∂_β Q/Q.
    let interior = region_integral(psi, t_scale, t, d, tol, &|a, beta, q| {
        let s = beta - t;
        let base = psi.value(s);
        if base == 0.0 {
            return 0.0;
        }
        let lead = -0.5 * (d as f64 - 3.0) * q_power(q, d);
        if d == 4 {
            return base * lead;
        }
        let d_lo = beta - beta_lo(a);
        let d_hi = beta_hi(a) - beta;
        let dq = 0.5 * (libm::exp(2.0 * d_lo) * -libm::expm1(-2.0 * d_hi) - libm::expm1(2.0 * d_lo) * libm::exp(-2.0 * d_hi));
        // p·Q^{p-1}·(∂Q - 2Q)
        base * (lead + p * libm::pow(q, p - 1.0) * (dq - 2.0 * q))
    })? * libm::exp(c * t);
    let (lower_boundary, upper_boundary) = if d == 4 {
        let edge = |which: fn(f64) -> f64| -> Result<f64> {
            let (plo, phi) = psi.support();
            let spec = Quadrature1DSpec::with_tol(plo / t_scale, phi / t_scale, tol).initial_panels(4);
            let r = crate::quadcore::try_integrate_1d(
                |a| {
                    let b = which(a) - t;
                    if !b.is_finite() {
                        return Ok(Complex64::new(0.0, 0.0));
                    }
                    let v = t_scale * psi.value(t_scale * a) * psi.value(b);
                    Ok(Complex64::new(v * libm::exp(4.0 * b - 0.5 * t), 0.0))
                },
                &spec,
            )?;
            Ok(r.value.re)
        };
        (edge(beta_lo)?, -edge(beta_hi)?)
    } else {
        (0.0, 0.0)
    };
    Ok(FtBreakdown {
        interior,
        lower_boundary,
        upper_boundary,
        value: interior + lower_boundary + upper_boundary,
        regularized: false,
    })
}

/// Monte-Carlo estimate of `f_T(t)` from the `(x, r)` form
/// `e^{-t(d-1)/2}∫∫ r^{d-3} φ_T(½ln((x+e^{-t})²+r²), ½ln(x²+r²)) dr dx`,
/// sampling `ln ρ` and the polar angle uniformly. `uniform` must return
/// independent draws from `[0, 1)`. Returns the estimate and its standard
/// error.
pub fn f_t_monte_carlo(
    psi: &dyn Profile1D,
    t_scale: f64,
    t: f64,
    d: u32,
    samples: usize,
    mut uniform: impl FnMut() -> f64,
) -> Result<(f64, f64)> {
    check(t_scale, t, d)?;
    if samples < 2 {
        return Err(Error::BadParam("need at least two samples".into()));
    }
    let (plo, phi) = psi.support();
    // b = v - u/2 with v ∈ supp ψ, u ∈ supp ψ / T.
    let b_lo = plo - 0.5 * phi / t_scale;
    let b_hi = phi - 0.5 * plo / t_scale;
    let vol = (b_hi - b_lo) * core::f64::consts::PI;
    let tau = libm::exp(-t);
    let m = d as f64 - 3.0;
    let (mut s1, mut s2) = (crate::quadcore::NeumaierSum::new(), crate::quadcore::NeumaierSum::new());
    for _ in 0..samples {
        let b = b_lo + (b_hi - b_lo) * uniform();
        let theta = core::f64::consts::PI * uniform();
        let rho = libm::exp(b);
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        let y = tau + rho * c;
        let h = rho * s;
        let a = 0.5 * libm::log(y * y + h * h);
        let u = a - b;
        let v = 0.5 * (a + b);
        let f = t_scale * psi.value(t_scale * u) * psi.value(v);
        let g = if f == 0.0 { 0.0 } else { f * rho * rho * libm::pow(h, m) };
        s1.add(g);
        s2.add(g * g);
    }
    let n = samples as f64;
    let mean = s1.value() / n;
    let var = (s2.value() / n - mean * mean).max(0.0) * n / (n - 1.0);
    let w = vol * libm::exp(-0.5 * t * (d as f64 - 1.0));
    Ok((mean * w, (var / n).sqrt() * w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{build_psi, SampledFunction};

    const TIGHT: Tolerance = Tolerance::new(1e-14, 1e-12);

    #[test]
    fn zero_psi_and_empty_region() {
        let z = SampledFunction::zero(-1.0, 1.0, 65).unwrap();
        assert_eq!(f_t(&z, 2.0, 0.3, 3, TIGHT).unwrap(), 0.0);
        assert_eq!(f_t_prime(&z, 2.0, 0.3, 3, TIGHT).unwrap().value, 0.0);
        let psi = build_psi(0.25, 1.0).unwrap();
        assert_eq!(f_t(&psi, 1.0, -3.0, 3, TIGHT).unwrap(), 0.0);
        assert!(f_t(&psi, 1.0, 0.0, 3, TIGHT).unwrap() > 0.0);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let psi = build_psi(0.25, 1.0).unwrap();
        let h = 1e-4;
        for d in [3, 4, 5] {
            for &t in &[-1.2, -0.4, 0.5, 2.0] {
                let fd = (f_t(&psi, 2.0, t + h, d, TIGHT).unwrap() - f_t(&psi, 2.0, t - h, d, TIGHT).unwrap()) / (2.0 * h);
                let mf = f_t_prime_moving_frame(&psi, 2.0, t, d, TIGHT).unwrap();
                let br = f_t_prime(&psi, 2.0, t, d, TIGHT).unwrap();
                assert!((fd - mf).abs() < 1e-6 * (1.0 + fd.abs()), "d={d} t={t}: fd {fd} mf {mf}");
                assert!((br.value - mf).abs() < 1e-8 * (1.0 + mf.abs()), "d={d} t={t}: {br:?} vs {mf}");
                assert_eq!(br.regularized, d == 3);
            }
        }
    }
}
