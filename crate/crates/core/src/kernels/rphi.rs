use alloc::vec::Vec;
use core::f64::consts::PI;

use super::kernel::kernel_k_unchecked;
use crate::quadcore::{integrate_2d, integrate_outer, try_integrate_1d, unit_ball_volume, QuadResult, Quadrature1DSpec, Tolerance, Endpoints};
use crate::testfn::{Phi2D, SupportBounds};
use crate::{Complex64, Error, Result};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn empty() -> QuadResult {
    QuadResult {
        value: zero(),
        err_est: 0.0,
        evals: 0,
    }
}

fn localise(phi: &dyn Phi2D) -> Result<SupportBounds> {
    let b = phi.bounds();
    if !b.is_finite() {
        return Err(Error::RegionResolution(alloc::format!("{b:?}")));
    }
    Ok(b)
}

/// `(d-2)·vol(B_{d-2})`.
fn prefactor(d: u32) -> f64 {
    (d as f64 - 2.0) * unit_ball_volume(d - 2)
}

/// Range of `m = e^a` allowed by the support when `e^b = ρ`.
fn m_range(sb: &SupportBounds, b: f64) -> Option<(f64, f64)> {
    let lo = sb.a.0.max(b + sb.u.0).max(2.0 * sb.v.0 - b);
    let hi = sb.a.1.min(b + sb.u.1).min(2.0 * sb.v.1 - b);
    (lo < hi).then(|| (libm::exp(lo), libm::exp(hi)))
}

/// Integrates `g(w)` over the `w = √τ` images of the `τ`-intervals, summing
/// the pieces.
fn over_pieces(
    pieces: &[(f64, f64)],
    lam: Complex64,
    singular_at_zero: bool,
    tol: Tolerance,
    mut g: impl FnMut(f64) -> Result<Complex64>,
) -> Result<QuadResult> {
    let mut out = empty();
    for &(t0, t1) in pieces {
        let (w0, w1) = (libm::sqrt(t0.max(0.0)), libm::sqrt(t1));
        if !(w1 > w0) {
            continue;
        }
        let span = libm::log(w1 / w0.max(w1 * 1e-3));
        let panels = (2.0 * lam.re.abs() * span).ceil() as usize + 1;
        let mut spec = Quadrature1DSpec::with_tol(w0, w1, tol).initial_panels(panels);
        if w0 == 0.0 && singular_at_zero {
            spec = spec.singular(Endpoints::LOWER);
        }
        let q = try_integrate_1d(&mut g, &spec)?;
        out.value += q.value;
        out.err_est += q.err_est;
        out.evals += q.evals;
    }
    Ok(out)
}

fn direct_d2(phi: &dyn Fn(f64, f64) -> f64, sb: &SupportBounds, lam: Complex64, tol: Tolerance) -> Result<QuadResult> {
    // R = 2 Σ_± ∫ e^b ∫ φ(ln|x + w²|, b) w^{4πiλ̃} dw db with x = ±e^b.
    let i4pl = Complex64::new(0.0, 4.0 * PI) * lam;
    let inner_tol = tol.tighter(10.0);
    let singular = lam.im > 0.0;
    let outer = Quadrature1DSpec::with_tol(sb.b.0, sb.b.1, tol).initial_panels(4);
    let mut total = empty();
    for sign in [1.0, -1.0] {
        let q = integrate_outer(
            |b| {
                let Some((m_lo, m_hi)) = m_range(sb, b) else { return Ok(empty()) };
                let x = sign * libm::exp(b);
                let pieces = [(m_lo - x, m_hi - x), (-m_hi - x, -m_lo - x)];
                let pieces: Vec<_> = pieces.iter().copied().filter(|p| p.1 > 0.0).collect();
                let mut r = over_pieces(&pieces, lam, singular, inner_tol, |w| {
                    let f = phi(libm::log((x + w * w).abs()), b);
                    if f == 0.0 {
                        return Ok(zero());
                    }
                    Ok((i4pl * libm::log(w)).exp() * (2.0 * f))
                })?;
                let eb = libm::exp(b);
                r.value *= eb;
                r.err_est *= eb;
                Ok(r)
            },
            &outer,
        )?;
        total.value += q.value;
        total.err_est += q.err_est;
        total.evals += q.evals;
    }
    Ok(total)
}

fn direct_d3(phi: &dyn Fn(f64, f64) -> f64, sb: &SupportBounds, lam: Complex64, d: u32, tol: Tolerance) -> Result<QuadResult> {
    // Polar (x, r) = ρ(cos θ, sin θ), ρ = e^b, τ = e^{-t} = w²:
    // R = C_d ∫db ∫dw 2w^{d-2+4πiλ̃} ∫dθ ρ²(ρ sin θ)^{d-3} φ(a, b),
    // a = ½ ln(ρ² + 2ρτ cos θ + τ²). The oscillatory w-level sits in the
    // middle so the innermost θ-integral is smooth and cheap.
    let m = d as f64 - 3.0;
    let pw = Complex64::new(d as f64 - 2.0, 0.0) + Complex64::new(0.0, 4.0 * PI) * lam;
    let singular = pw.re < 0.0;
    let pre = prefactor(d);
    let mid_tol = tol.tighter(4.0);
    let inner_tol = tol.tighter(16.0);
    let outer = Quadrature1DSpec::with_tol(sb.b.0, sb.b.1, tol).initial_panels(4);
    let mut q = integrate_outer(
        |b| {
            let Some((m_lo, m_hi)) = m_range(sb, b) else { return Ok(empty()) };
            let rho = libm::exp(b);
            // |m - ρ| ≤ τ ≤ m + ρ
            let t0 = (m_lo - rho).max(rho - m_hi).max(0.0);
            let t1 = m_hi + rho;
            let (w0, w1) = (libm::sqrt(t0), libm::sqrt(t1));
            let span = libm::log(w1 / w0.max(w1 * 1e-3));
            let panels = (2.0 * lam.re.abs() * span).ceil() as usize + 1;
            let mut middle = Quadrature1DSpec::with_tol(w0, w1, mid_tol).initial_panels(panels);
            if w0 == 0.0 && singular {
                middle = middle.singular(Endpoints::LOWER);
            }
            let mut r = integrate_outer(
                |w| {
                    let tau = w * w;
                    let cos_of = |mm: f64| (((mm - rho) * (mm + rho) - tau * tau) / (2.0 * rho * tau)).clamp(-1.0, 1.0);
                    let (th0, th1) = (libm::acos(cos_of(m_hi)), libm::acos(cos_of(m_lo)));
                    if !(th1 > th0) {
                        return Ok(empty());
                    }
                    let spec = Quadrature1DSpec::with_tol(th0, th1, inner_tol).initial_panels(2);
                    let mut j = try_integrate_1d(
                        |theta| {
                            let (s, c) = (libm::sin(theta), libm::cos(theta));
                            let y = tau + rho * c;
                            let h = rho * s;
                            let f = phi(0.5 * libm::log(y * y + h * h), b);
                            if f == 0.0 {
                                return Ok(zero());
                            }
                            let wt = if m > 0.0 { libm::pow(h, m) } else { 1.0 };
                            Ok(Complex64::new(f * wt, 0.0))
                        },
                        &spec,
                    )?;
                    let g = (pw * libm::log(w)).exp() * (2.0 * rho * rho);
                    j.err_est *= g.norm();
                    j.value *= g;
                    Ok(j)
                },
                &middle,
            )?;
            // φ vanishes at the edges only through the support, so a zero
            // middle integrand is legitimate.
            r.err_est = r.err_est.abs();
            Ok(r)
        },
        &outer,
    )?;
    q.value *= pre;
    q.err_est *= pre;
    Ok(q)
}

fn direct_impl(phi: &dyn Fn(f64, f64) -> f64, sb: &SupportBounds, lam: Complex64, d: u32, tol: Tolerance) -> Result<QuadResult> {
    if !(lam.re.is_finite() && lam.im.is_finite()) {
        return Err(Error::BadParam("non-finite λ̃".into()));
    }
    match d {
        0 | 1 => Err(Error::BadParam(alloc::format!("d = {d} < 2"))),
        2 => direct_d2(phi, sb, lam, tol),
        _ => direct_d3(phi, sb, lam, d, tol),
    }
}

/// `R_φ(λ̃)` from its defining integral.
///
/// `d = 2`: `∫∫φ(ln|x + e^{-t}|, ln|x|)e^{-t(2πiλ̃+1/2)} dt dx`.
/// `d ≥ 3`: `(d-2)vol(B_{d-2}) ∫∫∫ r^{d-3} φ(½ln((x+e^{-t})²+r²), ½ln(x²+r²))
/// e^{-t(2πiλ̃+(d-1)/2)} dr dt dx`.
///
/// Only the part of `(x, t[, r])`-space mapped into the support box of `φ`
/// is integrated, with `τ = e^{-t} = w²` and, for `d ≥ 3`, polar
/// coordinates in `(x, r)`.
pub fn r_phi_direct(phi: &dyn Phi2D, lam: Complex64, d: u32, tol: Tolerance) -> Result<QuadResult> {
    let sb = localise(phi)?;
    direct_impl(&|a, b| phi.eval(a, b), &sb, lam, d, tol)
}

/// The `L¹` size of the direct integrand: [`r_phi_direct`] with `|φ|` and
/// `λ̃` replaced by `i·Im λ̃`. Two-route comparisons are measured against it.
pub fn r_phi_scale(phi: &dyn Phi2D, lam: Complex64, d: u32) -> Result<f64> {
    let sb = localise(phi)?;
    let abs_phi = |a: f64, b: f64| phi.eval(a, b).abs();
    let lam = Complex64::new(0.0, lam.im);
    // Coarse passes fix the absolute tolerance of the final one; a purely
    // relative request would make the inner levels chase negligible pieces.
    let mut abs = 1e-3;
    let rough = loop {
        let r = direct_impl(&abs_phi, &sb, lam, d, Tolerance::new(abs, 1e-3))?.value.re;
        if r == 0.0 || abs <= 1e-3 * r {
            break r;
        }
        abs = 1e-3 * r;
    };
    if rough == 0.0 {
        return Ok(0.0);
    }
    let q = direct_impl(&abs_phi, &sb, lam, d, Tolerance::new(1e-7 * rough, 1e-6))?;
    Ok(q.value.re)
}

/// The three pieces of the `d = 2` decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedD2 {
    /// `∫_{a>b} φ e^{a+b}(e^a - e^b)^z`
    pub c1: Complex64,
    /// `∫ φ e^{a+b}(e^a + e^b)^z`
    pub c2: Complex64,
    /// `∫_{a<b} φ e^{a+b}(e^b - e^a)^z`
    pub c3: Complex64,
    pub err_est: f64,
}

impl ClosedD2 {
    pub fn total(&self) -> Complex64 {
        self.c1 + self.c2 + self.c3
    }
}

/// Integrates `g(u, v)` over one side of the diagonal with `u = ±s²`.
/// `g` receives `(s, u, v)` and must include the `2s` Jacobian.
fn half_plane(
    sb: &SupportBounds,
    side: f64,
    singular: bool,
    tol: Tolerance,
    mut g: impl FnMut(f64, f64, f64) -> Result<Complex64>,
) -> Result<QuadResult> {
    let reach = if side > 0.0 { sb.u.1 } else { -sb.u.0 };
    if !(reach > 0.0) {
        return Ok(empty());
    }
    let mut outer = Quadrature1DSpec::with_tol(0.0, libm::sqrt(reach), tol).initial_panels(4);
    if singular {
        outer = outer.singular(Endpoints::LOWER);
    }
    let inner_tol = tol.tighter(10.0);
    integrate_2d(
        |s, v| g(s, side * s * s, v),
        &outer,
        |s| {
            let (lo, hi) = sb.v_given_u(side * s * s);
            Quadrature1DSpec::with_tol(lo, hi.max(lo), inner_tol).initial_panels(2)
        },
    )
}

/// `c₁ + c₂ + c₃` with `z = 2πiλ̃ - 1/2` (`d = 2`). The `|e^a - e^b|^{-1/2}`
/// edge is removed by `u = ±s²`.
pub fn r_phi_closed_d2(phi: &dyn Phi2D, lam: Complex64, tol: Tolerance) -> Result<ClosedD2> {
    let sb = localise(phi)?;
    let z = Complex64::new(-0.5, 0.0) + Complex64::new(0.0, 2.0 * PI) * lam;
    let edge = |s: f64, u: f64, v: f64| {
        let (a, b) = (v + 0.5 * u, v - 0.5 * u);
        let f = phi.eval(a, b);
        if f == 0.0 || s == 0.0 {
            return Ok(zero());
        }
        // e^a - e^b = e^{min(a,b)}·expm1(|u|), with |u| = s² kept in log
        // form so tanh-sinh nodes next to s = 0 stay finite.
        let au = u.abs();
        let rel = if au > 0.0 { libm::log(libm::expm1(au) / au) } else { 0.0 };
        let ln_gap = a.min(b) + 2.0 * libm::log(s) + rel;
        Ok((z * ln_gap + (a + b) + libm::log(2.0 * s)).exp() * f)
    };
    // Complementary λ̃ push the edge exponent below -1/2: still integrable
    // after u = s², but no longer bounded.
    let singular = z.re < -0.5;
    let c1 = half_plane(&sb, 1.0, singular, tol, edge)?;
    let c3 = half_plane(&sb, -1.0, singular, tol, edge)?;
    let outer = Quadrature1DSpec::with_tol(sb.u.0, sb.u.1, tol).initial_panels(4);
    let c2 = integrate_2d(
        |u, v| {
            let (a, b) = (v + 0.5 * u, v - 0.5 * u);
            let f = phi.eval(a, b);
            if f == 0.0 {
                return Ok(zero());
            }
            let ln_sum = super::region::log_sum_exp(a, b);
            Ok((z * ln_sum + (a + b)).exp() * f)
        },
        &outer,
        |u| {
            let (lo, hi) = sb.v_given_u(u);
            Quadrature1DSpec::with_tol(lo, hi.max(lo), tol.tighter(10.0)).initial_panels(2)
        },
    )?;
    Ok(ClosedD2 {
        c1: c1.value,
        c2: c2.value,
        c3: c3.value,
        err_est: c1.err_est + c2.err_est + c3.err_est,
    })
}

/// Smallest `|a - b|` at which the kernel route evaluates `K_z`.
const U_FLOOR: f64 = 1e-300;

/// `(d-2)vol(B_{d-2}) ∫∫ φ(a, b) K_{2πiλ̃}(a, b) da db` for `d ≥ 3`.
///
/// `K_z` is homogeneous along the diagonal,
/// `K_z(v + u/2, v - u/2) = e^{v(z + 3(d-1)/2)} K_z(u/2, -u/2)`, so one kernel
/// evaluation per `u`-node suffices. The domain is split at the diagonal
/// with `u = ±s²` on each side.
pub fn r_phi_kernel(phi: &dyn Phi2D, lam: Complex64, d: u32, tol: Tolerance) -> Result<QuadResult> {
    if d < 3 {
        return Err(Error::BadParam(alloc::format!("kernel route needs d >= 3, got {d}")));
    }
    let sb = localise(phi)?;
    let z = Complex64::new(0.0, 2.0 * PI) * lam;
    let growth = z + 1.5 * (d as f64 - 1.0);
    let k_tol = tol.tighter(10.0);
    let inner_tol = tol.tighter(10.0);
    let v_panels = (lam.re.abs() * (sb.v.1 - sb.v.0)).ceil() as usize + 2;
    let mut out = empty();
    for side in [1.0, -1.0] {
        let reach = if side > 0.0 { sb.u.1 } else { -sb.u.0 };
        if !(reach > 0.0) {
            continue;
        }
        let mut outer = Quadrature1DSpec::with_tol(0.0, libm::sqrt(reach), tol).initial_panels(4);
        if z.re < -0.5 {
            outer = outer.singular(Endpoints::LOWER);
        }
        let q = integrate_outer(
            |s| {
                let u = side * s * s;
                let (lo, hi) = sb.v_given_u(u);
                // Near the diagonal the integrand is O(s^{2Re z + 1}) with exponent
                // above -1, so dropping |u| < U_FLOOR loses O(U_FLOOR^{Re z + 1});
                // below it K_z cannot be resolved in f64.
                if u.abs() < U_FLOOR || !(hi > lo) {
                    return Ok(empty());
                }
                let spec = Quadrature1DSpec::with_tol(lo, hi, inner_tol).initial_panels(v_panels);
                let mut vq = try_integrate_1d(
                    |v| {
                        let f = phi.eval(v + 0.5 * u, v - 0.5 * u);
                        if f == 0.0 {
                            return Ok(zero());
                        }
                        Ok((growth * v).exp() * f)
                    },
                    &spec,
                )?;
                if vq.value == zero() {
                    return Ok(vq);
                }
                let k = kernel_k_unchecked(z, 0.5 * u, -0.5 * u, d, k_tol)? * (2.0 * s);
                vq.err_est *= k.norm();
                vq.value *= k;
                Ok(vq)
            },
            &outer,
        )?;
        out.value += q.value;
        out.err_est += q.err_est;
        out.evals += q.evals;
    }
    let pre = prefactor(d);
    out.value *= pre;
    out.err_est *= pre;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{base_bump, build_psi, FnPhi, PhiT, SampledFunction, SeparablePhi, Swapped};
    use alloc::sync::Arc;

    const TOL: Tolerance = Tolerance::new(1e-11, 1e-9);

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn phi_t(t: f64) -> PhiT {
        PhiT::new(t, Arc::new(build_psi(0.25, 1.0).unwrap())).unwrap()
    }

    fn separable(ca: f64, cb: f64, hw: f64) -> SeparablePhi {
        let u = base_bump(hw).unwrap();
        SeparablePhi {
            fa: u.shifted(ca),
            fb: u.shifted(cb),
        }
    }

    #[test]
    fn prefactors() {
        assert!((prefactor(3) - 2.0).abs() < 1e-14);
        assert!((prefactor(4) - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn zero_phi_gives_zero() {
        let z = SampledFunction::zero(-1.0, 1.0, 65).unwrap();
        let phi = SeparablePhi { fa: z.clone(), fb: z };
        for d in [2, 3] {
            assert_eq!(r_phi_direct(&phi, c(0.0), d, TOL).unwrap().value, c(0.0));
        }
    }

    #[test]
    fn d2_direct_matches_closed() {
        let phi = phi_t(1.0);
        for lam in [0.0, 1.0] {
            let s = r_phi_scale(&phi, c(lam), 2).unwrap();
            let tol = Tolerance::new(1e-8 * s, 1e-8);
            let r = r_phi_direct(&phi, c(lam), 2, tol).unwrap().value;
            let k = r_phi_closed_d2(&phi, c(lam), tol).unwrap().total();
            assert!((r - k).norm() <= 1e-7 * s, "λ={lam}: {r} vs {k} (scale {s})");
        }
    }

    #[test]
    fn d2_c_pieces_symmetry_and_separation() {
        let phi = separable(0.4, -0.1, 0.3);
        let a = r_phi_closed_d2(&phi, c(0.5), TOL).unwrap();
        let b = r_phi_closed_d2(&Swapped(phi.clone()), c(0.5), TOL).unwrap();
        assert!((a.c1 - b.c3).norm() < 1e-9 && (a.c3 - b.c1).norm() < 1e-9 && (a.c2 - b.c2).norm() < 1e-9);
        // Supported in a > b + 1: nothing below the diagonal.
        let far = separable(1.0, -0.8, 0.3);
        let r = r_phi_closed_d2(&far, c(0.0), TOL).unwrap();
        assert_eq!(r.c3, c(0.0));
        assert!(r.c1.re > 0.0);
    }

    #[test]
    fn d3_direct_matches_kernel() {
        let phi = phi_t(1.0);
        for lam in [0.0, 1.0] {
            let s = r_phi_scale(&phi, c(lam), 3).unwrap();
            let tol = Tolerance::new(1e-8 * s, 1e-8);
            let r = r_phi_direct(&phi, c(lam), 3, tol).unwrap().value;
            let k = r_phi_kernel(&phi, c(lam), 3, tol).unwrap().value;
            assert!((r - k).norm() <= 1e-7 * s, "λ={lam}: {r} vs {k} (scale {s})");
        }
    }

    #[test]
    fn non_separable_d4_and_complementary_d3() {
        let u = base_bump(0.4).unwrap();
        let phi = FnPhi::new(
            move |a: f64, b: f64| u.eval(a - 0.1) * u.eval(b + 0.2) * (1.0 + 0.5 * a * b),
            SupportBounds::from_box((-0.3, 0.5), (-0.6, 0.2)),
        );
        let s = r_phi_scale(&phi, c(0.7), 4).unwrap();
        let tol = Tolerance::new(1e-8 * s, 1e-8);
        let r = r_phi_direct(&phi, c(0.7), 4, tol).unwrap().value;
        let k = r_phi_kernel(&phi, c(0.7), 4, tol).unwrap().value;
        assert!((r - k).norm() <= 1e-7 * s, "{r} vs {k}");
        let lam = Complex64::new(0.0, 0.1);
        let s = r_phi_scale(&phi, lam, 3).unwrap();
        let tol = Tolerance::new(1e-8 * s, 1e-8);
        let r = r_phi_direct(&phi, lam, 3, tol).unwrap().value;
        let k = r_phi_kernel(&phi, lam, 3, tol).unwrap().value;
        assert!((r - k).norm() <= 1e-7 * r.norm(), "{r} vs {k}");
    }

    #[test]
    fn unbounded_support_is_rejected() {
        let phi = FnPhi::new(|_a: f64, _b: f64| 1.0, SupportBounds::from_box((f64::NEG_INFINITY, 0.0), (0.0, 1.0)));
        assert!(matches!(r_phi_direct(&phi, c(0.0), 2, TOL), Err(Error::RegionResolution(_))));
    }
}
