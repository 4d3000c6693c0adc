//! Both sides of the summation formulae
//!
//! `Σ_k |a_k|² w_k = m_d Σ_j c_j a0_j β(λ̃_j) R_φ(λ̃_j)`,
//!
//! with `w_k` the coefficient-side weight of `φ_T`, `m_2 = 2`, `m_d = 1` for
//! `d ≥ 3`, `R_φ = c₁ + c₂ + c₃` for `d = 2` and
//! `R_φ = (d-2)vol(B_{d-2})∬φK` for `d ≥ 3`.
//!
//! Nothing here asserts that the two sides agree: that needs genuinely
//! automorphic data. Reports carry the residual, truncation bounds and
//! homogeneity diagnostics.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::kernels::{beta_fn, r_phi_closed_d2, r_phi_kernel};
use crate::quadcore::{compensated_sum, try_integrate_1d, Quadrature1DSpec, Tolerance};
use crate::testfn::{BumpPsi, PhiT, Profile1D};
use crate::transforms::{lhs_weight, CoefficientSequence, ModelParams};
use crate::{Complex64, Error, Result};

pub use crate::spectra::{SpectralDataset, SpectralEntry};

/// Guard against `0/0` in relative residuals.
pub const RESIDUAL_EPS: f64 = 1e-300;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhsTerm {
    pub k: i64,
    pub a: Complex64,
    pub weight: Complex64,
    pub term: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LhsSum {
    pub value: Complex64,
    /// In summation order: ascending `|k|`, negative first.
    pub terms: Vec<LhsTerm>,
    pub truncation_bound: f64,
}

/// `Σ_k |a_k|²·w_k` with the closed-form weights.
pub fn lhs_sum(coeffs: &CoefficientSequence, phi: &PhiT, p: &ModelParams) -> Result<LhsSum> {
    p.validate()?;
    let mut terms = Vec::with_capacity(coeffs.sum_order().len());
    for k in coeffs.sum_order() {
        let a = coeffs.get(k);
        let weight = lhs_weight(phi, p, k);
        terms.push(LhsTerm {
            k,
            a,
            weight,
            term: weight * a.norm_sqr(),
        });
    }
    let value = compensated_sum(terms.iter().map(|t| t.term))?;
    Ok(LhsSum {
        value,
        terms,
        truncation_bound: lhs_truncation_bound(coeffs, phi, p),
    })
}

/// Bound on the terms beyond the supplied `k`-range, assuming `|a_k|²`
/// keeps at most quadratic growth from its size over the outer half of
/// the range. The weight tail is summed out to `16K + 64` and doubled.
pub fn lhs_truncation_bound(coeffs: &CoefficientSequence, phi: &PhiT, p: &ModelParams) -> f64 {
    let mut bound = 0.0;
    for (edge, sign) in [(coeffs.k_max(), 1i64), (coeffs.k_min(), -1i64)] {
        let reach = edge.unsigned_abs();
        let m = coeffs
            .iter()
            .filter(|&(k, _)| k * sign >= 0 && 2 * k.unsigned_abs() >= reach)
            .map(|(_, a)| a.norm_sqr())
            .fold(0.0, f64::max);
        if m == 0.0 {
            continue;
        }
        let base = 1.0 + reach as f64;
        for j in reach + 1..=16 * reach + 64 {
            let k = sign * j as i64;
            let g = (1.0 + j as f64) / base;
            bound += m * g * g * lhs_weight(phi, p, k).norm();
        }
    }
    2.0 * bound
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhsTerm {
    pub lambda_j_tilde: Complex64,
    pub c: Complex64,
    pub a0: Complex64,
    pub beta: Complex64,
    /// `R_φ(λ̃_j)`, prefactor included.
    pub inner: Complex64,
    pub term: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhsSum {
    pub value: Complex64,
    /// In summation order: ascending `|λ̃_j|`.
    pub terms: Vec<RhsTerm>,
    pub truncation_bound: f64,
}

/// `2` for `d = 2`, `1` otherwise.
pub fn rhs_multiplier(d: u32) -> f64 {
    if d == 2 {
        2.0
    } else {
        1.0
    }
}

/// `R_φ(λ̃)` on the spectral side: `c₁ + c₂ + c₃` for `d = 2`, the kernel
/// route for `d ≥ 3`.
pub fn rhs_inner(phi: &PhiT, lam: Complex64, d: u32, tol: Tolerance) -> Result<Complex64> {
    match d {
        2 => Ok(r_phi_closed_d2(phi, lam, tol)?.total()),
        d if d >= 3 => Ok(r_phi_kernel(phi, lam, d, tol)?.value),
        _ => Err(Error::BadParam(alloc::format!("d = {d} < 2"))),
    }
}

/// One spectral term, with its factors kept for reports and re-assembly.
pub fn rhs_term(entry: &SpectralEntry, phi: &PhiT, d: u32, tol: Tolerance) -> Result<RhsTerm> {
    let beta = beta_fn(entry.lambda_j_tilde, d)?;
    let inner = rhs_inner(phi, entry.lambda_j_tilde, d, tol)?;
    Ok(assemble_term(entry, beta, inner, d))
}

fn assemble_term(entry: &SpectralEntry, beta: Complex64, inner: Complex64, d: u32) -> RhsTerm {
    RhsTerm {
        lambda_j_tilde: entry.lambda_j_tilde,
        c: entry.c,
        a0: entry.a0,
        beta,
        inner,
        term: entry.c * entry.a0 * beta * inner * rhs_multiplier(d),
    }
}

/// Compensated sum of precomputed terms in their given order; lets callers
/// evaluate terms in parallel and still reduce deterministically.
pub fn assemble_rhs(terms: &[RhsTerm]) -> Result<Complex64> {
    compensated_sum(terms.iter().map(|t| t.term))
}

fn rhs_sum(data: &SpectralDataset, phi: &PhiT, tol: Tolerance) -> Result<RhsSum> {
    let d = data.d();
    let terms = data.entries().iter().map(|e| rhs_term(e, phi, d, tol)).collect::<Result<Vec<_>>>()?;
    Ok(RhsSum {
        value: assemble_rhs(&terms)?,
        terms,
        truncation_bound: rhs_truncation_bound(data, phi, tol)?,
    })
}

/// Spectral side for `d = 2`.
pub fn rhs_sum_d2(data: &SpectralDataset, phi: &PhiT, tol: Tolerance) -> Result<RhsSum> {
    if data.d() != 2 {
        return Err(Error::DimensionMismatch { left: data.d(), right: 2 });
    }
    rhs_sum(data, phi, tol)
}

/// Spectral side for `d ≥ 3`.
pub fn rhs_sum_general(data: &SpectralDataset, phi: &PhiT, tol: Tolerance) -> Result<RhsSum> {
    if data.d() < 3 {
        return Err(Error::BadParam(alloc::format!("rhs_sum_general needs d >= 3, got {}", data.d())));
    }
    rhs_sum(data, phi, tol)
}

/// Extrapolated size of the spectral terms beyond `Λ = max|λ̃_j|`.
///
/// Assumes Weyl-law density `N(x) = n(x/Λ)^d`, `|c_j a0_j|` at most
/// quadratically growing from its largest value over `|λ̃_j| ≥ Λ/2`, and
/// uses the decreasing envelope of `|β·R_φ|` sampled at `Λ·2^{i/4}`,
/// `i = 1..12`. The result is doubled.
pub fn rhs_truncation_bound(data: &SpectralDataset, phi: &PhiT, tol: Tolerance) -> Result<f64> {
    if data.is_empty() {
        return Ok(0.0);
    }
    let d = data.d();
    let lam = data.lambda_max().max(1.0);
    let m = data
        .entries()
        .iter()
        .filter(|e| 2.0 * e.lambda_j_tilde.norm() >= data.lambda_max())
        .map(|e| (e.c * e.a0).norm())
        .fold(0.0, f64::max);
    if m == 0.0 {
        return Ok(0.0);
    }
    let n = data.len() as f64;
    let xs: Vec<f64> = (0..=12).map(|i| lam * libm::exp2(i as f64 / 4.0)).collect();
    let mut g = Vec::with_capacity(12);
    for &x in &xs[1..] {
        let l = Complex64::new(x, 0.0);
        g.push((beta_fn(l, d)? * rhs_inner(phi, l, d, tol)?).norm() * rhs_multiplier(d));
    }
    for i in (0..g.len().saturating_sub(1)).rev() {
        g[i] = g[i].max(g[i + 1]);
    }
    let mut bound = 0.0;
    for i in 1..xs.len() {
        let dn = n * (libm::pow(xs[i] / lam, d as f64) - libm::pow(xs[i - 1] / lam, d as f64));
        let growth = (xs[i] / lam) * (xs[i] / lam);
        bound += dn * m * growth * g[i - 1];
    }
    Ok(2.0 * bound)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationBounds {
    pub lhs: f64,
    pub rhs: f64,
}

/// Recomputations with scaled data: `a_k ↦ s·a_k` must scale the LHS by
/// `|s|²`, `c_j ↦ s·c_j` the RHS by `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homogeneity {
    pub scale: Complex64,
    pub lhs_rel_err: f64,
    pub rhs_rel_err: f64,
}

/// The test scale used by [`sumcheck`].
pub const HOMOGENEITY_SCALE: Complex64 = Complex64::new(1.7, -0.6);

#[derive(Debug, Clone, PartialEq)]
pub struct SummationReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual_abs: f64,
    pub residual_rel: f64,
    pub lhs_terms: Vec<LhsTerm>,
    pub rhs_terms: Vec<RhsTerm>,
    pub truncation_bounds: TruncationBounds,
    pub homogeneity: Homogeneity,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(RESIDUAL_EPS)
}

/// Builds the report from already evaluated sides.
pub fn build_report(coeffs: &CoefficientSequence, phi: &PhiT, p: &ModelParams, lhs: LhsSum, rhs: RhsSum) -> Result<SummationReport> {
    let s = HOMOGENEITY_SCALE;
    let lhs_scaled = lhs_sum(&coeffs.scaled(s), phi, p)?.value;
    let rescaled: Vec<RhsTerm> = rhs
        .terms
        .iter()
        .map(|t| {
            let e = SpectralEntry::new(t.lambda_j_tilde, t.c * s, t.a0);
            assemble_term(&e, t.beta, t.inner, p.d)
        })
        .collect();
    let rhs_scaled = assemble_rhs(&rescaled)?;
    let residual_abs = (lhs.value - rhs.value).norm();
    Ok(SummationReport {
        lhs: lhs.value,
        rhs: rhs.value,
        residual_abs,
        residual_rel: residual_abs / lhs.value.norm().max(rhs.value.norm()).max(RESIDUAL_EPS),
        truncation_bounds: TruncationBounds {
            lhs: lhs.truncation_bound,
            rhs: rhs.truncation_bound,
        },
        homogeneity: Homogeneity {
            scale: s,
            lhs_rel_err: rel(lhs_scaled, lhs.value * s.norm_sqr()),
            rhs_rel_err: rel(rhs_scaled, rhs.value * s),
        },
        lhs_terms: lhs.terms,
        rhs_terms: rhs.terms,
    })
}

/// Both sides, residual, truncation bounds and homogeneity diagnostics.
pub fn sumcheck(
    coeffs: &CoefficientSequence,
    data: &SpectralDataset,
    phi: &PhiT,
    p: &ModelParams,
    tol: Tolerance,
) -> Result<SummationReport> {
    if data.d() != p.d {
        return Err(Error::DimensionMismatch { left: p.d, right: data.d() });
    }
    let lhs = lhs_sum(coeffs, phi, p)?;
    let rhs = rhs_sum(data, phi, tol)?;
    build_report(coeffs, phi, p, lhs, rhs)
}

/// Factorised form of the `d = 2` spectral integral for `φ_T`:
/// `R_φ(λ̃) = ψ̂(ξ)·(cosh_part + sinh_part)` with
/// `cosh_part = ∫ψ(a)(2cosh(a/2T))^z da`, `sinh_part = ∫ψ(a)(2sinh(|a|/2T))^z da`,
/// `z = 2πiλ̃ - 1/2`.
///
/// Substituting `u = a - b`, `v = (a + b)/2` gives the weight
/// `e^{v(3/2 + 2πiλ̃)}`, i.e. `ξ = -λ̃ - 3/(4πi)`; the often quoted
/// factor `ξ = -λ̃ - 1/(4πi)` is returned alongside for comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFactor {
    /// `ψ̂(-λ̃ - 3/(4πi))·(cosh_part + sinh_part)`.
    pub value: Complex64,
    /// `ψ̂(-λ̃ - 1/(4πi))·(cosh_part + sinh_part)`.
    pub value_alt: Complex64,
    pub weight: Complex64,
    pub weight_alt: Complex64,
    pub cosh_part: Complex64,
    pub sinh_part: Complex64,
}

pub fn growth_factor(psi: &BumpPsi, lam: Complex64, t_scale: f64, tol: Tolerance) -> Result<GrowthFactor> {
    if !(t_scale > 0.0 && t_scale.is_finite()) {
        return Err(Error::BadParam(alloc::format!("T = {t_scale}")));
    }
    let z = Complex64::new(-0.5, 0.0) + Complex64::new(0.0, 2.0 * PI) * lam;
    let (lo, hi) = psi.support();
    let inv2t = 0.5 / t_scale;
    let cosh_spec = Quadrature1DSpec::with_tol(lo, hi, tol).initial_panels(4);
    let cosh_part = try_integrate_1d(
        |a| {
            let l = libm::log(2.0 * libm::cosh(a * inv2t));
            Ok((z * l).exp() * psi.value(a))
        },
        &cosh_spec,
    )?
    .value;
    // w = ln(2sinh(|a|/2T)) turns the edge at a = 0, where the phase
    // 2πλ̃·ln|a| winds infinitely often, into an exponentially damped tail
    // e^{(z+1)w} of constant frequency.
    let reach = hi.max(-lo);
    let rate = z.re + 1.0;
    if !(rate > 0.0) {
        return Err(Error::BadParam(alloc::format!("Re z = {} must exceed -1", z.re)));
    }
    let w_hi = libm::log(2.0 * libm::sinh(reach * inv2t));
    let peak = psi.samples().max_abs();
    let floor = tol.abs.max(1e-17 * psi.mass() * libm::sqrt(t_scale));
    let w_lo = (w_hi.min(0.0) + libm::log(floor * rate / (4.0 * t_scale * peak)) / rate).min(w_hi);
    let panels = ((z.im.abs() / (2.0 * PI) + 1.0) * (w_hi - w_lo)).ceil() as usize + 1;
    let sinh_spec = Quadrature1DSpec::with_tol(w_lo, w_hi, tol).initial_panels(panels);
    let sinh_part = try_integrate_1d(
        |w| {
            let h = 0.5 * libm::exp(w);
            let a = 2.0 * t_scale * libm::asinh(h);
            let f = psi.value(a) + psi.value(-a);
            if f == 0.0 {
                return Ok(zero());
            }
            let jac = 2.0 * t_scale * h / libm::sqrt(1.0 + h * h);
            Ok((z * w).exp() * (f * jac))
        },
        &sinh_spec,
    )?
    .value;
    let i4pi = Complex64::new(0.0, 4.0 * PI);
    let weight = psi.psi_hat(-lam - 3.0 / i4pi);
    let weight_alt = psi.psi_hat(-lam - 1.0 / i4pi);
    let parts = cosh_part + sinh_part;
    Ok(GrowthFactor {
        value: weight * parts,
        value_alt: weight_alt * parts,
        weight,
        weight_alt,
        cosh_part,
        sinh_part,
    })
}

/// Which 1D factorisation reproduces the 2D integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorisationCheck {
    pub two_d: Complex64,
    pub substituted: Complex64,
    pub alt: Complex64,
    pub substituted_rel_err: f64,
    pub alt_rel_err: f64,
}

/// Compares [`growth_factor`] against `c₁ + c₂ + c₃` for `φ_T`.
pub fn factorisation_check(phi: &PhiT, lam: Complex64, tol: Tolerance) -> Result<FactorisationCheck> {
    let g = growth_factor(phi.psi(), lam, phi.t_scale(), tol)?;
    let two_d = r_phi_closed_d2(phi, lam, tol)?.total();
    Ok(FactorisationCheck {
        two_d,
        substituted: g.value,
        alt: g.value_alt,
        substituted_rel_err: rel(g.value, two_d),
        alt_rel_err: rel(g.value_alt, two_d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{beta_fn_quadrature, r_phi_direct, r_phi_scale};
    use crate::quadcore::integrate_2d;
    use crate::testfn::{build_psi, Phi2D};
    use alloc::sync::Arc;
    use alloc::vec;

    const TOL: Tolerance = Tolerance::new(1e-12, 1e-10);

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn psi() -> Arc<BumpPsi> {
        Arc::new(build_psi(0.25, 1.0).unwrap())
    }

    fn gauss_coeffs(n: i64) -> CoefficientSequence {
        CoefficientSequence::new(-n, (-n..=n).map(|k| c(libm::exp(-((k * k) as f64) / 4.0))).collect()).unwrap()
    }

    #[test]
    fn lhs_trivial_cases() {
        let phi = PhiT::new(4.0, psi()).unwrap();
        let p = ModelParams::new(2, c(0.3), 0.25).unwrap();
        let z = CoefficientSequence::zeros(-5, 5).unwrap();
        assert_eq!(lhs_sum(&z, &phi, &p).unwrap().value, zero());
        let one = CoefficientSequence::from_pairs([(0, c(1.0))]).unwrap();
        assert_eq!(lhs_sum(&one, &phi, &p).unwrap().value, lhs_weight(&phi, &p, 0));
    }

    #[test]
    fn lhs_matches_sum_inside_integral() {
        let phi = PhiT::new(4.0, psi()).unwrap();
        let p = ModelParams::new(3, c(0.3), 0.25).unwrap();
        let coeffs = gauss_coeffs(8);
        let got = lhs_sum(&coeffs, &phi, &p).unwrap().value;
        let b = phi.bounds();
        let rho = p.rho();
        let outer = Quadrature1DSpec::new(b.u.0, b.u.1).tolerance(1e-14, 1e-12).initial_panels(8);
        let brute = integrate_2d(
            |u, v| {
                let f = phi.eval(v + 0.5 * u, v - 0.5 * u);
                let mut s = zero();
                for (k, a) in coeffs.iter() {
                    s += (Complex64::new(0.0, -2.0 * PI * u) * p.omega(k)).exp() * a.norm_sqr();
                }
                Ok(s * f * libm::exp(-2.0 * rho * v))
            },
            &outer,
            |u| {
                let (lo, hi) = b.v_given_u(u);
                Quadrature1DSpec::new(lo, hi).tolerance(1e-15, 1e-13)
            },
        )
        .unwrap()
        .value;
        assert!((got - brute).norm() <= 1e-8 * got.norm(), "{got} vs {brute}");
    }

    #[test]
    fn lhs_truncation_bound_dominates_doubling() {
        let phi = PhiT::new(4.0, psi()).unwrap();
        let p = ModelParams::new(2, c(0.3), 0.25).unwrap();
        // Moderate growth |a_k|² = 1 + |k|.
        let mk = |n: i64| CoefficientSequence::new(-n, (-n..=n).map(|k| c(libm::sqrt(1.0 + k.abs() as f64))).collect()).unwrap();
        let small = lhs_sum(&mk(6), &phi, &p).unwrap();
        let big = lhs_sum(&mk(12), &phi, &p).unwrap();
        let change = (big.value - small.value).norm();
        assert!(change > 0.0 && change <= small.truncation_bound, "{change} vs {}", small.truncation_bound);
    }

    #[test]
    fn rhs_d2_single_entry_factors() {
        let phi = PhiT::new(2.0, psi()).unwrap();
        let data = SpectralDataset::new(2, vec![SpectralEntry::new(c(0.0), c(1.0), c(1.0))], "").unwrap();
        let r = rhs_sum_d2(&data, &phi, TOL).unwrap();
        let t = r.terms[0];
        assert!((t.beta - beta_fn_quadrature(c(0.0), 2, TOL).unwrap()).norm() < 1e-10 * t.beta.norm());
        assert!((t.beta.re - 3.708_149_354_602_744).abs() < 1e-10);
        let inner = r_phi_direct(&phi, c(0.0), 2, TOL).unwrap().value;
        assert!((t.inner - inner).norm() < 1e-8 * inner.norm());
        assert!((r.value - t.beta * inner * 2.0).norm() < 1e-8 * r.value.norm());
        assert_eq!(rhs_sum_d2(&SpectralDataset::empty(2).unwrap(), &phi, TOL).unwrap().value, zero());
        assert!(matches!(rhs_sum_d2(&SpectralDataset::empty(3).unwrap(), &phi, TOL), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rhs_general_single_entry_against_direct() {
        let phi = PhiT::new(2.0, psi()).unwrap();
        let data = SpectralDataset::new(3, vec![SpectralEntry::new(c(0.0), c(0.5), Complex64::new(1.0, 1.0))], "").unwrap();
        let s = r_phi_scale(&phi, c(0.0), 3).unwrap();
        let tol = Tolerance::new(1e-10 * s, 1e-10);
        let r = rhs_sum_general(&data, &phi, tol).unwrap();
        let direct = r_phi_direct(&phi, c(0.0), 3, tol).unwrap().value;
        let expect = Complex64::new(0.5, 0.5) * beta_fn(c(0.0), 3).unwrap() * direct;
        assert!((r.value - expect).norm() <= 1e-8 * expect.norm(), "{} vs {expect}", r.value);
    }

    #[test]
    fn sumcheck_zero_data_and_mismatch() {
        let phi = PhiT::new(4.0, psi()).unwrap();
        let p = ModelParams::new(2, c(0.3), 0.25).unwrap();
        let z = CoefficientSequence::zeros(-3, 3).unwrap();
        let rep = sumcheck(&z, &SpectralDataset::empty(2).unwrap(), &phi, &p, TOL).unwrap();
        assert_eq!((rep.residual_abs, rep.residual_rel), (0.0, 0.0));
        assert!(matches!(
            sumcheck(&z, &SpectralDataset::empty(3).unwrap(), &phi, &p, TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sumcheck_homogeneity() {
        let phi = PhiT::new(4.0, psi()).unwrap();
        let p = ModelParams::new(2, c(0.3), 0.25).unwrap();
        let data = SpectralDataset::new(
            2,
            vec![
                SpectralEntry::new(c(0.8), Complex64::new(0.3, -0.2), c(1.0)),
                SpectralEntry::new(c(2.5), c(-1.1), Complex64::new(0.0, 0.4)),
                SpectralEntry::new(Complex64::new(0.0, 0.02), c(0.7), c(0.9)),
            ],
            "synthetic",
        )
        .unwrap();
        let rep = sumcheck(&gauss_coeffs(10), &data, &phi, &p, TOL).unwrap();
        assert!(rep.homogeneity.lhs_rel_err < 1e-12 && rep.homogeneity.rhs_rel_err < 1e-12, "{:?}", rep.homogeneity);
        assert!(rep.residual_abs > 0.0);
        assert_eq!(rep.rhs_terms.len(), 3);
        assert!(rep.truncation_bounds.rhs >= 0.0);
    }

    #[test]
    fn growth_factor_limits_and_factorisation() {
        let ps = psi();
        // T → ∞: the cosh factor tends to 2^z ∫ψ.
        let lam = c(0.4);
        let g = growth_factor(&ps, lam, 1e6, TOL).unwrap();
        let z = Complex64::new(-0.5, 2.0 * PI * 0.4);
        let lim = (z * core::f64::consts::LN_2).exp() * ps.mass();
        assert!((g.cosh_part - lim).norm() < 1e-9 * lim.norm());
        // The substituted weight reproduces the 2D integral; the alternative one does not.
        let phi = PhiT::new(4.0, ps.clone()).unwrap();
        let chk = factorisation_check(&phi, lam, TOL).unwrap();
        assert!(chk.substituted_rel_err < 1e-8, "{chk:?}");
        assert!(chk.alt_rel_err > 1e-2, "{chk:?}");
        // sinh part grows like T^{1/2}.
        let a = growth_factor(&ps, c(0.0), 256.0, TOL).unwrap().sinh_part.norm();
        let b = growth_factor(&ps, c(0.0), 1024.0, TOL).unwrap().sinh_part.norm();
        assert!((libm::log(b / a) / libm::log(4.0) - 0.5).abs() < 0.01);
    }
}
