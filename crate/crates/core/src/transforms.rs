//! Intertwining transforms `I_k(φ) = ∫φ(t)e^{-tζ_k}dt` with
//! `ζ_k = 2πi(λ̃ + kλ̃_γ) + (d-1)/2`, and the double-transform weights
//! `∬φ(s,t)e^{∓2πi(s-t)(λ̃+kλ̃_γ) - (s+t)(d-1)/2} ds dt` of the coefficient
//! side.
//!
//! The weight written with `φ(t, s)` and exponent `+2πi(s-t)ω` is, after
//! renaming the integration variables, the same integral as the one with
//! `φ(s, t)` and `-2πi(s-t)ω`; [`w_hat`] evaluates the former literally and
//! the tests confirm the identity. The genuinely different convention is
//! [`Sign::Opposite`].

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::quadcore::{integrate_2d, try_integrate_1d, QuadResult, Quadrature1DSpec, Tolerance};
use crate::testfn::{Phi2D, PhiT, Profile1D};
use crate::{Complex64, Error, Result};

/// `(d, λ̃, λ̃_γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub d: u32,
    pub lambda_tilde: Complex64,
    pub lambda_gamma_tilde: f64,
}

impl ModelParams {
    pub fn new(d: u32, lambda_tilde: Complex64, lambda_gamma_tilde: f64) -> Result<Self> {
        let p = Self {
            d,
            lambda_tilde,
            lambda_gamma_tilde,
        };
        p.validate()?;
        Ok(p)
    }

    /// `λ̃` must be real (principal series) or purely imaginary with
    /// `|2π Im λ̃| < (d-1)/2` (complementary series).
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::BadParam(format!("d = {} < 2", self.d)));
        }
        check_spectral_parameter(self.lambda_tilde, self.d)?;
        if !(self.lambda_gamma_tilde > 0.0 && self.lambda_gamma_tilde.is_finite()) {
            return Err(Error::BadParam(format!(
                "lambda_gamma_tilde = {} must be positive and finite",
                self.lambda_gamma_tilde
            )));
        }
        Ok(())
    }

    /// `ρ = (d-1)/2`.
    pub fn rho(&self) -> f64 {
        0.5 * (self.d as f64 - 1.0)
    }

    /// `ω_k = λ̃ + kλ̃_γ`.
    pub fn omega(&self, k: i64) -> Complex64 {
        self.lambda_tilde + k as f64 * self.lambda_gamma_tilde
    }

    /// `ζ_k = 2πiω_k + ρ`.
    pub fn zeta(&self, k: i64) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI) * self.omega(k) + self.rho()
    }
}

/// Shared check for `λ̃` and `λ̃_j`.
pub fn check_spectral_parameter(l: Complex64, d: u32) -> Result<()> {
    if !(l.re.is_finite() && l.im.is_finite()) {
        return Err(Error::Validation(format!("non-finite spectral parameter {l}")));
    }
    if l.im != 0.0 {
        let rho = 0.5 * (d as f64 - 1.0);
        if l.re != 0.0 || (2.0 * PI * l.im).abs() >= rho {
            return Err(Error::Validation(format!(
                "spectral parameter {l} is neither real nor in the complementary range |2π Im| < {rho}"
            )));
        }
    }
    Ok(())
}

/// Coefficients `a_k` for `k_min ≤ k ≤ k_max`, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    k_min: i64,
    values: Vec<Complex64>,
}

impl CoefficientSequence {
    pub fn new(k_min: i64, values: Vec<Complex64>) -> Result<Self> {
        let k_max = k_min + values.len() as i64 - 1;
        if values.is_empty() || k_min > 0 || k_max < 0 {
            return Err(Error::Validation(format!(
                "index range [{k_min}, {k_max}] must contain 0"
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Validation(format!("a_{} is not finite", k_min + i as i64)));
        }
        Ok(Self { k_min, values })
    }

    /// From sparse `(k, a_k)` pairs; gaps are zero, the range is widened to
    /// contain 0, and repeated indices are rejected.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let lo = pairs.iter().map(|p| p.0).min().unwrap_or(0).min(0);
        let hi = pairs.iter().map(|p| p.0).max().unwrap_or(0).max(0);
        let mut values = alloc::vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        let mut seen = alloc::vec![false; values.len()];
        for (k, v) in pairs {
            let i = (k - lo) as usize;
            if seen[i] {
                return Err(Error::Validation(format!("index k = {k} appears twice")));
            }
            seen[i] = true;
            values[i] = v;
        }
        Self::new(lo, values)
    }

    pub fn zeros(k_min: i64, k_max: i64) -> Result<Self> {
        if k_max < k_min {
            return Err(Error::Validation("k_max < k_min".into()));
        }
        Self::new(k_min, alloc::vec![Complex64::new(0.0, 0.0); (k_max - k_min + 1) as usize])
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }
    pub fn k_max(&self) -> i64 {
        self.k_min + self.values.len() as i64 - 1
    }
    pub fn get(&self, k: i64) -> Complex64 {
        if k < self.k_min || k > self.k_max() {
            return Complex64::new(0.0, 0.0);
        }
        self.values[(k - self.k_min) as usize]
    }
    /// `(k, a_k)` in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.k_min + i as i64, v))
    }
    /// Indices in summation order: ascending `|k|`, negative first on ties.
    pub fn sum_order(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = (self.k_min..=self.k_max()).collect();
        ks.sort_by_key(|&k| (k.unsigned_abs(), k > 0));
        ks
    }
    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            k_min: self.k_min,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}

/// Panels needed to give each oscillation of `e^{2πiωx}` over `[lo, hi]`
/// its own starting panel.
fn oscillation_panels(omega_re: f64, lo: f64, hi: f64) -> usize {
    (omega_re.abs() * (hi - lo)).ceil() as usize + 1
}

/// `I_k(φ) = ∫φ(t)e^{-tζ_k}dt` over the support of `φ`.
pub fn intertwine_ik(phi: &dyn Profile1D, p: &ModelParams, k: i64, tol: Tolerance) -> Result<Complex64> {
    p.validate()?;
    let zeta = p.zeta(k);
    let (lo, hi) = phi.support();
    let spec = Quadrature1DSpec::with_tol(lo, hi, tol).initial_panels(oscillation_panels(p.omega(k).re, lo, hi));
    Ok(try_integrate_1d(|t| Ok((-zeta * t).exp() * phi.value(t)), &spec)?.value)
}

/// `∫φ'(t)e^{-tζ_k}dt`, which equals `ζ_k·I_k(φ)` by parts.
pub fn intertwine_ik_derivative(phi: &dyn Profile1D, p: &ModelParams, k: i64, tol: Tolerance) -> Result<Complex64> {
    p.validate()?;
    let zeta = p.zeta(k);
    let (lo, hi) = phi.support();
    let spec = Quadrature1DSpec::with_tol(lo, hi, tol).initial_panels(oscillation_panels(p.omega(k).re, lo, hi));
    Ok(try_integrate_1d(|t| Ok((-zeta * t).exp() * phi.derivative(t)), &spec)?.value)
}

/// Sign of the oscillatory exponent in the coefficient-side weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sign {
    /// `e^{-2πi(s-t)ω}`, as in the summation formulae.
    #[default]
    Standard,
    /// `e^{+2πi(s-t)ω}`.
    Opposite,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Standard => -1.0,
            Sign::Opposite => 1.0,
        }
    }
}

/// `∬φ(s,t)e^{σ2πi(s-t)ω_k - (s+t)ρ} ds dt` by 2D quadrature in
/// `u = s - t`, `v = (s + t)/2` (unit Jacobian).
pub fn weight_quadrature(phi: &dyn Phi2D, p: &ModelParams, k: i64, sign: Sign, tol: Tolerance) -> Result<QuadResult> {
    p.validate()?;
    let b = phi.bounds();
    if !b.is_finite() {
        return Err(Error::RegionResolution("unbounded support".into()));
    }
    let omega = p.omega(k);
    let rho = p.rho();
    let osc = Complex64::new(0.0, sign.factor() * 2.0 * PI) * omega;
    let outer = Quadrature1DSpec::with_tol(b.u.0, b.u.1, tol).initial_panels(oscillation_panels(omega.re, b.u.0, b.u.1));
    let inner_tol = tol.tighter(10.0);
    integrate_2d(
        |u, v| {
            let f = phi.eval(v + 0.5 * u, v - 0.5 * u);
            if f == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok((osc * u - 2.0 * rho * v).exp() * f)
        },
        &outer,
        |u| {
            let (lo, hi) = b.v_given_u(u);
            Quadrature1DSpec::with_tol(lo, hi.max(lo), inner_tol)
        },
    )
}

/// Coefficient-side weight with the standard sign, by quadrature.
pub fn lhs_weight_quadrature(phi: &dyn Phi2D, p: &ModelParams, k: i64, tol: Tolerance) -> Result<QuadResult> {
    weight_quadrature(phi, p, k, Sign::Standard, tol)
}

/// Closed form for `φ_T`: `ψ̂((d-1)/(2πi))·ψ̂(∓ω_k/T)`.
pub fn weight_closed(phi: &PhiT, p: &ModelParams, k: i64, sign: Sign) -> Complex64 {
    let psi = phi.psi();
    let first = psi.psi_hat(Complex64::new(0.0, -(p.d as f64 - 1.0) / (2.0 * PI)));
    let xi = p.omega(k) * (-sign.factor() / phi.t_scale());
    first * psi.psi_hat(xi)
}

/// Coefficient-side weight for `φ_T` with the standard sign, closed form.
pub fn lhs_weight(phi: &PhiT, p: &ModelParams, k: i64) -> Complex64 {
    weight_closed(phi, p, k, Sign::Standard)
}

/// The double transform in swapped form, `∬φ(t,s)e^{(s-t)2πiω_k - (s+t)ρ} dt ds`,
/// evaluated literally by 2D quadrature over `(t, s)`.
pub fn w_hat(phi: &dyn Phi2D, p: &ModelParams, k: i64, tol: Tolerance) -> Result<QuadResult> {
    p.validate()?;
    let b = phi.bounds();
    if !b.is_finite() {
        return Err(Error::RegionResolution("unbounded support".into()));
    }
    let omega = p.omega(k);
    let rho = p.rho();
    let i2pw = Complex64::new(0.0, 2.0 * PI) * omega;
    // First argument of φ is t, second is s.
    let outer = Quadrature1DSpec::with_tol(b.a.0, b.a.1, tol).initial_panels(oscillation_panels(omega.re, b.a.0, b.a.1));
    let inner_tol = tol.tighter(10.0);
    integrate_2d(
        |t, s| {
            let f = phi.eval(t, s);
            if f == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok((i2pw * (s - t) - rho * (s + t)).exp() * f)
        },
        &outer,
        |t| {
            // s = t - u with u in the u-bounds, intersected with the b-box.
            let lo = b.b.0.max(t - b.u.1);
            let hi = b.b.1.min(t - b.u.0);
            Quadrature1DSpec::with_tol(lo, hi.max(lo), inner_tol)
                .initial_panels(oscillation_panels(omega.re, lo, hi.max(lo)))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{base_bump, build_psi, SampledFunction, SeparablePhi, Swapped};
    use alloc::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(1, c(0.0, 0.0), 1.0).is_err());
        assert!(ModelParams::new(2, c(0.0, 0.0), 0.0).is_err());
        assert!(ModelParams::new(2, c(0.0, 0.07), 1.0).is_ok());
        assert!(ModelParams::new(2, c(0.0, 0.08), 1.0).is_err());
        assert!(ModelParams::new(2, c(0.1, 0.01), 1.0).is_err());
        let p = ModelParams::new(3, c(0.5, 0.0), 0.25).unwrap();
        assert_eq!(p.zeta(2), c(1.0, 2.0 * PI));
    }

    #[test]
    fn coefficient_sequence_order_and_gaps() {
        let s = CoefficientSequence::from_pairs([(2, c(1.0, 0.0)), (-1, c(0.0, 1.0))]).unwrap();
        assert_eq!((s.k_min(), s.k_max()), (-1, 2));
        assert_eq!(s.get(1), c(0.0, 0.0));
        assert_eq!(s.get(7), c(0.0, 0.0));
        assert_eq!(s.sum_order(), alloc::vec![0, -1, 1, 2]);
        assert!(CoefficientSequence::from_pairs([(1, c(1.0, 0.0)), (1, c(1.0, 0.0))]).is_err());
        assert!(CoefficientSequence::new(1, alloc::vec![c(1.0, 0.0)]).is_err());
        assert!(CoefficientSequence::new(0, alloc::vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn ik_zero_linear_and_second_rule() {
        let p = ModelParams::new(2, c(0.0, 0.0), 1.0).unwrap();
        let tol = Tolerance::new(1e-15, 1e-13);
        let zero = SampledFunction::zero(-1.0, 1.0, 65).unwrap();
        assert_eq!(intertwine_ik(&zero, &p, 3, tol).unwrap(), c(0.0, 0.0));

        let f1 = base_bump(0.5).unwrap().shifted(0.2);
        let f2 = base_bump(0.3).unwrap().shifted(-0.1);
        let combo = SampledFunction::from_fn(-1.0, 1.0, 4001, u32::MAX, |x| 2.5 * f1.eval(x) + f2.eval(x)).unwrap();
        for k in [0, 3, -5] {
            let lhs = intertwine_ik(&combo, &p, k, tol).unwrap();
            let rhs = intertwine_ik(&f1, &p, k, tol).unwrap() * 2.5 + intertwine_ik(&f2, &p, k, tol).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()), "k={k}");
        }

        // Trapezoid on the samples is an unrelated rule for the same integral.
        let psi = build_psi(0.25, 1.0).unwrap();
        let gk = intertwine_ik(&psi, &p, 3, tol).unwrap();
        let zeta = p.zeta(3);
        let tr = psi.samples().weighted_integral(|t| (-zeta * t).exp());
        assert!((gk - tr).norm() < 1e-9 * tr.norm(), "{gk} vs {tr}");
    }

    #[test]
    fn integration_by_parts() {
        let p = ModelParams::new(3, c(0.3, 0.0), 1.0).unwrap();
        let psi = build_psi(0.25, 1.0).unwrap();
        let tol = Tolerance::new(1e-15, 1e-13);
        let scale = psi.samples().integral();
        for k in [0, 1, 5, 17, 64] {
            let lhs = intertwine_ik_derivative(&psi, &p, k, tol).unwrap();
            let rhs = p.zeta(k) * intertwine_ik(&psi, &p, k, tol).unwrap();
            assert!((lhs - rhs).norm() < 1e-8 * (rhs.norm() + scale), "k={k}");
        }
    }

    #[test]
    fn weight_closed_form_and_conventions() {
        let psi = Arc::new(build_psi(0.25, 1.0).unwrap());
        let tol = Tolerance::new(1e-14, 1e-12);
        for (t, d, lam) in [(4.0, 2, 0.3), (32.0, 3, -0.7), (1.0, 4, 0.0)] {
            let phi = PhiT::new(t, psi.clone()).unwrap();
            let p = ModelParams::new(d, c(lam, 0.0), 0.25).unwrap();
            for k in [-9, 0, 4] {
                let q = lhs_weight_quadrature(&phi, &p, k, tol).unwrap().value;
                let closed = lhs_weight(&phi, &p, k);
                assert!((q - closed).norm() < 1e-8 * closed.norm(), "T={t} d={d} k={k}: {q} vs {closed}");
                let lit = w_hat(&phi, &p, k, tol).unwrap().value;
                assert!((lit - closed).norm() < 1e-8 * closed.norm());
                let opp = weight_quadrature(&phi, &p, k, Sign::Opposite, tol).unwrap().value;
                let opp_closed = weight_closed(&phi, &p, k, Sign::Opposite);
                assert!((opp - opp_closed).norm() < 1e-8 * opp_closed.norm());
                // Real φ and real ω: the opposite sign is the conjugate.
                assert!((opp - q.conj()).norm() < 1e-8 * q.norm());
            }
        }
    }

    #[test]
    fn swapped_form_equals_standard_sign_for_asymmetric_phi() {
        let fa = base_bump(0.4).unwrap().shifted(-0.3);
        let fb = base_bump(0.25).unwrap().shifted(0.4);
        let phi = SeparablePhi { fa, fb };
        let p = ModelParams::new(2, c(0.6, 0.0), 1.0).unwrap();
        let tol = Tolerance::new(1e-14, 1e-12);
        for k in [-2, 0, 3] {
            let a = w_hat(&phi, &p, k, tol).unwrap().value;
            let b = lhs_weight_quadrature(&phi, &p, k, tol).unwrap().value;
            assert!((a - b).norm() < 1e-10 * b.norm().max(1e-3), "k={k}");
            // Swapping the arguments is what the sign flip amounts to.
            let sw = weight_quadrature(&Swapped(phi.clone()), &p, k, Sign::Opposite, tol).unwrap().value;
            assert!((sw - b).norm() < 1e-10 * b.norm().max(1e-3));
        }
    }

    #[test]
    fn t_scaling_depends_on_ratio_only() {
        let psi = Arc::new(build_psi(0.25, 1.0).unwrap());
        let p = ModelParams::new(2, c(0.0, 0.0), 0.5).unwrap();
        let tol = Tolerance::new(1e-14, 1e-12);
        let a = lhs_weight_quadrature(&PhiT::new(2.0, psi.clone()).unwrap(), &p, 3, tol).unwrap().value;
        let b = lhs_weight_quadrature(&PhiT::new(4.0, psi).unwrap(), &p, 6, tol).unwrap().value;
        assert!((a - b).norm() < 1e-8 * a.norm());
    }
}
