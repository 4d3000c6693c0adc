use alloc::format;

use super::sampled::{base_bump_with, bump_derivative, convolve, self_convolve, SampledFunction, DEFAULT_BUMP_POINTS, SMOOTH};
use super::Profile1D;
use crate::{Complex64, Error, Result};
use core::f64::consts::PI;

/// Default half-width of the seed bump; gives `supp ψ = [-1, 1]`.
pub const DEFAULT_HALF_WIDTH: f64 = 0.25;
/// Validation grid for `ψ̂ ≥ -1e-10`: `|ξ| ≤ 50` in steps of 0.05.
pub const GRID_XI_MAX: f64 = 50.0;
const GRID_XI_POINTS: usize = 2001;
pub const UNIT_SAMPLES: usize = 64;
pub const GRID_FLOOR: f64 = -1e-10;

/// Numbers backing the admissibility claims of a [`BumpPsi`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    /// Smallest sample of `ψ`.
    pub min_psi: f64,
    /// Smallest `ψ̂(ξ)` over 64 equispaced `ξ ∈ [-1, 1]`.
    pub min_psi_hat_unit: f64,
    /// Smallest real part of `ψ̂(ξ)` on the `|ξ| ≤ 50` validation grid.
    pub min_psi_hat_grid: f64,
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.min_psi >= 0.0 && self.min_psi_hat_unit >= 1.0 && self.min_psi_hat_grid >= GRID_FLOOR
    }
}

/// `ψ = c·(u∗u∗u∗u)` with `u` the standard bump: `ψ ≥ 0`, `ψ̂ = c·û⁴ ≥ 0`
/// and `ψ̂ ≥ 1` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpPsi {
    psi: SampledFunction,
    dpsi: SampledFunction,
    base: SampledFunction,
    scale: f64,
    half_width: f64,
    certificate: Certificate,
}

impl BumpPsi {
    pub fn samples(&self) -> &SampledFunction {
        &self.psi
    }
    /// Samples of `ψ'`, convolved from the exact derivative of the seed.
    pub fn derivative_samples(&self) -> &SampledFunction {
        &self.dpsi
    }
    pub fn certificate(&self) -> Certificate {
        self.certificate
    }
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    /// The constant `c` in `ψ = c·u⁽⁴⁾`.
    pub fn scale(&self) -> f64 {
        self.scale
    }
    /// `ψ` vanishes outside `[-r, r]`.
    pub fn support_radius(&self) -> f64 {
        4.0 * self.half_width
    }
    /// `∫ψ = ψ̂(0)`.
    pub fn mass(&self) -> f64 {
        self.psi_hat(Complex64::new(0.0, 0.0)).re
    }

    /// Entire extension `ψ̂(ξ) = ∫ψ(x)e^{-2πixξ}dx`, evaluated as `c·û(ξ)⁴`
    /// with `û` by the trapezoid rule on the seed grid. On the sample grid
    /// this is algebraically the same sum as [`BumpPsi::psi_hat_direct`].
    pub fn psi_hat(&self, xi: Complex64) -> Complex64 {
        self.base.fourier(xi).powi(4) * self.scale
    }

    /// `ψ̂` by direct quadrature over the samples of `ψ`.
    pub fn psi_hat_direct(&self, xi: Complex64) -> Complex64 {
        self.psi.fourier(xi)
    }
}

impl Profile1D for BumpPsi {
    fn value(&self, x: f64) -> f64 {
        self.psi.eval(x)
    }
    fn derivative(&self, x: f64) -> f64 {
        self.dpsi.eval(x)
    }
    fn support(&self) -> (f64, f64) {
        (self.psi.lo(), self.psi.hi())
    }
}

/// Free-function form of [`BumpPsi::psi_hat`].
pub fn psi_hat(psi: &BumpPsi, xi: Complex64) -> Complex64 {
    psi.psi_hat(xi)
}

pub fn build_psi(half_width: f64, scale_target: f64) -> Result<BumpPsi> {
    build_psi_with(half_width, scale_target, DEFAULT_BUMP_POINTS)
}

/// [`build_psi`] with an explicit seed grid size (odd).
pub fn build_psi_with(half_width: f64, scale_target: f64, n_base: usize) -> Result<BumpPsi> {
    if !(scale_target >= 1.0 && scale_target.is_finite()) {
        return Err(Error::BadParam(format!("scale_target {scale_target} must be >= 1")));
    }
    let u = base_bump_with(half_width, n_base)?;

    // û is real and even; positivity on [0, 1] is what scaling needs.
    let dense = 1025;
    let mut min_u4 = f64::INFINITY;
    for i in 0..dense {
        let xi = i as f64 / (dense - 1) as f64;
        let uh = u.fourier(Complex64::new(xi, 0.0)).re;
        if !(uh > 0.0) {
            return Err(Error::ConstructionFailure(format!(
                "seed transform vanishes or changes sign at ξ = {xi} for half_width {half_width}; shrink half_width"
            )));
        }
        min_u4 = min_u4.min(uh * uh * uh * uh);
    }
    if !(min_u4 > 1e-280) {
        return Err(Error::ConstructionFailure("seed transform too small on [-1, 1]".into()));
    }
    // A hair above the target so rounding cannot leave the minimum below it.
    let scale = scale_target / min_u4 * (1.0 + 1e-12);

    let u3 = self_convolve(&u, 2)?;
    let psi = convolve(&u3, &u)?.scaled(scale);
    let du = SampledFunction::from_fn(u.lo(), u.hi(), u.len(), SMOOTH, |x| bump_derivative(x, half_width))?;
    let dpsi = convolve(&u3, &du)?.scaled(scale);

    let mut out = BumpPsi {
        psi,
        dpsi,
        base: u,
        scale,
        half_width,
        certificate: Certificate {
            min_psi: 0.0,
            min_psi_hat_unit: 0.0,
            min_psi_hat_grid: 0.0,
        },
    };
    out.certificate = certify(&out.psi);
    if !out.certificate.passes() {
        return Err(Error::ConstructionFailure(format!("certificate failed: {:?}", out.certificate)));
    }
    Ok(out)
}

/// Checks the three admissibility claims directly on the samples of `ψ`,
/// independently of the factorised transform.
pub fn certify(psi: &SampledFunction) -> Certificate {
    let min_psi = psi.min_value();
    let mut min_unit = f64::INFINITY;
    for i in 0..UNIT_SAMPLES {
        let xi = -1.0 + 2.0 * i as f64 / (UNIT_SAMPLES - 1) as f64;
        min_unit = min_unit.min(psi.fourier(Complex64::new(xi, 0.0)).re);
    }
    let mut min_grid = f64::INFINITY;
    for i in 0..GRID_XI_POINTS {
        let xi = -GRID_XI_MAX + 2.0 * GRID_XI_MAX * i as f64 / (GRID_XI_POINTS - 1) as f64;
        min_grid = min_grid.min(real_transform_fast(psi, xi));
    }
    Certificate {
        min_psi,
        min_psi_hat_unit: min_unit,
        min_psi_hat_grid: min_grid,
    }
}

/// `Re ψ̂(ξ)` for real `ξ` using a rotating phasor, re-anchored every 256
/// nodes to keep the accumulated phase error near machine precision.
fn real_transform_fast(f: &SampledFunction, xi: f64) -> f64 {
    let h = f.step();
    let n = f.len();
    let vals = f.values();
    let rot = Complex64::from_polar(1.0, -2.0 * PI * h * xi);
    let mut acc = 0.0;
    let mut z = Complex64::new(1.0, 0.0);
    for (i, &v) in vals.iter().enumerate() {
        if i % 256 == 0 {
            let x = f.lo() + h * i as f64;
            z = Complex64::from_polar(1.0, -2.0 * PI * x * xi);
        }
        let w = if i == 0 || i + 1 == n { 0.5 * h } else { h };
        acc += v * w * z.re;
        z *= rot;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadcore::{integrate_1d, Quadrature1DSpec};

    #[test]
    fn default_psi_is_certified() {
        let psi = build_psi(DEFAULT_HALF_WIDTH, 1.0).unwrap();
        let c = psi.certificate();
        assert!(c.passes(), "{c:?}");
        assert!(c.min_psi_hat_unit >= 1.0 && c.min_psi_hat_unit < 1.0 + 1e-9);
        assert_eq!(psi.samples().lo(), -1.0);
        assert_eq!(psi.samples().hi(), 1.0);
        assert!(psi.mass() >= 1.0);
        for &x in &[0.1, 0.37, 0.8, 0.95] {
            assert!((psi.value(x) - psi.value(-x)).abs() < 1e-12 * psi.value(0.0));
        }
    }

    #[test]
    fn wide_seed_fails() {
        assert!(matches!(build_psi(1.0, 1.0), Err(Error::ConstructionFailure(_))));
        assert!(build_psi(0.25, 0.5).is_err());
    }

    #[test]
    fn factorised_and_direct_transforms_agree() {
        let psi = build_psi(DEFAULT_HALF_WIDTH, 1.0).unwrap();
        for &(re, im) in &[(0.0, 0.0), (0.7, 0.0), (3.3, 0.0), (12.0, 0.0), (0.5, -0.2), (0.0, -1.0 / (2.0 * PI))] {
            let z = Complex64::new(re, im);
            let a = psi.psi_hat(z);
            let b = psi.psi_hat_direct(z);
            assert!((a - b).norm() < 1e-12 * psi.mass(), "{z}: {a} vs {b}");
        }
        // ψ̂(1/(2πi)) = ∫ψ(x)e^{-x}dx, checked against adaptive quadrature.
        let w = psi.psi_hat(Complex64::new(0.0, -1.0 / (2.0 * PI)));
        let q = integrate_1d(|x| Complex64::new(psi.value(x) * libm::exp(-x), 0.0), &Quadrature1DSpec::new(-1.0, 1.0)).unwrap();
        assert!((w - q.value).norm() < 1e-9 * w.norm());
        assert!(w.re > 0.0 && w.im.abs() < 1e-14 * w.re);
    }

    #[test]
    fn transform_matches_quadrature_on_real_axis() {
        let psi = build_psi(DEFAULT_HALF_WIDTH, 1.0).unwrap();
        let spec = Quadrature1DSpec::new(-1.0, 1.0).tolerance(1e-13, 1e-12);
        for &xi in &[0.0, 1.0, 2.5, 7.0, 13.0, 20.0] {
            let q = integrate_1d(
                |x| Complex64::from_polar(psi.value(x), -2.0 * PI * x * xi),
                &spec,
            )
            .unwrap();
            let v = psi.psi_hat(Complex64::new(xi, 0.0));
            assert!((q.value - v).norm() < 1e-9, "xi={xi}");
            let vm = psi.psi_hat(Complex64::new(-xi, 0.0));
            assert!((vm - v.conj()).norm() < 1e-15 * psi.mass());
        }
    }

    #[test]
    fn derivative_samples_match_interpolant() {
        let psi = build_psi(DEFAULT_HALF_WIDTH, 1.0).unwrap();
        let scale = psi.samples().max_abs();
        for &x in &[-0.77, -0.2, 0.013, 0.5, 0.9] {
            let a = psi.derivative(x);
            let b = psi.samples().eval_derivative(x);
            assert!((a - b).abs() < 1e-8 * scale, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn grid_doubling_leaves_values_unchanged() {
        let a = build_psi_with(DEFAULT_HALF_WIDTH, 1.0, 1025).unwrap();
        let b = build_psi(DEFAULT_HALF_WIDTH, 1.0).unwrap();
        let scale = b.samples().max_abs();
        for &x in &[-0.9, -0.4321, 0.0, 0.1234567, 0.66] {
            assert!((a.value(x) - b.value(x)).abs() < 1e-10 * scale, "x={x}");
        }
    }
}
