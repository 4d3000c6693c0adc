use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::Profile1D;
use crate::{Complex64, Error, Result};

/// Metadata value for functions known to be `C^∞`.
pub const SMOOTH: u32 = u32::MAX;
/// Default grid size of [`base_bump`].
pub const DEFAULT_BUMP_POINTS: usize = 2049;
const MIN_POINTS: usize = 64;
const MAX_POINTS: usize = 1 << 24;
const STENCIL: usize = 6;

/// Real function sampled on a uniform grid over its support, zero outside.
///
/// Between grid points it is evaluated by 6-point Lagrange interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
    smoothness_order: u32,
}

impl SampledFunction {
    pub fn new(lo: f64, hi: f64, values: Vec<f64>, smoothness_order: u32) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::BadParam(format!("support [{lo}, {hi}] is not a proper interval")));
        }
        if values.len() < MIN_POINTS {
            return Err(Error::GridResolution(format!(
                "{} samples, at least {MIN_POINTS} required",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { at: i as f64 });
        }
        let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let edge = values[0].abs().max(values[values.len() - 1].abs());
        if edge > 1e-12 * max {
            return Err(Error::Validation(format!(
                "endpoint samples {edge:e} are not negligible against max {max:e}"
            )));
        }
        Ok(Self {
            lo,
            hi,
            values,
            smoothness_order,
        })
    }

    pub fn from_fn(lo: f64, hi: f64, n: usize, smoothness_order: u32, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridResolution(format!("{n} samples")));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let values = (0..n).map(|i| f(lo + h * i as f64)).collect();
        Self::new(lo, hi, values, smoothness_order)
    }

    /// The zero function on `[lo, hi]`.
    pub fn zero(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::new(lo, hi, vec![0.0; n], SMOOTH)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }
    pub fn hi(&self) -> f64 {
        self.hi
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn smoothness_order(&self) -> u32 {
        self.smoothness_order
    }
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.values.len() - 1) as f64
    }
    pub fn node(&self, i: usize) -> f64 {
        self.lo + self.step() * i as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Same samples moved by `shift`.
    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            lo: self.lo + shift,
            hi: self.hi + shift,
            ..self.clone()
        }
    }

    /// Samples multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// Trapezoid rule over the grid. For smooth functions vanishing to high
    /// order at the ends this is spectrally accurate.
    pub fn integral(&self) -> f64 {
        let n = self.values.len();
        let inner: f64 = self.values[1..n - 1].iter().sum();
        self.step() * (inner + 0.5 * (self.values[0] + self.values[n - 1]))
    }

    /// `∫ f(x) g(x) dx` by the trapezoid rule on the sample grid.
    pub fn weighted_integral(&self, mut g: impl FnMut(f64) -> Complex64) -> Complex64 {
        let h = self.step();
        let n = self.values.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &v) in self.values.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let w = if i == 0 || i + 1 == n { 0.5 * h } else { h };
            acc += g(self.lo + h * i as f64) * (v * w);
        }
        acc
    }

    /// Fourier transform `∫ f(x) e^{-2πixξ} dx` for complex `ξ`.
    pub fn fourier(&self, xi: Complex64) -> Complex64 {
        let k = Complex64::new(0.0, -2.0 * core::f64::consts::PI) * xi;
        self.weighted_integral(|x| (k * x).exp())
    }

    /// Stencil start and position in units of the step.
    #[inline]
    fn stencil(&self, x: f64) -> (usize, f64) {
        let h = self.step();
        let n = self.values.len();
        let p = (x - self.lo) / h;
        let i0 = (libm::floor(p) as isize - 2).clamp(0, (n - STENCIL) as isize) as usize;
        (i0, p - i0 as f64)
    }

    pub fn eval(&self, x: f64) -> f64 {
        if !(x > self.lo && x < self.hi) {
            return 0.0;
        }
        let (i0, p) = self.stencil(x);
        let mut acc = 0.0;
        for j in 0..STENCIL {
            let mut w = 1.0;
            for m in 0..STENCIL {
                if m != j {
                    w *= (p - m as f64) / (j as f64 - m as f64);
                }
            }
            acc += w * self.values[i0 + j];
        }
        acc
    }

    /// Derivative of the interpolant.
    pub fn eval_derivative(&self, x: f64) -> f64 {
        if !(x > self.lo && x < self.hi) {
            return 0.0;
        }
        let (i0, p) = self.stencil(x);
        let mut acc = 0.0;
        for j in 0..STENCIL {
            let mut denom = 1.0;
            for m in 0..STENCIL {
                if m != j {
                    denom *= j as f64 - m as f64;
                }
            }
            // d/dp Π_{m≠j}(p - m) as a sum of products leaving one factor out
            let mut d = 0.0;
            for l in 0..STENCIL {
                if l == j {
                    continue;
                }
                let mut prod = 1.0;
                for m in 0..STENCIL {
                    if m != j && m != l {
                        prod *= p - m as f64;
                    }
                }
                d += prod;
            }
            acc += d / denom * self.values[i0 + j];
        }
        acc / self.step()
    }
}

impl Profile1D for SampledFunction {
    fn value(&self, x: f64) -> f64 {
        self.eval(x)
    }
    fn derivative(&self, x: f64) -> f64 {
        self.eval_derivative(x)
    }
    fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

/// The standard smooth cutoff `u(x) = exp(1 - 1/(1 - (x/w)²))` on `[-w, w]`.
#[inline]
pub fn bump_value(x: f64, half_width: f64) -> f64 {
    let y = x / half_width;
    if y.abs() >= 1.0 {
        0.0
    } else {
        libm::exp(1.0 - 1.0 / (1.0 - y * y))
    }
}

/// Derivative of [`bump_value`] in `x`.
#[inline]
pub fn bump_derivative(x: f64, half_width: f64) -> f64 {
    let y = x / half_width;
    if y.abs() >= 1.0 {
        return 0.0;
    }
    let q = 1.0 - y * y;
    bump_value(x, half_width) * (-2.0 * y / (q * q)) / half_width
}

/// Even, non-negative `C^∞` bump with maximum 1 supported on
/// `[-half_width, half_width]`, sampled on [`DEFAULT_BUMP_POINTS`] points.
pub fn base_bump(half_width: f64) -> Result<SampledFunction> {
    base_bump_with(half_width, DEFAULT_BUMP_POINTS)
}

pub fn base_bump_with(half_width: f64, n: usize) -> Result<SampledFunction> {
    if !(half_width > 0.0 && half_width <= 1.0) {
        return Err(Error::BadParam(format!("half_width {half_width} outside (0, 1]")));
    }
    if n % 2 == 0 {
        return Err(Error::BadParam("bump grid needs an odd size so 0 is a node".into()));
    }
    SampledFunction::from_fn(-half_width, half_width, n, SMOOTH, |x| bump_value(x, half_width))
}

/// Discrete convolution `f ∗ g` on the common grid step; the trapezoid rule
/// for the convolution integral, exact up to aliasing for smooth inputs.
pub fn convolve(f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
    let h = f.step();
    if ((g.step() - h) / h).abs() > 1e-12 {
        return Err(Error::BadParam(format!("grid steps differ: {h} vs {}", g.step())));
    }
    let (nf, ng) = (f.len(), g.len());
    let n = nf + ng - 1;
    if n > MAX_POINTS {
        return Err(Error::GridResolution(format!("convolution would need {n} samples")));
    }
    let mut out = vec![0.0; n];
    for (i, &a) in f.values.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for (j, &b) in g.values.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    for v in &mut out {
        *v *= h;
    }
    SampledFunction::new(
        f.lo + g.lo,
        f.hi + g.hi,
        out,
        f.smoothness_order.min(g.smoothness_order),
    )
}

/// The `(times + 1)`-fold convolution power of `f`.
pub fn self_convolve(f: &SampledFunction, times: u32) -> Result<SampledFunction> {
    if times == 0 {
        return Err(Error::BadParam("times must be at least 1".into()));
    }
    let mut acc = f.clone();
    for _ in 0..times {
        acc = convolve(&acc, f)?;
    }
    Ok(acc)
}
