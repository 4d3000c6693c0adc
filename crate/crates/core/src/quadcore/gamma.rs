// Coefficient tables are kept digit-for-digit as published.
#![allow(clippy::excessive_precision)]

use core::f64::consts::PI;

use crate::{Complex64, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
/// ln √(2π)
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;
const POLE_RADIUS: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Principal-branch `ln Γ(z)` (imaginary part reduced to `(-π, π]`).
///
/// Lanczos approximation for `Re z ≥ 1/2`, reflection otherwise. Fails with
/// [`Error::Pole`] within `1e-12` of a non-positive integer.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { at: z.re });
    }
    if z.re <= 0.5 {
        let n = libm::round(z.re);
        if n <= 0.0 && (z - c(n, 0.0)).norm() < POLE_RADIUS {
            return Err(Error::Pole { re: z.re, im: z.im });
        }
    }
    Ok(principal(log_gamma_raw(z)))
}

/// `Γ(z)` from [`log_gamma`].
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Volume of the unit ball in `ℝⁿ`.
pub fn unit_ball_volume(n: u32) -> f64 {
    let h = 0.5 * n as f64;
    libm::exp(h * libm::log(PI) - libm::lgamma(h + 1.0))
}

fn principal(w: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    let mut im = w.im - two_pi * libm::round(w.im / two_pi);
    if im <= -PI {
        im += two_pi;
    }
    c(w.re, im)
}

fn log_gamma_raw(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z), up to 2πi multiples.
        return c(libm::log(PI), 0.0) - log_sin_pi(z) - log_gamma_raw(c(1.0, 0.0) - z);
    }
    let zm = z - c(1.0, 0.0);
    let mut x = c(LANCZOS[0], 0.0);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        x += c(coef, 0.0) / (zm + c(i as f64, 0.0));
    }
    let t = zm + c(LANCZOS_G + 0.5, 0.0);
    c(LN_SQRT_2PI, 0.0) + (zm + c(0.5, 0.0)) * t.ln() - t + x.ln()
}

/// `ln sin(πz)`, safe for large `|Im z|` where `sin` itself overflows.
fn log_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() <= 1.0 {
        return (z * PI).sin().ln();
    }
    // For Im z > 0: sin(πz) = (i/2)·e^{-iπz}·(1 − e^{2iπz}); the last factor
    // is within e^{-2π} of 1 so its log is harmless.
    let flip = z.im < 0.0;
    let w = if flip { z.conj() } else { z };
    let i = c(0.0, 1.0);
    let e = (i * w * (2.0 * PI)).exp();
    let val = -i * w * PI + (c(1.0, 0.0) - e).ln() + c(libm::log(0.5), PI / 2.0);
    if flip {
        val.conj()
    } else {
        val
    }
}
