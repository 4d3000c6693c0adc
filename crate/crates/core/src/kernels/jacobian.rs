use alloc::format;

use crate::{Error, Result};

/// Analytic Jacobian next to a finite-difference estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianCheck {
    pub analytic: f64,
    pub numeric: f64,
}

impl JacobianCheck {
    pub fn rel_err(&self) -> f64 {
        (self.analytic - self.numeric).abs() / self.analytic.abs()
    }
}

const NEAR: f64 = 1e-8;

/// Richardson-extrapolated central difference, `O(h⁴)`.
fn diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

/// `(x, t) ↦ (a, b) = (ln|x + e^{-t}|, ln|x|)` has `|det| = e^{-t-a-b}`.
pub fn jacobian_check_d2(x: f64, t: f64) -> Result<JacobianCheck> {
    let et = libm::exp(-t);
    let m = x + et;
    if !(x.is_finite() && t.is_finite()) {
        return Err(Error::BadParam("non-finite point".into()));
    }
    if x.abs() < NEAR || m.abs() < NEAR {
        return Err(Error::NearSingular(format!("x = {x}, x + e^-t = {m}")));
    }
    let a = libm::log(m.abs());
    let b = libm::log(x.abs());
    let analytic = libm::exp(-t - a - b);

    let fa = |x: f64, t: f64| libm::log((x + libm::exp(-t)).abs());
    let fb = |x: f64, _t: f64| libm::log(x.abs());
    let hx = 1e-3 * x.abs().min(m.abs());
    let ht = 1e-3 * (m.abs() / et).min(1.0);
    let ax = diff(|s| fa(s, t), x, hx);
    let at = diff(|s| fa(x, s), t, ht);
    let bx = diff(|s| fb(s, t), x, hx);
    let bt = diff(|s| fb(x, s), t, ht);
    Ok(JacobianCheck {
        analytic,
        numeric: (ax * bt - at * bx).abs(),
    })
}

/// `(x, r, t) ↦ (½ln((x + e^{-t})² + r²), ½ln(x² + r²), t)` has
/// `det = r·e^{-(t + 2a + 2b)}`.
pub fn jacobian_check_d3(x: f64, r: f64, t: f64) -> Result<JacobianCheck> {
    if !(x.is_finite() && r.is_finite() && t.is_finite()) {
        return Err(Error::BadParam("non-finite point".into()));
    }
    if r < NEAR {
        return Err(Error::NearSingular(format!("r = {r}")));
    }
    let et = libm::exp(-t);
    let m2 = (x + et) * (x + et) + r * r;
    let rho2 = x * x + r * r;
    let a = 0.5 * libm::log(m2);
    let b = 0.5 * libm::log(rho2);
    let analytic = r * libm::exp(-(t + 2.0 * a + 2.0 * b));

    let fa = |x: f64, r: f64, t: f64| {
        let m = x + libm::exp(-t);
        0.5 * libm::log(m * m + r * r)
    };
    let fb = |x: f64, r: f64, _t: f64| 0.5 * libm::log(x * x + r * r);
    let scale = m2.sqrt().min(rho2.sqrt()).min(r);
    let h = 1e-3 * scale;
    let ht = 1e-3 * (m2.sqrt() / et).min(1.0);
    let j = [
        [
            diff(|s| fa(s, r, t), x, h),
            diff(|s| fa(x, s, t), r, h),
            diff(|s| fa(x, r, s), t, ht),
        ],
        [
            diff(|s| fb(s, r, t), x, h),
            diff(|s| fb(x, s, t), r, h),
            diff(|s| fb(x, r, s), t, ht),
        ],
        [0.0, 0.0, 1.0],
    ];
    let det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    Ok(JacobianCheck { analytic, numeric: det })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_reference_point() {
        let j = jacobian_check_d2(1.0, 0.0).unwrap();
        assert!((j.analytic - 0.5).abs() < 1e-15);
        assert!((j.numeric - 0.5).abs() < 1e-9);
        assert!(matches!(jacobian_check_d2(1e-9, 0.0), Err(Error::NearSingular(_))));
        assert!(matches!(jacobian_check_d2(-1.0, 0.0), Err(Error::NearSingular(_))));
    }

    #[test]
    fn d3_spot_points() {
        for &(x, r, t) in &[(0.3, 0.7, -0.2), (-1.2, 0.05, 0.4), (-0.5, 2.0, 1.5)] {
            let j = jacobian_check_d3(x, r, t).unwrap();
            assert!(j.analytic > 0.0);
            assert!(j.rel_err() < 1e-8, "{x} {r} {t}: {j:?}");
        }
        assert!(jacobian_check_d3(0.1, 0.0, 0.0).is_err());
    }
}
