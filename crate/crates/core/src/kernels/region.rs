//! The region `Ω = {(a, b, t) : (e^b - e^{-t})² < e^{2a} < (e^b + e^{-t})²}`.

/// `ln(e^a + e^b)` without overflow.
pub(crate) fn log_sum_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    m + libm::log1p(libm::exp(-(a - b).abs()))
}

/// `ln|e^a - e^b|`; `-∞` when `a = b`.
pub(crate) fn log_abs_diff_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    m + libm::log(-libm::expm1(-(a - b).abs()))
}

/// Membership test straight from the squared inequalities.
pub fn omega_contains(a: f64, b: f64, t: f64) -> bool {
    let eb = libm::exp(b);
    let et = libm::exp(-t);
    let e2a = libm::exp(2.0 * a);
    let lo = (eb - et) * (eb - et);
    let hi = (eb + et) * (eb + et);
    lo < e2a && e2a < hi
}

/// The slice `{t : (a, b, t) ∈ Ω}` as the open interval
/// `(-ln(e^a + e^b), -ln|e^a - e^b|)`; the upper end is `+∞` when `a = b`.
pub fn omega_t_interval(a: f64, b: f64) -> (f64, f64) {
    (-log_sum_exp(a, b), -log_abs_diff_exp(a, b))
}

/// Membership via [`omega_t_interval`].
pub fn omega_contains_log(a: f64, b: f64, t: f64) -> bool {
    let (lo, hi) = omega_t_interval(a, b);
    lo < t && t < hi
}
