use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::FRAC_PI_2;
use core::ops::{Add, Mul, Sub};

use super::kronrod::{WG, WGK, XGK};
use super::{QuadResult, Quadrature1DSpec};
use crate::{Complex64, Error, Result};

/// Largest `|x|` an exp-sinh map will visit.
const X_MAX: f64 = 1e100;
/// Window half-width in τ used at a regular endpoint of a tanh-sinh map.
const TS_REGULAR_TAU: f64 = 4.0;
const INITIAL_DE_PANELS: usize = 16;

/// Vector space the engine integrates over. The error norm only looks at the
/// "value" part, so auxiliary components can ride along.
pub(crate) trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn norm(&self) -> f64;
    fn is_finite(&self) -> bool;
    /// Real and imaginary parts of the primary value, for error reports.
    fn parts(&self) -> (f64, f64);
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn norm(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn parts(&self) -> (f64, f64) {
        (self.re, self.im)
    }
}

#[derive(Clone, Copy, Debug)]
enum Map {
    Identity { lo: f64, hi: f64 },
    /// `x ∈ (lo, hi)` from `τ ∈ ℝ`.
    TanhSinh { lo: f64, hi: f64, half: f64 },
    /// `x = origin + sign·exp(π/2·sinh τ)`.
    ExpSinh { origin: f64, sign: f64 },
}

/// Quadrature node handed to offset-aware integrands: the abscissa together
/// with its distances to both endpoints, computed without cancellation.
/// Distances to an infinite endpoint are `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_lo: f64,
    pub from_hi: f64,
}

impl Map {
    /// Returns the node and `dx/dτ`.
    #[inline]
    fn apply(&self, tau: f64) -> (Node, f64) {
        match *self {
            Map::Identity { lo, hi } => (
                Node {
                    x: tau,
                    from_lo: tau - lo,
                    from_hi: hi - tau,
                },
                1.0,
            ),
            Map::TanhSinh { lo, hi, half } => {
                let s = FRAC_PI_2 * libm::sinh(tau);
                let e = libm::exp(-2.0 * s.abs());
                let dist = 2.0 * half * e / (1.0 + e);
                let far = 2.0 * half / (1.0 + e);
                let w = half * FRAC_PI_2 * libm::cosh(tau) * 4.0 * e / ((1.0 + e) * (1.0 + e));
                let node = if tau <= 0.0 {
                    Node {
                        x: lo + dist,
                        from_lo: dist,
                        from_hi: far,
                    }
                } else {
                    Node {
                        x: hi - dist,
                        from_lo: far,
                        from_hi: dist,
                    }
                };
                (node, w)
            }
            Map::ExpSinh { origin, sign } => {
                let r = libm::exp(FRAC_PI_2 * libm::sinh(tau));
                let (from_lo, from_hi) = if sign > 0.0 { (r, f64::INFINITY) } else { (f64::INFINITY, r) };
                (
                    Node {
                        x: origin + sign * r,
                        from_lo,
                        from_hi,
                    },
                    FRAC_PI_2 * libm::cosh(tau) * r,
                )
            }
        }
    }
}

/// Smallest distance to a finite endpoint the maps will visit. When the
/// integrand only sees `x`, nodes closer than a few ulps of the endpoint are
/// pointless; offset-aware integrands can go much closer.
fn min_offset(at: f64, offsets: bool) -> f64 {
    if offsets {
        1e-290
    } else {
        (4.0 * f64::EPSILON * at.abs()).max(1e-290)
    }
}

fn tanh_sinh_window(lo: f64, hi: f64, singular: super::Endpoints, offsets: bool) -> (f64, f64) {
    let half = 0.5 * (hi - lo);
    let edge = |at: f64| libm::asinh(libm::log(min_offset(at, offsets) / (2.0 * half)) / core::f64::consts::PI);
    let lo_tau = edge(lo);
    let hi_tau = -edge(hi);
    let lo_tau = if singular.lower { lo_tau } else { lo_tau.max(-TS_REGULAR_TAU) };
    let hi_tau = if singular.upper { hi_tau } else { hi_tau.min(TS_REGULAR_TAU) };
    (lo_tau, hi_tau)
}

fn exp_sinh_window(origin: f64, offsets: bool) -> (f64, f64) {
    let lo = libm::asinh(libm::log(min_offset(origin, offsets)) / FRAC_PI_2);
    let hi = libm::asinh(libm::log(X_MAX) / FRAC_PI_2);
    (lo, hi)
}

struct Panel<V> {
    map: usize,
    a: f64,
    b: f64,
    value: V,
    err: f64,
    resabs: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl<V> Eq for Panel<V> {}
impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Panel<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// One Gauss–Kronrod panel in τ. Mirrors the QUADPACK error heuristic.
fn gk21<V, F>(f: &mut F, map: &Map, a: f64, b: f64, evals: &mut usize) -> Result<Panel<V>>
where
    V: QuadValue,
    F: FnMut(Node) -> Result<V>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut eval = |tau: f64| -> Result<V> {
        let (node, w) = map.apply(tau);
        *evals += 1;
        if w == 0.0 {
            return Ok(V::zero());
        }
        let v = f(node)? * w;
        if !v.is_finite() {
            return Err(Error::NonFinite { at: node.x });
        }
        Ok(v)
    };
    let mut fv1 = [V::zero(); 10];
    let mut fv2 = [V::zero(); 10];
    let fc = eval(c)?;
    let mut resk = fc * WGK[10];
    let mut resg = V::zero();
    let mut resabs = WGK[10] * fc.norm();
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = eval(c - dx)?;
        let f2 = eval(c + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).norm() + (fv2[j] - reskh).norm());
    }
    let value = resk * h;
    resabs *= h.abs();
    resasc *= h.abs();
    let mut err = ((resk - resg) * h).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * libm::pow(200.0 * err / resasc, 1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Panel {
        map: 0,
        a,
        b,
        value,
        err,
        resabs,
    })
}

/// Generic adaptive driver for integrands that only look at `x`.
pub(crate) fn adaptive<V, F>(mut f: F, spec: &Quadrature1DSpec) -> Result<QuadResult<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    adaptive_nodes(|n: Node| f(n.x), spec, false)
}

pub(crate) fn adaptive_nodes<V, F>(mut f: F, spec: &Quadrature1DSpec, offsets: bool) -> Result<QuadResult<V>>
where
    V: QuadValue,
    F: FnMut(Node) -> Result<V>,
{
    spec.validate()?;
    let (lo, hi) = (spec.lo, spec.hi);
    if lo == hi {
        return Ok(QuadResult {
            value: V::zero(),
            err_est: 0.0,
            evals: 0,
        });
    }

    // Each segment is a map plus a τ-window with an initial panel count.
    let mut segments: Vec<(Map, f64, f64, usize)> = Vec::with_capacity(2);
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            if spec.singular.any() {
                let (ta, tb) = tanh_sinh_window(lo, hi, spec.singular, offsets);
                let map = Map::TanhSinh {
                    lo,
                    hi,
                    half: 0.5 * (hi - lo),
                };
                segments.push((map, ta, tb, INITIAL_DE_PANELS));
            } else {
                segments.push((Map::Identity { lo, hi }, lo, hi, spec.initial_panels.max(1)));
            }
        }
        (true, false) => {
            let (ta, tb) = exp_sinh_window(lo, offsets);
            segments.push((Map::ExpSinh { origin: lo, sign: 1.0 }, ta, tb, INITIAL_DE_PANELS));
        }
        (false, true) => {
            let (ta, tb) = exp_sinh_window(hi, offsets);
            segments.push((Map::ExpSinh { origin: hi, sign: -1.0 }, ta, tb, INITIAL_DE_PANELS));
        }
        (false, false) => {
            let (ta, tb) = exp_sinh_window(0.0, offsets);
            segments.push((Map::ExpSinh { origin: 0.0, sign: 1.0 }, ta, tb, INITIAL_DE_PANELS));
            segments.push((Map::ExpSinh { origin: 0.0, sign: -1.0 }, ta, tb, INITIAL_DE_PANELS));
        }
    }
    let maps: Vec<Map> = segments.iter().map(|s| s.0).collect();

    let mut evals = 0usize;
    let mut heap: BinaryHeap<Panel<V>> = BinaryHeap::new();
    let mut done: Vec<Panel<V>> = Vec::new();
    for (idx, &(map, ta, tb, n)) in segments.iter().enumerate() {
        let step = (tb - ta) / n as f64;
        for i in 0..n {
            let a = ta + step * i as f64;
            let b = if i + 1 == n { tb } else { a + step };
            let mut p = gk21(&mut f, &map, a, b, &mut evals)?;
            p.map = idx;
            heap.push(p);
        }
    }

    let max_panels = spec.max_panels.max(heap.len());
    loop {
        let (value, err, resabs) = totals(heap.iter().chain(done.iter()));
        let tol = spec.abs_tol.max(spec.rel_tol * value.norm());
        // Below this level the estimate is dominated by rounding, not by
        // the rule, and further bisection cannot help.
        let floor = 64.0 * f64::EPSILON * resabs;
        if err <= tol || err <= floor {
            return Ok(QuadResult {
                value,
                err_est: err,
                evals,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Err(non_convergence(value, err, tol)),
        };
        if heap.len() + done.len() + 1 >= max_panels {
            heap.push(worst);
            return Err(non_convergence(value, err, tol));
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            done.push(worst);
            continue;
        }
        let map = maps[worst.map];
        let mut left = gk21(&mut f, &map, worst.a, mid, &mut evals)?;
        let mut right = gk21(&mut f, &map, mid, worst.b, &mut evals)?;
        left.map = worst.map;
        right.map = worst.map;
        heap.push(left);
        heap.push(right);
    }
}

fn totals<'a, V: QuadValue + 'a>(panels: impl Iterator<Item = &'a Panel<V>>) -> (V, f64, f64) {
    // Values are small in number and similar in magnitude; pairwise error
    // is negligible next to the rule error, so plain accumulation is fine.
    let mut v = V::zero();
    let mut e = 0.0;
    let mut r = 0.0;
    for p in panels {
        v = v + p.value;
        e += p.err;
        r += p.resabs;
    }
    (v, e, r)
}

fn non_convergence<V: QuadValue>(value: V, err: f64, tol: f64) -> Error {
    let (value_re, value_im) = value.parts();
    Error::NonConvergence {
        value_re,
        value_im,
        err_est: err,
        tolerance: tol,
    }
}

/// Integrates a fallible complex integrand. Errors raised by `f` are passed
/// through unchanged, which is what nested integrals need.
pub fn try_integrate_1d<F>(f: F, spec: &Quadrature1DSpec) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    adaptive::<Complex64, _>(f, spec)
}

/// Like [`try_integrate_1d`] but the integrand receives each node with its
/// exact distances to the endpoints. Singular factors such as `(hi - x)^p`
/// should be computed from `from_hi`, which stays accurate down to `1e-290`
/// even when `hi` is far from zero.
pub fn try_integrate_1d_nodes<F>(f: F, spec: &Quadrature1DSpec) -> Result<QuadResult>
where
    F: FnMut(Node) -> Result<Complex64>,
{
    adaptive_nodes::<Complex64, _>(f, spec, true)
}

/// Integrates a complex integrand to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_1d<F>(mut f: F, spec: &Quadrature1DSpec) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    try_integrate_1d(|x| Ok(f(x)), spec)
}

/// Real-valued convenience wrapper around [`integrate_1d`].
pub fn integrate_1d_real<F>(mut f: F, spec: &Quadrature1DSpec) -> Result<QuadResult<f64>>
where
    F: FnMut(f64) -> f64,
{
    let r = try_integrate_1d(|x| Ok(Complex64::new(f(x), 0.0)), spec)?;
    Ok(QuadResult {
        value: r.value.re,
        err_est: r.err_est,
        evals: r.evals,
    })
}
