//! Spectral data model and growth/decay analytics of sequences.
//!
//! All fits are ordinary least squares on log–log points. Zero magnitudes,
//! and magnitudes at or below a caller-supplied noise floor, are left out
//! of the fit and counted in the result.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::transforms::CoefficientSequence;
use crate::{Complex64, Error, Result};

/// Fewest points a fit window may contain.
pub const MIN_FIT_POINTS: usize = 8;
/// Weyl-law and triple-growth fits are flagged beyond this distance from `d`.
pub const EXPONENT_FLAG: f64 = 0.3;

/// One spectral triple `(λ̃_j, c(η, η_j), a_0^{η_j, γ})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEntry {
    pub lambda_j_tilde: Complex64,
    pub c: Complex64,
    pub a0: Complex64,
}

impl SpectralEntry {
    pub fn new(lambda_j_tilde: Complex64, c: Complex64, a0: Complex64) -> Self {
        Self { lambda_j_tilde, c, a0 }
    }

    fn validate(&self, d: u32, j: usize) -> Result<()> {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        if !(finite(self.lambda_j_tilde) && finite(self.c) && finite(self.a0)) {
            return Err(Error::Validation(format!("entry {j}: non-finite value")));
        }
        let l = self.lambda_j_tilde;
        if l.im != 0.0 {
            // Complementary series: λ̃ = iy with 0 < y < (d-1)/(4π).
            let bound = (d as f64 - 1.0) / (4.0 * PI);
            if l.re != 0.0 || !(l.im > 0.0 && l.im < bound) {
                return Err(Error::Validation(format!(
                    "entry {j}: λ̃ = {l} is neither real nor i·y with 0 < y < {bound}"
                )));
            }
        }
        Ok(())
    }
}

/// Spectral data in ascending `|λ̃_j|` (stable for ties).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDataset {
    d: u32,
    entries: Vec<SpectralEntry>,
    provenance: String,
}

impl SpectralDataset {
    /// Validates every entry and sorts by `|λ̃_j|`.
    pub fn new(d: u32, mut entries: Vec<SpectralEntry>, provenance: impl Into<String>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Validation(format!("d = {d} < 2")));
        }
        for (j, e) in entries.iter().enumerate() {
            e.validate(d, j)?;
        }
        entries.sort_by(|x, y| x.lambda_j_tilde.norm().total_cmp(&y.lambda_j_tilde.norm()));
        Ok(Self {
            d,
            entries,
            provenance: provenance.into(),
        })
    }

    pub fn empty(d: u32) -> Result<Self> {
        Self::new(d, Vec::new(), "")
    }

    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn entries(&self) -> &[SpectralEntry] {
        &self.entries
    }
    pub fn provenance(&self) -> &str {
        &self.provenance
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    /// Largest `|λ̃_j|`, 0 when empty.
    pub fn lambda_max(&self) -> f64 {
        self.entries.last().map_or(0.0, |e| e.lambda_j_tilde.norm())
    }

    /// Entries with `|λ̃_j| ≤ cutoff`.
    pub fn truncated(&self, cutoff: f64) -> Self {
        Self {
            d: self.d,
            entries: self.entries.iter().copied().filter(|e| e.lambda_j_tilde.norm() <= cutoff).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Every `c_j` multiplied by `s`.
    pub fn scaled_c(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            e.c *= s;
        }
        out
    }
}

/// Result of a log–log least-squares fit `ln y ≈ constant + exponent·ln x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub exponent: f64,
    /// Intercept of the log–log line.
    pub constant: f64,
    pub r_squared: f64,
    /// Smallest and largest abscissa of the window.
    pub window: (f64, f64),
    pub points_used: usize,
    pub excluded_zero: usize,
    pub excluded_floor: usize,
}

/// Least squares on `(ln x, ln y)` pairs.
fn loglog_fit(xs: &[f64], ys: &[f64], window: (f64, f64), excluded_zero: usize, excluded_floor: usize) -> Result<GrowthFit> {
    let n = xs.len();
    if n < MIN_FIT_POINTS {
        return Err(Error::DegenerateWindow(format!(
            "{n} usable points (need {MIN_FIT_POINTS}); {excluded_zero} zero, {excluded_floor} at or below the floor"
        )));
    }
    let lx: Vec<f64> = xs.iter().map(|&x| libm::log(x)).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| libm::log(y)).collect();
    let mx = lx.iter().sum::<f64>() / n as f64;
    let my = ly.iter().sum::<f64>() / n as f64;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in lx.iter().zip(&ly) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateWindow("abscissae do not spread".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy > 0.0 { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) } else { 1.0 };
    Ok(GrowthFit {
        exponent: slope,
        constant: my - slope * mx,
        r_squared,
        window,
        points_used: n,
        excluded_zero,
        excluded_floor,
    })
}

/// Fits `|c_k| ~ C k^{exponent}` over the supplied `(k, |c_k|)` window.
/// Points with magnitude 0 or `≤ floor` are excluded and counted; pass
/// `floor = 0` to keep every positive value.
pub fn decay_fit(points: &[(f64, f64)], floor: f64) -> Result<GrowthFit> {
    if points.is_empty() {
        return Err(Error::DegenerateWindow("empty window".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let (mut zero, mut low) = (0, 0);
    let mut window = (f64::INFINITY, f64::NEG_INFINITY);
    for &(k, m) in points {
        if !(k > 0.0 && k.is_finite() && m.is_finite() && m >= 0.0) {
            return Err(Error::Validation(format!("bad fit point ({k}, {m})")));
        }
        window = (window.0.min(k), window.1.max(k));
        if m == 0.0 {
            zero += 1;
        } else if m <= floor {
            low += 1;
        } else {
            xs.push(k);
            ys.push(m);
        }
    }
    loglog_fit(&xs, &ys, window, zero, low)
}

/// Fits `Σ_{|k|≤T}|a_k|² ~ C T^{exponent}` over `t_grid`.
pub fn partial_sum_exponent(coeffs: &CoefficientSequence, t_grid: &[f64]) -> Result<GrowthFit> {
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) || t_grid.first().is_some_and(|&t| !(t > 0.0)) {
        return Err(Error::BadParam("T grid must be positive and increasing".into()));
    }
    let reach = coeffs.k_max().min(-coeffs.k_min()) as f64;
    if t_grid.last().is_some_and(|&t| t > reach) {
        return Err(Error::BadParam(format!("T grid exceeds the coefficient range ±{reach}")));
    }
    // Cumulative sums in ascending |k| order.
    let mut by_abs: Vec<(u64, f64)> = coeffs.iter().map(|(k, a)| (k.unsigned_abs(), a.norm_sqr())).collect();
    by_abs.sort_by_key(|p| p.0);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut zero = 0;
    let mut acc = crate::quadcore::NeumaierSum::new();
    let mut i = 0;
    for &t in t_grid {
        while i < by_abs.len() && by_abs[i].0 as f64 <= t {
            acc.add(by_abs[i].1);
            i += 1;
        }
        let s = acc.value();
        if s > 0.0 {
            xs.push(t);
            ys.push(s);
        } else {
            zero += 1;
        }
    }
    let window = (t_grid.first().copied().unwrap_or(0.0), t_grid.last().copied().unwrap_or(0.0));
    loglog_fit(&xs, &ys, window, zero, 0)
}

/// A fit together with a flag for exponents far from the expected value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlaggedFit {
    pub fit: GrowthFit,
    pub flagged: bool,
}

/// Abscissae `|λ̃_j|` with the cumulative sums of `weight(entry)`, at each
/// entry, from the 8th entry on (tiny counts are all discreteness).
fn cumulative(data: &SpectralDataset, window: (f64, f64), weight: impl Fn(&SpectralEntry) -> f64) -> Result<GrowthFit> {
    if data.len() < 32 {
        return Err(Error::DegenerateWindow(format!("{} entries (need 32)", data.len())));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut acc = crate::quadcore::NeumaierSum::new();
    let entries = data.entries();
    let mut zero = 0;
    for (j, e) in entries.iter().enumerate() {
        acc.add(weight(e));
        let x = e.lambda_j_tilde.norm();
        // Only the last entry of a run of equal |λ̃| carries the full count.
        if entries.get(j + 1).is_some_and(|n| n.lambda_j_tilde.norm() == x)
            || j + 1 < MIN_FIT_POINTS
            || x <= 0.0
            || x < window.0
            || x > window.1
        {
            continue;
        }
        let s = acc.value();
        if s > 0.0 {
            xs.push(x);
            ys.push(s);
        } else {
            zero += 1;
        }
    }
    let window = (xs.first().copied().unwrap_or(0.0), xs.last().copied().unwrap_or(0.0));
    loglog_fit(&xs, &ys, window, zero, 0)
}

/// Weyl law `#{j : |λ̃_j| ≤ x} ~ c x^d`: fits the counting function.
pub fn weyl_check(data: &SpectralDataset, d: u32) -> Result<FlaggedFit> {
    weyl_check_in(data, d, (0.0, f64::INFINITY))
}

/// [`weyl_check`] with the fit restricted to `lo ≤ |λ̃_j| ≤ hi`; the
/// counts still include every entry below the window.
pub fn weyl_check_in(data: &SpectralDataset, d: u32, window: (f64, f64)) -> Result<FlaggedFit> {
    let fit = cumulative(data, window, |_| 1.0)?;
    Ok(FlaggedFit {
        fit,
        flagged: (fit.exponent - d as f64).abs() > EXPONENT_FLAG,
    })
}

/// `Σ_{|λ̃_j|≤x}|c_j|² ≤ C x^d`: fits the partial sums, flags exponents
/// above `d + 0.3`.
pub fn triple_growth_check(data: &SpectralDataset, d: u32) -> Result<FlaggedFit> {
    triple_growth_check_in(data, d, (0.0, f64::INFINITY))
}

/// [`triple_growth_check`] with the fit restricted to a window of `|λ̃_j|`.
pub fn triple_growth_check_in(data: &SpectralDataset, d: u32, window: (f64, f64)) -> Result<FlaggedFit> {
    let fit = cumulative(data, window, |e| e.c.norm_sqr())?;
    Ok(FlaggedFit {
        fit,
        flagged: fit.exponent > d as f64 + EXPONENT_FLAG,
    })
}

/// Checks a coefficient sequence: finite values and a valid range.
pub fn validate_coefficients(coeffs: &CoefficientSequence) -> Result<()> {
    for (k, a) in coeffs.iter() {
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::Validation(format!("a_{k} is not finite")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn weyl_data(d: u32, n: usize, lam: impl Fn(usize) -> f64, cj: impl Fn(f64) -> f64) -> SpectralDataset {
        let e = (1..=n).map(|j| SpectralEntry::new(c(lam(j)), c(cj(lam(j))), c(1.0))).collect();
        SpectralDataset::new(d, e, "synthetic").unwrap()
    }

    #[test]
    fn dataset_validation_and_order() {
        let ds = SpectralDataset::new(
            2,
            vec![
                SpectralEntry::new(c(3.0), c(1.0), c(1.0)),
                SpectralEntry::new(Complex64::new(0.0, 0.05), c(1.0), c(1.0)),
                SpectralEntry::new(c(-1.0), c(1.0), c(1.0)),
            ],
            "t",
        )
        .unwrap();
        let l: Vec<f64> = ds.entries().iter().map(|e| e.lambda_j_tilde.norm()).collect();
        assert_eq!(l, vec![0.05, 1.0, 3.0]);
        assert!(SpectralDataset::empty(3).unwrap().is_empty());
        let bad = SpectralEntry::new(c(f64::NAN), c(1.0), c(1.0));
        assert!(matches!(SpectralDataset::new(2, vec![bad], ""), Err(Error::Validation(_))));
        let bad = SpectralEntry::new(Complex64::new(0.0, 0.2), c(1.0), c(1.0));
        assert!(SpectralDataset::new(2, vec![bad], "").is_err());
    }

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..=40).map(|k| (k as f64, (k as f64).powi(-3))).collect();
        let f = decay_fit(&pts, 0.0).unwrap();
        assert!((f.exponent + 3.0).abs() < 1e-3 && f.r_squared > 0.999_999);
        // Rescaling shifts only the constant.
        let g = decay_fit(&pts.iter().map(|&(k, m)| (k, 7.0 * m)).collect::<Vec<_>>(), 0.0).unwrap();
        assert!((g.exponent - f.exponent).abs() < 1e-12);
        assert!((g.constant - f.constant - libm::log(7.0)).abs() < 1e-12);
    }

    #[test]
    fn exponential_decay_steepens() {
        let mut last = 0.0;
        for n in [10, 20, 40] {
            let pts: Vec<(f64, f64)> = (1..=n).map(|k| (k as f64, libm::exp(-(k as f64)))).collect();
            let f = decay_fit(&pts, 0.0).unwrap();
            assert!(f.exponent < last);
            last = f.exponent;
        }
    }

    #[test]
    fn zeros_and_floor_are_counted() {
        let mut pts: Vec<(f64, f64)> = (1..=12).map(|k| (k as f64, 1.0 / k as f64)).collect();
        pts.push((13.0, 0.0));
        pts.push((14.0, 1e-20));
        let f = decay_fit(&pts, 1e-15).unwrap();
        assert_eq!((f.points_used, f.excluded_zero, f.excluded_floor), (12, 1, 1));
        assert!(matches!(decay_fit(&pts[..5], 0.0), Err(Error::DegenerateWindow(_))));
    }

    #[test]
    fn moderate_times_rapid_is_rapid() {
        let pts: Vec<(f64, f64)> = (100..=400)
            .map(|k| {
                let k = k as f64;
                (k, k * k * libm::exp(-k.sqrt()))
            })
            .collect();
        assert!(decay_fit(&pts, 0.0).unwrap().exponent < -4.0);
    }

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo * libm::pow(hi / lo, i as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn partial_sum_exponents() {
        let ones = CoefficientSequence::new(-4096, vec![c(1.0); 8193]).unwrap();
        let f = partial_sum_exponent(&ones, &grid(16.0, 1024.0, 16)).unwrap();
        assert!((f.exponent - 1.0).abs() < 0.02, "{f:?}");
        let tail: Vec<Complex64> = (-4096i64..=4096)
            .map(|k| if k == 0 { c(1.0) } else { c(libm::pow(k.unsigned_abs() as f64, -0.25)) })
            .collect();
        let tail = CoefficientSequence::new(-4096, tail).unwrap();
        let f = partial_sum_exponent(&tail, &grid(64.0, 4096.0, 16)).unwrap();
        assert!((f.exponent - 0.5).abs() < 0.05, "{f:?}");
        let only0 = CoefficientSequence::from_pairs([(0, c(1.0)), (2000, c(0.0)), (-2000, c(0.0))]).unwrap();
        let f = partial_sum_exponent(&only0, &grid(16.0, 1024.0, 16)).unwrap();
        assert!(f.exponent.abs() < 1e-12);
        assert!(partial_sum_exponent(&ones, &[10.0, 5.0]).is_err());
    }

    #[test]
    fn weyl_and_triple_growth() {
        for d in [2u32, 3] {
            let data = weyl_data(d, 400, |j| libm::pow(j as f64, 1.0 / d as f64), |_| 1.0);
            let w = weyl_check(&data, d).unwrap();
            assert!((w.fit.exponent - d as f64).abs() < 0.05 && !w.flagged, "{w:?}");
            let t = triple_growth_check(&data, d).unwrap();
            assert!((t.fit.exponent - d as f64).abs() < 0.05 && !t.flagged);
            let decaying = weyl_data(d, 400, |j| libm::pow(j as f64, 1.0 / d as f64), |x| libm::pow(x, -(d as f64)));
            let t = triple_growth_check(&decaying, d).unwrap();
            assert!(t.fit.exponent.abs() < 0.1 && !t.flagged, "{t:?}");
        }
        let linear = weyl_data(2, 100, |j| j as f64, |_| 1.0);
        let w = weyl_check(&linear, 2).unwrap();
        assert!((w.fit.exponent - 1.0).abs() < 0.05 && w.flagged);
        assert!(matches!(weyl_check(&linear.truncated(10.0), 2), Err(Error::DegenerateWindow(_))));
        // Signs of c_j do not matter.
        let signs = weyl_data(2, 100, |j| libm::sqrt(j as f64), |x| if (x * x) as i64 % 2 == 0 { 1.0 } else { -1.0 });
        let plain = weyl_data(2, 100, |j| libm::sqrt(j as f64), |_| 1.0);
        assert_eq!(triple_growth_check(&signs, 2).unwrap(), triple_growth_check(&plain, 2).unwrap());
    }
}
