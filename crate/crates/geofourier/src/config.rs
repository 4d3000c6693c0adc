//! Shared argument types and the run record embedded in reports.

use std::str::FromStr;

use geofourier_core::quadcore::Tolerance;
use serde::Serialize;

/// Environment variable holding the default quadrature tolerance, as
/// `REL` or `ABS,REL`. The `--tol` flag takes precedence.
pub const TOL_ENV: &str = "GEOFOURIER_QUAD_TOL";

/// A quadrature tolerance given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TolArg {
    pub abs: f64,
    pub rel: f64,
}

impl FromStr for TolArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let nums: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad tolerance component {p:?}")))
            .collect::<Result<_, _>>()?;
        let (abs, rel) = match nums[..] {
            [r] => (r, r),
            [a, r] => (a, r),
            _ => return Err("expected REL or ABS,REL".into()),
        };
        if !(abs >= 0.0 && rel >= 0.0 && abs.is_finite() && rel.is_finite()) || (abs == 0.0 && rel == 0.0) {
            return Err("tolerances must be finite, non-negative and not both zero".into());
        }
        Ok(TolArg { abs, rel })
    }
}

impl From<TolArg> for Tolerance {
    fn from(t: TolArg) -> Self {
        Tolerance::new(t.abs, t.rel)
    }
}

/// A list of reals: `a,b,c` or `lo:hi:n` for `n` equispaced points.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Grid(Vec::new()));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?}"));
        let v: Vec<f64> = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [lo, hi, n] = parts[..] else {
                return Err("range must be lo:hi:n".into());
            };
            let (lo, hi) = (num(lo)?, num(hi)?);
            let n: usize = n.trim().parse().map_err(|_| format!("bad count {n:?}"))?;
            match n {
                0 => Vec::new(),
                1 => vec![lo],
                _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
            }
        } else {
            s.split(',').map(num).collect::<Result<_, _>>()?
        };
        if v.iter().any(|x| !x.is_finite()) {
            return Err("grid values must be finite".into());
        }
        Ok(Grid(v))
    }
}

/// Closed interval `lo,hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Window {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let g: Grid = s.replace(':', ",").parse()?;
        match g.0[..] {
            [lo, hi] if lo <= hi => Ok(Window { lo, hi }),
            _ => Err("window must be lo,hi with lo <= hi".into()),
        }
    }
}

/// What every report records about the run that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig<A: Serialize> {
    pub command: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub tolerance: TolArg,
    pub args: A,
}

impl<A: Serialize> RunConfig<A> {
    pub fn new(command: &'static str, seed: u64, tolerance: Tolerance, args: A) -> Self {
        RunConfig {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            tolerance: TolArg {
                abs: tolerance.abs,
                rel: tolerance.rel,
            },
            args,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_and_tolerances() {
        assert_eq!("0, 0.5,1".parse::<Grid>().unwrap().0, vec![0.0, 0.5, 1.0]);
        assert_eq!("-1:1:5".parse::<Grid>().unwrap().0, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!("".parse::<Grid>().unwrap().0.is_empty());
        assert!("1:2".parse::<Grid>().is_err());
        assert_eq!("1e-9".parse::<TolArg>().unwrap(), TolArg { abs: 1e-9, rel: 1e-9 });
        assert_eq!("0,1e-8".parse::<TolArg>().unwrap(), TolArg { abs: 0.0, rel: 1e-8 });
        assert!("0".parse::<TolArg>().is_err());
        assert_eq!("16,512".parse::<Window>().unwrap(), Window { lo: 16.0, hi: 512.0 });
        assert!("5,1".parse::<Window>().is_err());
    }
}
