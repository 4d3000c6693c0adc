use std::sync::Arc;

use clap::Args;
use geofourier_core::kernels::{f_t, f_t_prime};
use geofourier_core::quadcore::Tolerance;
use geofourier_core::testfn::{build_psi, BumpPsi, DEFAULT_HALF_WIDTH};
use serde::Serialize;

use super::{Common, OutArg};
use crate::config::Grid;
use crate::error::{CliError, CliResult};
use crate::output::{csv_bytes, emit};

pub const FT_PASS: f64 = 1e-5;

pub(super) const FT_TOL: Tolerance = Tolerance::new(1e-13, 1e-11);

#[derive(Debug, Clone, Args, Serialize)]
pub struct FtCheckArgs {
    #[arg(long, default_value_t = 3)]
    pub d: u32,
    #[arg(long = "T", value_name = "T")]
    pub t_scale: f64,
    #[arg(long, allow_hyphen_values = true, default_value = "-3:5:41")]
    pub t_grid: Grid,
    /// Central-difference step.
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH)]
    pub half_width: f64,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct Row {
    t: f64,
    f: f64,
    f_prime_formula: f64,
    f_prime_fd: f64,
    abs_err: f64,
}

pub(super) fn psi(half_width: f64) -> CliResult<Arc<BumpPsi>> {
    Ok(Arc::new(build_psi(half_width, 1.0)?))
}

pub fn run(a: &FtCheckArgs) -> CliResult<String> {
    if a.t_grid.0.is_empty() {
        return Err(CliError::Usage("--t-grid is empty".into()));
    }
    if !(a.h > 0.0 && a.h.is_finite()) {
        return Err(CliError::Usage(format!("--h {} must be positive", a.h)));
    }
    let tol = a.common.tolerance_or(FT_TOL);
    let ps = psi(a.half_width)?;
    let mut rows = Vec::with_capacity(a.t_grid.0.len());
    for &t in &a.t_grid.0 {
        let f = f_t(ps.as_ref(), a.t_scale, t, a.d, tol)?;
        let formula = f_t_prime(ps.as_ref(), a.t_scale, t, a.d, tol)?.value;
        let fp = f_t(ps.as_ref(), a.t_scale, t + a.h, a.d, tol)?;
        let fm = f_t(ps.as_ref(), a.t_scale, t - a.h, a.d, tol)?;
        let fd = (fp - fm) / (2.0 * a.h);
        rows.push(Row {
            t,
            f,
            f_prime_formula: formula,
            f_prime_fd: fd,
            abs_err: (formula - fd).abs(),
        });
    }
    emit(a.out.out.as_deref(), &csv_bytes(&rows)?)?;
    let worst = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let msg = format!("ft-check d={} T={}: {} points, max abs err {worst:.2e}", a.d, a.t_scale, rows.len());
    if worst <= FT_PASS {
        Ok(msg)
    } else {
        Err(CliError::Tolerance(format!("{msg} > {FT_PASS:e}")))
    }
}
