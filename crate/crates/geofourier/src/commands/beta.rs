use clap::Args;
use geofourier_core::kernels::{beta_fn, beta_fn_quadrature};
use geofourier_core::quadcore::Tolerance;
use geofourier_core::Complex64;
use serde::Serialize;

use super::{Common, OutArg};
use crate::config::Grid;
use crate::error::{CliError, CliResult};
use crate::output::{csv_bytes, emit};

/// Largest relative error accepted between the two routes.
pub const BETA_PASS: f64 = 1e-10;

#[derive(Debug, Clone, Args, Serialize)]
pub struct BetaCheckArgs {
    #[arg(long)]
    pub d: u32,
    /// Real t values: `a,b,c` or `lo:hi:n`.
    #[arg(long, allow_hyphen_values = true)]
    pub t_grid: Grid,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct Row {
    t: f64,
    closed_re: f64,
    closed_im: f64,
    quad_re: f64,
    quad_im: f64,
    rel_err: f64,
}

pub fn run(a: &BetaCheckArgs) -> CliResult<String> {
    if a.t_grid.0.is_empty() {
        return Err(CliError::Usage("--t-grid is empty".into()));
    }
    let tol = a.common.tolerance_or(Tolerance::new(1e-15, 1e-13));
    let mut rows = Vec::with_capacity(a.t_grid.0.len());
    for &t in &a.t_grid.0 {
        let z = Complex64::new(t, 0.0);
        let closed = beta_fn(z, a.d)?;
        let quad = beta_fn_quadrature(z, a.d, tol)?;
        rows.push(Row {
            t,
            closed_re: closed.re,
            closed_im: closed.im,
            quad_re: quad.re,
            quad_im: quad.im,
            rel_err: (closed - quad).norm() / closed.norm(),
        });
    }
    emit(a.out.out.as_deref(), &csv_bytes(&rows)?)?;
    let worst = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    let msg = format!("beta-check d={}: {} points, max rel err {worst:.2e}", a.d, rows.len());
    if worst <= BETA_PASS {
        Ok(msg)
    } else {
        Err(CliError::Tolerance(format!("{msg} > {BETA_PASS:e}")))
    }
}
