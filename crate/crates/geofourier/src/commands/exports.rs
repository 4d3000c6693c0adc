use core::f64::consts::PI;

use clap::Args;
use geofourier_core::kernels::{f_t, f_t_prime, kernel_k, COINCIDENCE_GAP};
use geofourier_core::testfn::{Profile1D, DEFAULT_HALF_WIDTH};
use geofourier_core::Complex64;
use serde::Serialize;

use super::ft::{psi, FT_TOL};
use super::{Common, OutArg};
use crate::config::Grid;
use crate::error::{CliError, CliResult};
use crate::output::{csv_bytes, emit};

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExportPsiArgs {
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH)]
    pub half_width: f64,
    /// Samples across the support, endpoints included.
    #[arg(long, default_value_t = 401)]
    pub n: usize,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExportKernelArgs {
    #[arg(long)]
    pub d: u32,
    /// Real λ̃; the kernel is evaluated at z = 2πiλ̃.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub a_grid: Grid,
    #[arg(long, allow_hyphen_values = true)]
    pub b_grid: Grid,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExportFtArgs {
    #[arg(long, default_value_t = 3)]
    pub d: u32,
    #[arg(long = "T", value_name = "T")]
    pub t_scale: f64,
    #[arg(long, allow_hyphen_values = true, default_value = "-3:5:81")]
    pub t_grid: Grid,
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH)]
    pub half_width: f64,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct PsiRow {
    x: f64,
    psi: f64,
    psi_prime: f64,
}

#[derive(Serialize)]
struct KernelRow {
    a: f64,
    b: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct FtRow {
    t: f64,
    f: f64,
    f_prime: f64,
}

pub fn run_psi(a: &ExportPsiArgs) -> CliResult<String> {
    if a.n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let ps = psi(a.half_width)?;
    let (lo, hi) = ps.support();
    let rows: Vec<PsiRow> = (0..a.n)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (a.n - 1) as f64;
            PsiRow {
                x,
                psi: ps.value(x),
                psi_prime: ps.derivative(x),
            }
        })
        .collect();
    emit(a.out.out.as_deref(), &csv_bytes(&rows)?)?;
    Ok(format!("export-psi: {} samples on [{lo}, {hi}], mass {:.12}", a.n, ps.mass()))
}

pub fn run_kernel(a: &ExportKernelArgs) -> CliResult<String> {
    if a.d < 3 {
        return Err(CliError::Usage(format!("--d {} must be at least 3", a.d)));
    }
    let tol = a.common.tolerance_or(FT_TOL);
    let z = Complex64::new(0.0, 2.0 * PI * a.lambda);
    let mut rows = Vec::new();
    let mut skipped = 0;
    for &x in &a.a_grid.0 {
        for &y in &a.b_grid.0 {
            if (x - y).abs() <= COINCIDENCE_GAP {
                skipped += 1;
                continue;
            }
            let k = kernel_k(z, x, y, a.d, tol)?;
            rows.push(KernelRow { a: x, b: y, re: k.re, im: k.im });
        }
    }
    emit(a.out.out.as_deref(), &csv_bytes(&rows)?)?;
    Ok(format!("export-kernel d={} lambda={}: {} points, {skipped} coincident skipped", a.d, a.lambda, rows.len()))
}

pub fn run_ft(a: &ExportFtArgs) -> CliResult<String> {
    let tol = a.common.tolerance_or(FT_TOL);
    let ps = psi(a.half_width)?;
    let rows = a
        .t_grid
        .0
        .iter()
        .map(|&t| {
            Ok(FtRow {
                t,
                f: f_t(ps.as_ref(), a.t_scale, t, a.d, tol)?,
                f_prime: f_t_prime(ps.as_ref(), a.t_scale, t, a.d, tol)?.value,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    emit(a.out.out.as_deref(), &csv_bytes(&rows)?)?;
    Ok(format!("export-ft d={} T={}: {} points", a.d, a.t_scale, rows.len()))
}
