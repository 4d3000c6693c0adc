use clap::Args;
use geofourier_core::kernels::{r_phi_closed_d2, r_phi_direct, r_phi_kernel, r_phi_scale};
use geofourier_core::quadcore::Tolerance;
use geofourier_core::testfn::{two_route_battery, BATTERY_NAMES};
use geofourier_core::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{Common, OutArg};
use crate::config::{Grid, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{emit, json_bytes};
use crate::report::C;

/// Largest accepted `|direct - other| / scale`.
pub const KERNEL_PASS: f64 = 1e-6;

#[derive(Debug, Clone, Args, Serialize)]
pub struct KernelCheckArgs {
    #[arg(long)]
    pub d: u32,
    /// Real λ̃ values.
    #[arg(long, allow_hyphen_values = true, default_value = "0,1,4,16")]
    pub lambda_grid: Grid,
    /// One of phi-t-1, phi-t-4, separable, non-separable, swapped, or all.
    #[arg(long, default_value = "all")]
    pub fixture: String,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct Case {
    fixture: &'static str,
    lambda_tilde: f64,
    route: &'static str,
    direct: C,
    other: C,
    /// L1 norm of the direct integrand, the natural size of either value.
    scale: f64,
    err_scaled: f64,
    rel_err: f64,
}

#[derive(Serialize)]
struct Report {
    config: RunConfig<KernelCheckArgs>,
    threshold: f64,
    max_err_scaled: f64,
    pass: bool,
    cases: Vec<Case>,
}

pub fn run(a: &KernelCheckArgs) -> CliResult<String> {
    if a.d < 2 {
        return Err(CliError::Usage(format!("--d {} must be at least 2", a.d)));
    }
    if a.lambda_grid.0.is_empty() {
        return Err(CliError::Usage("--lambda-grid is empty".into()));
    }
    if a.fixture != "all" && !BATTERY_NAMES.contains(&a.fixture.as_str()) {
        return Err(CliError::Usage(format!("unknown fixture {:?}; expected one of {BATTERY_NAMES:?} or all", a.fixture)));
    }
    let tol = a.common.tolerance_or(Tolerance::new(1e-8, 1e-8));
    let battery: Vec<_> = two_route_battery()?.into_iter().filter(|(n, _)| a.fixture == "all" || *n == a.fixture).collect();
    let jobs: Vec<(usize, f64)> = (0..battery.len()).flat_map(|i| a.lambda_grid.0.iter().map(move |&l| (i, l))).collect();
    let route = if a.d == 2 { "c1+c2+c3" } else { "kernel" };
    let cases: Vec<Case> = jobs
        .par_iter()
        .map(|&(i, l)| {
            let (name, phi) = &battery[i];
            let lam = Complex64::new(l, 0.0);
            let scale = r_phi_scale(phi.as_ref(), lam, a.d)?;
            let t = tol.scaled_abs(scale);
            let direct = r_phi_direct(phi.as_ref(), lam, a.d, t)?.value;
            let other = if a.d == 2 {
                r_phi_closed_d2(phi.as_ref(), lam, t)?.total()
            } else {
                r_phi_kernel(phi.as_ref(), lam, a.d, t)?.value
            };
            let diff = (direct - other).norm();
            Ok(Case {
                fixture: name,
                lambda_tilde: l,
                route,
                direct: direct.into(),
                other: other.into(),
                scale,
                err_scaled: diff / scale,
                rel_err: diff / direct.norm().max(other.norm()).max(1e-300),
            })
        })
        .collect::<Result<_, geofourier_core::Error>>()?;
    let worst = cases.iter().map(|c| c.err_scaled).fold(0.0, f64::max);
    let pass = worst <= KERNEL_PASS;
    let report = Report {
        config: RunConfig::new("kernel-check", a.common.seed, tol, a.clone()),
        threshold: KERNEL_PASS,
        max_err_scaled: worst,
        pass,
        cases,
    };
    emit(a.out.out.as_deref(), &json_bytes(&report))?;
    let msg = format!("kernel-check d={}: {} cases, max |diff|/scale {worst:.2e}", a.d, report.cases.len());
    if pass {
        Ok(msg)
    } else {
        Err(CliError::Tolerance(format!("{msg} > {KERNEL_PASS:e}")))
    }
}
