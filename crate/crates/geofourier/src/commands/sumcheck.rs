use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use geofourier_core::kernels::r_phi_scale;
use geofourier_core::quadcore::Tolerance;
use geofourier_core::summation::{assemble_rhs, build_report, lhs_sum, rhs_term, rhs_truncation_bound, RhsSum};
use geofourier_core::testfn::{build_psi, PhiT, DEFAULT_HALF_WIDTH};
use geofourier_core::transforms::ModelParams;
use geofourier_core::Error as CoreError;
use rayon::prelude::*;
use serde::Serialize;

use super::{Common, OutArg};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::formats::{load_coeffs, load_spectral};
use crate::output::{emit, json_bytes};
use crate::report::SummationReportOut;

#[derive(Debug, Clone, Args, Serialize)]
pub struct SumcheckArgs {
    /// Coefficient file (JSON).
    #[arg(long)]
    pub coeffs: PathBuf,
    /// Spectral data file (JSON).
    #[arg(long)]
    pub spectra: PathBuf,
    /// Concentration parameter of φ_T.
    #[arg(long = "T", value_name = "T")]
    pub t_scale: f64,
    /// Dimension; defaults to the coefficient file's, then the spectral file's.
    #[arg(long)]
    pub d: Option<u32>,
    /// Half-width of the base bump ψ is built from.
    #[arg(long, default_value_t = DEFAULT_HALF_WIDTH)]
    pub half_width: f64,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

pub fn run(a: &SumcheckArgs) -> CliResult<String> {
    let cd = load_coeffs(&a.coeffs)?;
    let data = load_spectral(&a.spectra)?;
    let d = a.d.or(cd.d).unwrap_or(data.d());
    if let Some(fd) = cd.d.filter(|&fd| fd != d) {
        return Err(CoreError::DimensionMismatch { left: d, right: fd }.into());
    }
    if data.d() != d {
        return Err(CoreError::DimensionMismatch { left: d, right: data.d() }.into());
    }
    let p = ModelParams::new(d, cd.lambda_tilde, cd.lambda_gamma_tilde)?;
    let tol = a.common.tolerance_or(Tolerance::new(1e-10, 1e-10));
    let phi = PhiT::new(a.t_scale, Arc::new(build_psi(a.half_width, 1.0)?))?;

    let lhs = lhs_sum(&cd.coeffs, &phi, &p)?;
    // Terms in parallel, reduced in dataset order.
    let terms = data
        .entries()
        .par_iter()
        .map(|e| {
            let scale = r_phi_scale(&phi, e.lambda_j_tilde, d)?;
            rhs_term(e, &phi, d, tol.scaled_abs(scale))
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    let rhs = RhsSum {
        value: assemble_rhs(&terms)?,
        terms,
        truncation_bound: rhs_truncation_bound(&data, &phi, tol)?,
    };
    let report = build_report(&cd.coeffs, &phi, &p, lhs, rhs)?;
    let out = SummationReportOut::new(RunConfig::new("sumcheck", a.common.seed, tol, a.clone()), &report);
    emit(a.out.out.as_deref(), &json_bytes(&out))?;
    Ok(format!(
        "sumcheck d={d} T={}: {} lhs terms, {} rhs terms, lhs {:.6e}{:+.6e}i, rhs {:.6e}{:+.6e}i, residual {:.3e} (rel {:.3e})",
        a.t_scale,
        report.lhs_terms.len(),
        report.rhs_terms.len(),
        report.lhs.re,
        report.lhs.im,
        report.rhs.re,
        report.rhs.im,
        report.residual_abs,
        report.residual_rel
    ))
}
