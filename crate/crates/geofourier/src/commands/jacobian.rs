use clap::Args;
use geofourier_core::kernels::{jacobian_check_d2, jacobian_check_d3};
use geofourier_core::quadcore::Tolerance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Common, OutArg};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{emit, json_bytes};

pub const JACOBIAN_PASS: f64 = 1e-6;

#[derive(Debug, Clone, Args, Serialize)]
pub struct JacobianCheckArgs {
    /// 2 for the planar map, any d ≥ 3 for the polar-reduced one.
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 100)]
    pub n_points: usize,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct Point {
    x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    t: f64,
    analytic: f64,
    numeric: f64,
    rel_err: f64,
}

#[derive(Serialize)]
struct Report {
    config: RunConfig<JacobianCheckArgs>,
    threshold: f64,
    max_rel_err: f64,
    pass: bool,
    points: Vec<Point>,
}

pub fn run(a: &JacobianCheckArgs) -> CliResult<String> {
    if a.n_points == 0 {
        return Err(CliError::Usage("--n-points must be positive".into()));
    }
    if a.d < 2 {
        return Err(CliError::Usage(format!("--d {} must be at least 2", a.d)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let mut points = Vec::with_capacity(a.n_points);
    while points.len() < a.n_points {
        let x: f64 = rng.gen_range(-3.0..3.0);
        let t: f64 = rng.gen_range(-2.0..2.0);
        if a.d == 2 {
            // Keep clear of the singular set, where the check itself is ill-posed.
            if x.abs() < 1e-2 || (x + (-t).exp()).abs() < 1e-2 {
                continue;
            }
            let j = jacobian_check_d2(x, t)?;
            points.push(Point {
                x,
                r: None,
                t,
                analytic: j.analytic,
                numeric: j.numeric,
                rel_err: j.rel_err(),
            });
        } else {
            let r: f64 = rng.gen_range(0.05..3.0);
            let j = jacobian_check_d3(x, r, t)?;
            points.push(Point {
                x,
                r: Some(r),
                t,
                analytic: j.analytic,
                numeric: j.numeric,
                rel_err: j.rel_err(),
            });
        }
    }
    let worst = points.iter().map(|p| p.rel_err).fold(0.0, f64::max);
    let pass = worst <= JACOBIAN_PASS;
    let report = Report {
        config: RunConfig::new("jacobian-check", a.common.seed, Tolerance::DEFAULT, a.clone()),
        threshold: JACOBIAN_PASS,
        max_rel_err: worst,
        pass,
        points,
    };
    emit(a.out.out.as_deref(), &json_bytes(&report))?;
    let msg = format!("jacobian-check d={}: {} points, max rel err {worst:.2e}", a.d, a.n_points);
    if pass {
        Ok(msg)
    } else {
        Err(CliError::Tolerance(format!("{msg} > {JACOBIAN_PASS:e}")))
    }
}
