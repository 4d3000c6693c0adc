use std::path::PathBuf;

use clap::{Args, ValueEnum};
use geofourier_core::quadcore::Tolerance;
use geofourier_core::spectra::{decay_fit, partial_sum_exponent, triple_growth_check_in, weyl_check_in, FlaggedFit};
use serde::Serialize;

use super::{Common, OutArg};
use crate::config::{Grid, RunConfig, Window};
use crate::error::{CliError, CliResult};
use crate::formats::{load_coeffs, load_spectral};
use crate::output::{emit, json_bytes};
use crate::report::GrowthFitOut;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthMode {
    /// `|a_k| ~ C k^e` over positive k (coefficient file).
    Decay,
    /// `Σ_{|k|≤T}|a_k|² ~ C T^e` (coefficient file).
    PartialSum,
    /// Counting function of `|λ̃_j|` against `x^d` (spectral file).
    Weyl,
    /// `Σ_{|λ̃_j|≤x}|c_j|²` against `x^d` (spectral file).
    Triple,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GrowthArgs {
    #[arg(long, value_enum)]
    pub mode: GrowthMode,
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Abscissa window `lo,hi`: k, T or |λ̃| depending on the mode.
    #[arg(long)]
    pub window: Option<Window>,
    /// Decay mode: magnitudes at or below this are excluded.
    #[arg(long, default_value_t = 0.0)]
    pub floor: f64,
    /// Partial-sum mode: explicit T values; 32 log-spaced points otherwise.
    #[arg(long)]
    pub t_grid: Option<Grid>,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct Report {
    config: RunConfig<GrowthArgs>,
    fit: GrowthFitOut,
    /// Only for the spectral modes.
    #[serde(skip_serializing_if = "Option::is_none")]
    flagged: Option<bool>,
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

pub fn run(a: &GrowthArgs) -> CliResult<String> {
    let w = a.window.map(|w| (w.lo, w.hi));
    let (fit, flagged) = match a.mode {
        GrowthMode::Decay => {
            let cd = load_coeffs(&a.input)?;
            let (lo, hi) = w.unwrap_or((1.0, f64::INFINITY));
            let pts: Vec<(f64, f64)> = cd
                .coeffs
                .iter()
                .filter(|&(k, _)| k > 0 && k as f64 >= lo && k as f64 <= hi)
                .map(|(k, v)| (k as f64, v.norm()))
                .collect();
            (decay_fit(&pts, a.floor)?, None)
        }
        GrowthMode::PartialSum => {
            let cd = load_coeffs(&a.input)?;
            let reach = cd.coeffs.k_max().min(-cd.coeffs.k_min()) as f64;
            let grid = match &a.t_grid {
                Some(g) => g.0.clone(),
                None => {
                    let (lo, hi) = w.unwrap_or((1.0, reach));
                    if !(lo > 0.0 && hi > lo) {
                        return Err(CliError::Usage(format!("window [{lo}, {hi}] is not a positive range (coefficient reach ±{reach})")));
                    }
                    log_grid(lo, hi.min(reach), 32)
                }
            };
            (partial_sum_exponent(&cd.coeffs, &grid)?, None)
        }
        GrowthMode::Weyl | GrowthMode::Triple => {
            let data = load_spectral(&a.input)?;
            let win = w.unwrap_or((0.0, f64::INFINITY));
            let FlaggedFit { fit, flagged } = if a.mode == GrowthMode::Weyl {
                weyl_check_in(&data, data.d(), win)?
            } else {
                triple_growth_check_in(&data, data.d(), win)?
            };
            (fit, Some(flagged))
        }
    };
    let report = Report {
        config: RunConfig::new("growth", a.common.seed, Tolerance::DEFAULT, a.clone()),
        fit: (&fit).into(),
        flagged,
    };
    emit(a.out.out.as_deref(), &json_bytes(&report))?;
    let mut msg = format!(
        "growth {}: exponent {:.4} (r² {:.4}, {} points over [{}, {}])",
        a.mode.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        fit.exponent, fit.r_squared, fit.points_used, fit.window.0, fit.window.1
    );
    if flagged == Some(true) {
        msg.push_str(" FLAGGED");
    }
    Ok(msg)
}
