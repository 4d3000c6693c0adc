//! Subcommands. Each writes its machine-readable output (JSON or CSV),
//! then returns a one-line human summary for standard error, or an error
//! carrying the exit code.

mod beta;
mod exports;
mod ft;
mod growth;
mod jacobian;
mod kernel;
mod sumcheck;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use geofourier_core::quadcore::Tolerance;
use serde::Serialize;

pub use beta::{BetaCheckArgs, BETA_PASS};
pub use exports::{ExportFtArgs, ExportKernelArgs, ExportPsiArgs};
pub use ft::{FtCheckArgs, FT_PASS};
pub use growth::{GrowthArgs, GrowthMode};
pub use jacobian::{JacobianCheckArgs, JACOBIAN_PASS};
pub use kernel::{KernelCheckArgs, KERNEL_PASS};
pub use sumcheck::SumcheckArgs;

use crate::config::{TolArg, TOL_ENV};
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "geofourier", version, about = "Cross-checked numerics for geodesic Fourier coefficient summation formulae")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// β(t): closed Γ form against quadrature, as CSV.
    BetaCheck(BetaCheckArgs),
    /// R_φ by two independent routes on the fixture battery, as JSON.
    KernelCheck(KernelCheckArgs),
    /// Jacobian identities against finite differences at random points.
    JacobianCheck(JacobianCheckArgs),
    /// Both sides of the summation formula for supplied data.
    Sumcheck(SumcheckArgs),
    /// Growth and decay fits of coefficient or spectral data.
    Growth(GrowthArgs),
    /// f_T' from its formula against finite differences, as CSV.
    FtCheck(FtCheckArgs),
    /// Samples of ψ and ψ' as CSV.
    ExportPsi(ExportPsiArgs),
    /// A slice of K_z(a, b) on a grid as CSV.
    ExportKernel(ExportKernelArgs),
    /// f_T and f_T' on a t-grid as CSV.
    ExportFt(ExportFtArgs),
}

/// Options every command accepts.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Quadrature tolerance as REL or ABS,REL.
    #[arg(long, env = TOL_ENV, global = true)]
    pub tol: Option<TolArg>,
    /// Seed for any randomness; recorded in every report.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

impl Common {
    pub fn tolerance_or(&self, default: Tolerance) -> Tolerance {
        self.tol.map(Into::into).unwrap_or(default)
    }
}

/// Output path, standard output when absent.
#[derive(Debug, Clone, Args, Serialize)]
pub struct OutArg {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cmd: &Command) -> CliResult<String> {
    match cmd {
        Command::BetaCheck(a) => beta::run(a),
        Command::KernelCheck(a) => kernel::run(a),
        Command::JacobianCheck(a) => jacobian::run(a),
        Command::Sumcheck(a) => sumcheck::run(a),
        Command::Growth(a) => growth::run(a),
        Command::FtCheck(a) => ft::run(a),
        Command::ExportPsi(a) => exports::run_psi(a),
        Command::ExportKernel(a) => exports::run_kernel(a),
        Command::ExportFt(a) => exports::run_ft(a),
    }
}
