use alloc::string::String;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Argument of the gamma function sits on (or within 1e-12 of) a pole.
    #[error("gamma function pole near z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// The adaptive integrator ran out of subdivisions before meeting the
    /// requested tolerance.
    #[error("quadrature did not converge: estimate {value_re}+{value_im}i, error {err_est:e} > tolerance {tolerance:e}")]
    NonConvergence {
        value_re: f64,
        value_im: f64,
        err_est: f64,
        tolerance: f64,
    },

    /// An integrand or summand produced NaN or an infinity.
    #[error("non-finite value encountered at {at}")]
    NonFinite { at: f64 },

    #[error("invalid parameter: {0}")]
    BadParam(String),

    /// The requested sampling grid would undersample the result.
    #[error("grid resolution: {0}")]
    GridResolution(String),

    /// `ψ` could not be certified (transform not positive on `[-1, 1]`).
    #[error("test function construction failed: {0}")]
    ConstructionFailure(String),

    #[error("cannot localise the support of the integrand: {0}")]
    RegionResolution(String),

    /// A Jacobian was requested too close to the singular set of the map.
    #[error("point too close to the singular set: {0}")]
    NearSingular(String),

    /// `K_z(a, b)` diverges on the diagonal `a = b`.
    #[error("kernel arguments coincide: |a - b| = {0:e}")]
    CoincidentArguments(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    /// A growth/decay fit had fewer than 8 usable points.
    #[error("degenerate fit window: {0}")]
    DegenerateWindow(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
