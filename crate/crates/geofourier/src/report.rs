//! Serialisable report types. Complex numbers are `[re, im]`.

use geofourier_core::spectra::GrowthFit;
use geofourier_core::summation::{LhsTerm, RhsTerm, SummationReport};
use geofourier_core::Complex64;
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct C(pub f64, pub f64);

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        C(z.re, z.im)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LhsTermOut {
    pub k: i64,
    pub a: C,
    pub weight: C,
    pub term: C,
}

impl From<&LhsTerm> for LhsTermOut {
    fn from(t: &LhsTerm) -> Self {
        LhsTermOut {
            k: t.k,
            a: t.a.into(),
            weight: t.weight.into(),
            term: t.term.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RhsTermOut {
    pub lambda_j_tilde: C,
    pub c: C,
    pub a0: C,
    pub beta: C,
    pub inner: C,
    pub term: C,
}

impl From<&RhsTerm> for RhsTermOut {
    fn from(t: &RhsTerm) -> Self {
        RhsTermOut {
            lambda_j_tilde: t.lambda_j_tilde.into(),
            c: t.c.into(),
            a0: t.a0.into(),
            beta: t.beta.into(),
            inner: t.inner.into(),
            term: t.term.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncationOut {
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityOut {
    pub scale: C,
    pub lhs_rel_err: f64,
    pub rhs_rel_err: f64,
}

/// JSON form of a [`SummationReport`].
#[derive(Debug, Clone, Serialize)]
pub struct SummationReportOut<A: Serialize> {
    pub config: RunConfig<A>,
    pub lhs: C,
    pub rhs: C,
    pub residual_abs: f64,
    pub residual_rel: f64,
    pub truncation_bounds: TruncationOut,
    pub homogeneity: HomogeneityOut,
    pub lhs_terms: Vec<LhsTermOut>,
    pub rhs_terms: Vec<RhsTermOut>,
}

impl<A: Serialize> SummationReportOut<A> {
    pub fn new(config: RunConfig<A>, r: &SummationReport) -> Self {
        SummationReportOut {
            config,
            lhs: r.lhs.into(),
            rhs: r.rhs.into(),
            residual_abs: r.residual_abs,
            residual_rel: r.residual_rel,
            truncation_bounds: TruncationOut {
                lhs: r.truncation_bounds.lhs,
                rhs: r.truncation_bounds.rhs,
            },
            homogeneity: HomogeneityOut {
                scale: r.homogeneity.scale.into(),
                lhs_rel_err: r.homogeneity.lhs_rel_err,
                rhs_rel_err: r.homogeneity.rhs_rel_err,
            },
            lhs_terms: r.lhs_terms.iter().map(Into::into).collect(),
            rhs_terms: r.rhs_terms.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthFitOut {
    pub exponent: f64,
    pub constant: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub points_used: usize,
    pub excluded_zero: usize,
    pub excluded_floor: usize,
}

impl From<&GrowthFit> for GrowthFitOut {
    fn from(f: &GrowthFit) -> Self {
        GrowthFitOut {
            exponent: f.exponent,
            constant: f.constant,
            r_squared: f.r_squared,
            window: f.window,
            points_used: f.points_used,
            excluded_zero: f.excluded_zero,
            excluded_floor: f.excluded_floor,
        }
    }
}
