//! JSON schemas for spectral datasets and coefficient sequences.
//!
//! Spectral dataset:
//! `{"d": int, "provenance": string, "entries": [{"lambda_j_tilde": [re, im], "c": [re, im], "a0": [re, im]}, …]}`
//!
//! Coefficients:
//! `{"lambda_tilde": [re, im], "lambda_gamma_tilde": real, "a": [{"k": int, "v": [re, im]}, …], "d": int}`
//! with `"d"` optional.
//!
//! Canonical form: keys in the order above, two-space indentation, floats
//! in shortest round-trip decimal, trailing newline. Numbers may also be
//! given as strings (`"NaN"`, `"inf"`, `"1e-3"`) so that non-finite input
//! reaches validation and is rejected there with a named field.

use std::fmt;
use std::path::Path;

use geofourier_core::spectra::{validate_coefficients, SpectralDataset, SpectralEntry};
use geofourier_core::transforms::CoefficientSequence;
use geofourier_core::{Complex64, Error as CoreError};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A float accepted either as a JSON number or as a string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Real(pub f64);

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Real;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a numeric string")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Real, E> {
                Ok(Real(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Real, E> {
                Ok(Real(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Real, E> {
                Ok(Real(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Real, E> {
                v.trim().parse::<f64>().map(Real).map_err(|_| E::custom(format!("not a number: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pair(pub Real, pub Real);

impl From<Pair> for Complex64 {
    fn from(p: Pair) -> Self {
        Complex64::new(p.0 .0, p.1 .0)
    }
}

impl From<Complex64> for Pair {
    fn from(z: Complex64) -> Self {
        Pair(Real(z.re), Real(z.im))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    lambda_j_tilde: Pair,
    c: Pair,
    a0: Pair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectralFile {
    d: u32,
    #[serde(default)]
    provenance: String,
    entries: Vec<EntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffEntryFile {
    k: i64,
    v: Pair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffFile {
    lambda_tilde: Pair,
    lambda_gamma_tilde: Real,
    a: Vec<CoeffEntryFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
}

/// Contents of a coefficient file.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientData {
    pub coeffs: CoefficientSequence,
    pub lambda_tilde: Complex64,
    pub lambda_gamma_tilde: f64,
    pub d: Option<u32>,
}

fn parse_err(path: &str, e: serde_json::Error) -> CliError {
    CliError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        // serde_json appends its own position, which is already in the fields.
        msg: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    }
}

fn invalid(path: &str, msg: String) -> CliError {
    CliError::Validation {
        path: path.to_string(),
        source: CoreError::Validation(msg),
    }
}

fn finite(path: &str, field: &str, z: Complex64) -> CliResult<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(invalid(path, format!("{field} is not finite")))
    }
}

/// Parses and validates a spectral dataset; `origin` names the source in
/// error messages.
pub fn parse_spectral(text: &str, origin: &str) -> CliResult<SpectralDataset> {
    let f: SpectralFile = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    let mut entries = Vec::with_capacity(f.entries.len());
    for (i, e) in f.entries.iter().enumerate() {
        entries.push(SpectralEntry::new(
            finite(origin, &format!("entries[{i}].lambda_j_tilde"), e.lambda_j_tilde.into())?,
            finite(origin, &format!("entries[{i}].c"), e.c.into())?,
            finite(origin, &format!("entries[{i}].a0"), e.a0.into())?,
        ));
    }
    SpectralDataset::new(f.d, entries, &f.provenance).map_err(|source| CliError::Validation {
        path: origin.to_string(),
        source,
    })
}

pub fn parse_coeffs(text: &str, origin: &str) -> CliResult<CoefficientData> {
    let f: CoeffFile = serde_json::from_str(text).map_err(|e| parse_err(origin, e))?;
    let lambda_tilde = finite(origin, "lambda_tilde", f.lambda_tilde.into())?;
    let lg = f.lambda_gamma_tilde.0;
    if !(lg.is_finite() && lg > 0.0) {
        return Err(invalid(origin, format!("lambda_gamma_tilde = {lg} must be positive and finite")));
    }
    let mut pairs = Vec::with_capacity(f.a.len());
    for (i, e) in f.a.iter().enumerate() {
        pairs.push((e.k, finite(origin, &format!("a[{i}].v"), e.v.into())?));
    }
    let wrap = |source| CliError::Validation {
        path: origin.to_string(),
        source,
    };
    let coeffs = CoefficientSequence::from_pairs(pairs).map_err(wrap)?;
    validate_coefficients(&coeffs).map_err(wrap)?;
    Ok(CoefficientData {
        coeffs,
        lambda_tilde,
        lambda_gamma_tilde: lg,
        d: f.d,
    })
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_spectral(path: &Path) -> CliResult<SpectralDataset> {
    parse_spectral(&read(path)?, &path.display().to_string())
}

pub fn load_coeffs(path: &Path) -> CliResult<CoefficientData> {
    parse_coeffs(&read(path)?, &path.display().to_string())
}

fn canonical<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("file types serialise infallibly");
    s.push('\n');
    s
}

/// Canonical text of a dataset; entries come out in the dataset's order.
pub fn spectral_to_string(data: &SpectralDataset) -> String {
    canonical(&SpectralFile {
        d: data.d(),
        provenance: data.provenance().to_string(),
        entries: data
            .entries()
            .iter()
            .map(|e| EntryFile {
                lambda_j_tilde: e.lambda_j_tilde.into(),
                c: e.c.into(),
                a0: e.a0.into(),
            })
            .collect(),
    })
}

/// Canonical text of a coefficient file; every index of the stored range
/// is written, zeros included.
pub fn coeffs_to_string(data: &CoefficientData) -> String {
    canonical(&CoeffFile {
        lambda_tilde: data.lambda_tilde.into(),
        lambda_gamma_tilde: Real(data.lambda_gamma_tilde),
        a: data.coeffs.iter().map(|(k, v)| CoeffEntryFile { k, v: v.into() }).collect(),
        d: data.d,
    })
}

pub fn save_spectral(path: &Path, data: &SpectralDataset) -> CliResult<()> {
    crate::output::atomic_write(path, spectral_to_string(data).as_bytes())
}

pub fn save_coeffs(path: &Path, data: &CoefficientData) -> CliResult<()> {
    crate::output::atomic_write(path, coeffs_to_string(data).as_bytes())
}
