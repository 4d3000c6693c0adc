//! File formats, reports and the command-line front end for
//! [`geofourier_core`].

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod output;
pub mod report;

pub use geofourier_core as core;
