//! The fixed set of test functions used by the two-route `R_φ` checks.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{base_bump, build_psi, FnPhi, Phi2D, PhiT, SeparablePhi, SupportBounds, Swapped};
use crate::Result;

pub type BatteryEntry = (&'static str, Box<dyn Phi2D + Send + Sync>);

/// Names of [`two_route_battery`] entries, in order.
pub const BATTERY_NAMES: [&str; 5] = ["phi-t-1", "phi-t-4", "separable", "non-separable", "swapped"];

/// `φ_T` for `T = 1, 4`, a separable product of shifted bumps, a
/// non-separable product with a polynomial factor, and the argument swap
/// of an asymmetric function.
pub fn two_route_battery() -> Result<Vec<BatteryEntry>> {
    let ps = Arc::new(build_psi(0.25, 1.0)?);
    let u = base_bump(0.3)?;
    let w = base_bump(0.4)?;
    let w2 = w.clone();
    let v = base_bump(0.35)?;
    Ok(vec![
        (BATTERY_NAMES[0], Box::new(PhiT::new(1.0, ps.clone())?)),
        (BATTERY_NAMES[1], Box::new(PhiT::new(4.0, ps)?)),
        (
            BATTERY_NAMES[2],
            Box::new(SeparablePhi {
                fa: u.shifted(0.4),
                fb: u.shifted(-0.1),
            }),
        ),
        (
            BATTERY_NAMES[3],
            Box::new(FnPhi::new(
                move |a: f64, b: f64| w.eval(a - 0.1) * w.eval(b + 0.2) * (1.0 + 0.5 * a * b),
                SupportBounds::from_box((-0.3, 0.5), (-0.6, 0.2)),
            )),
        ),
        (
            BATTERY_NAMES[4],
            Box::new(Swapped(FnPhi::new(
                move |a: f64, b: f64| w2.eval(a - 0.3) * v.eval(b) * (1.2 + libm::sin(a - b)),
                SupportBounds::from_box((-0.1, 0.7), (-0.35, 0.35)),
            ))),
        ),
    ])
}
