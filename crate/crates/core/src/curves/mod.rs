//! Discount and forwarding term structures and their bootstrap.

mod bootstrap;
mod curve;
mod dump;
mod set;

pub use bootstrap::{
    bootstrap_discount, bootstrap_forward, repricing_error, resolve_instruments, BootstrapRecipe,
    CalibrationInstrument,
};
pub(crate) use bootstrap::{fixed_leg_schedule, floating_leg_schedule};
pub use curve::{forward_from_factors, Curve, CurveRole};
pub use dump::{format_significant, read_curve, write_curve};
pub use set::CurveSet;

/// `P(t, T)` on `curve`.
pub fn discount_factor(curve: &Curve, date: crate::temporal::CivilDate) -> crate::Result<f64> {
    curve.discount_factor(date)
}

/// Simple forward rate over `[t1, t2]` on `curve`.
pub fn simple_forward(
    curve: &Curve,
    t1: crate::temporal::CivilDate,
    t2: crate::temporal::CivilDate,
    dc: crate::temporal::DayCount,
) -> crate::Result<f64> {
    curve.simple_forward(t1, t2, dc)
}
