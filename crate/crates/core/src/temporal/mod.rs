//! Dates, day counts, business-day calendars, tenors and schedules.
//!
//! Every year fraction in the crate goes through [`DayCount`]; every
//! maturity date goes through a [`Calendar`] and an [`Adjustment`] rule.

mod calendar;
mod date;
mod daycount;
mod schedule;
mod tenor;

pub use calendar::{easter_sunday, Adjustment, Calendar};
pub use date::CivilDate;
pub use daycount::{year_fraction, DayCount};
pub use schedule::{build_schedule, MarketConventions, Schedule};
pub use tenor::{parse_fra_key, Tenor, TenorUnit};

/// Free-function form of [`Calendar::add_tenor`].
pub fn add_tenor(d: CivilDate, tenor: Tenor, cal: &Calendar, rule: Adjustment) -> CivilDate {
    cal.add_tenor(d, tenor, rule)
}
