use std::fmt;
use std::str::FromStr;

use super::CivilDate;
use crate::error::{Error, Result};

/// Day-count convention used to turn a pair of dates into a year fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DayCount {
    #[default]
    Act360,
    Act365Fixed,
    /// 30E/360 (Eurobond basis).
    Thirty360E,
}

impl DayCount {
    /// Signed year fraction; negative when `d2 < d1`. Use [`year_fraction`]
    /// when the ordering must be enforced.
    pub fn fraction(self, d1: CivilDate, d2: CivilDate) -> f64 {
        match self {
            DayCount::Act360 => d1.days_until(d2) as f64 / 360.0,
            DayCount::Act365Fixed => d1.days_until(d2) as f64 / 365.0,
            DayCount::Thirty360E => {
                let day1 = d1.day().min(30) as i64;
                let day2 = d2.day().min(30) as i64;
                let days = 360 * (d2.year() - d1.year()) as i64
                    + 30 * (d2.month() as i64 - d1.month() as i64)
                    + (day2 - day1);
                days as f64 / 360.0
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DayCount::Act360 => "ACT/360",
            DayCount::Act365Fixed => "ACT/365F",
            DayCount::Thirty360E => "30E/360",
        }
    }
}

/// Year fraction between `d1` and `d2` under `dc`. Errors when `d1 > d2`.
pub fn year_fraction(d1: CivilDate, d2: CivilDate, dc: DayCount) -> Result<f64> {
    if d1 > d2 {
        return Err(Error::Ordering(format!("year fraction from {d1} back to {d2}")));
    }
    Ok(dc.fraction(d1, d2))
}

impl fmt::Display for DayCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DayCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ACT/360" | "ACT360" | "A360" => Ok(DayCount::Act360),
            "ACT/365" | "ACT/365F" | "ACT/365-FIXED" | "ACT365F" | "A365F" => {
                Ok(DayCount::Act365Fixed)
            }
            "30E/360" | "30E360" => Ok(DayCount::Thirty360E),
            other => Err(Error::Configuration(format!("unknown day count {other}"))),
        }
    }
}
